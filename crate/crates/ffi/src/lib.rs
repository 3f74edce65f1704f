//! C ABI over `qsignals`.
//!
//! Objects cross the boundary as opaque heap handles created by `qs_*_new`
//! style constructors and released with the matching `qs_*_free`. Every
//! fallible call returns a [`QsStatus`]; on failure a description is
//! available from [`qs_last_error_message`] on the same thread. Complex data
//! is exchanged as interleaved `re, im` doubles in row-major order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qsignals::measurement::DEFAULT_CLUSTER_TOL;
use qsignals::scenario::{format_report, parse_scenario, run_pipeline, ReportFormat, ScenarioError};
use qsignals::{
    apply_channel, apply_global_unitary, channel_from_kraus, compose, is_product_state,
    is_unitary_channel, outcome_probabilities, partial_trace, projectors_from_observable,
    tensor_state, unitary_from_hamiltonian, Complex, ComplexMatrix, CompositeDensity,
    DensityMatrix, Error, Hamiltonian, KrausChannel, Observable, PureState, Subsystem,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    InvalidDensity = 5,
    ClosureViolated = 6,
    NotUnitary = 7,
    ZeroProbability = 8,
    Scenario = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsSubsystem {
    A = 0,
    B = 1,
}

/// Complex matrix handle.
pub struct QsMatrix(ComplexMatrix);

/// Validated density matrix handle.
pub struct QsDensity(DensityMatrix);

/// Kraus channel handle.
pub struct QsChannel(KrausChannel);

/// Bipartite state handle.
pub struct QsComposite(CompositeDensity);

struct Failure {
    status: QsStatus,
    message: String,
}

impl Failure {
    fn new(status: QsStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Self::new(QsStatus::NullPointer, format!("{what} is null"))
    }
}

fn status_of(e: &Error) -> QsStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::CompositeDims { .. } => {
            QsStatus::DimensionMismatch
        }
        Error::EmptyMatrix { .. }
        | Error::EntryCount { .. }
        | Error::RaggedRows { .. }
        | Error::NonFinite { .. }
        | Error::KrausCount { .. }
        | Error::InvalidSubsystem(_)
        | Error::OutcomeIndex { .. }
        | Error::InvalidMeasurement(_) => QsStatus::InvalidArgument,
        Error::NotHermitian { .. } => QsStatus::NotHermitian,
        Error::Unnormalized { .. }
        | Error::EmptyState
        | Error::EmptyEnsemble
        | Error::InvalidProbability { .. }
        | Error::ProbabilitySum { .. }
        | Error::InvalidDensity(_) => QsStatus::InvalidDensity,
        Error::EmptyKraus | Error::ClosureViolated { .. } => QsStatus::ClosureViolated,
        Error::NotUnitary { .. } | Error::NotUnitaryChannel => QsStatus::NotUnitary,
        Error::ZeroProbability { .. } => QsStatus::ZeroProbability,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::new(status_of(&e), e.to_string())
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        Self::new(QsStatus::Scenario, format!("{}: {e}", e.category()))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

/// Runs `f`, converting failures and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QsStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let detail = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::new(QsStatus::Panic, format!("panic: {detail}")))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            QsStatus::Ok
        }
        Err(failure) => {
            set_last_error(&failure.message);
            failure.status
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_scalar<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    *out = value;
    Ok(())
}

unsafe fn read_complex(data: *const f64, count: usize) -> Result<Vec<Complex>, Failure> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if data.is_null() {
        return Err(Failure::null("data"));
    }
    let raw = std::slice::from_raw_parts(data, 2 * count);
    Ok(raw.chunks_exact(2).map(|p| Complex::new(p[0], p[1])).collect())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the most recent failed call on this thread; empty after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn qs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Creates a `rows x cols` matrix from `2 * rows * cols` interleaved doubles.
///
/// # Safety
/// `data` must point to `2 * rows * cols` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut QsMatrix,
) -> QsStatus {
    guard(|| {
        let count = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure::new(QsStatus::InvalidArgument, "matrix size overflows"))?;
        let entries = read_complex(data, count)?;
        write_out(out, QsMatrix(ComplexMatrix::new(rows, cols, entries)?))
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_free(m: *mut QsMatrix) {
    free(m)
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_rows(m: *const QsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Number of columns, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_cols(m: *const QsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Copies entries as interleaved doubles; `capacity` counts doubles.
///
/// # Safety
/// `m` must be a live handle; `out` must have room for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_copy_data(m: *const QsMatrix, out: *mut f64, capacity: usize) -> QsStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        let needed = 2 * m.0.rows() * m.0.cols();
        if capacity < needed {
            return Err(Failure::new(
                QsStatus::InvalidArgument,
                format!("buffer holds {capacity} doubles, need {needed}"),
            ));
        }
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let dst = std::slice::from_raw_parts_mut(out, needed);
        for (pair, z) in dst.chunks_exact_mut(2).zip(m.0.as_slice()) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// Validates `matrix` as a density matrix within `tol`.
///
/// # Safety
/// `matrix` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_density_new(matrix: *const QsMatrix, tol: f64, out: *mut *mut QsDensity) -> QsStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        write_out(out, QsDensity(DensityMatrix::new(m.0.clone(), tol)?))
    })
}

/// `|x><x|` from `dim` interleaved amplitudes.
///
/// # Safety
/// `amplitudes` must point to `2 * dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_density_from_pure(
    dim: usize,
    amplitudes: *const f64,
    out: *mut *mut QsDensity,
) -> QsStatus {
    guard(|| {
        let psi = PureState::new(read_complex(amplitudes, dim)?)?;
        write_out(out, QsDensity(psi.density()))
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_density_free(d: *mut QsDensity) {
    free(d)
}

/// Dimension, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_density_dim(d: *const QsDensity) -> usize {
    d.as_ref().map_or(0, |d| d.0.dim())
}

/// Copies the density matrix into a new matrix handle.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_density_matrix(d: *const QsDensity, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| write_out(out, QsMatrix(deref(d, "density")?.0.matrix().clone())))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_density_purity(d: *const QsDensity, out: *mut f64) -> QsStatus {
    guard(|| write_scalar(out, deref(d, "density")?.0.purity()))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_density_trace(d: *const QsDensity, out: *mut f64) -> QsStatus {
    guard(|| write_scalar(out, deref(d, "density")?.0.trace()))
}

/// Builds a channel from `count` Kraus matrices, checking closure within `tol`.
///
/// # Safety
/// `matrices` must point to `count` live matrix handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_from_kraus(
    matrices: *const *const QsMatrix,
    count: usize,
    tol: f64,
    out: *mut *mut QsChannel,
) -> QsStatus {
    guard(|| {
        if count > 0 && matrices.is_null() {
            return Err(Failure::null("matrices"));
        }
        let handles = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(matrices, count)
        };
        let kraus = handles
            .iter()
            .map(|&m| deref(m, "kraus matrix").map(|m| m.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, QsChannel(channel_from_kraus(kraus, tol)?))
    })
}

/// Unitary channel `exp(-i H delta_tau)`; `h` must be Hermitian within `tol`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_from_hamiltonian(
    h: *const QsMatrix,
    delta_tau: f64,
    tol: f64,
    out: *mut *mut QsChannel,
) -> QsStatus {
    guard(|| {
        if !delta_tau.is_finite() {
            return Err(Failure::new(QsStatus::InvalidArgument, "delta_tau must be finite"));
        }
        let h = Hamiltonian::new(deref(h, "hamiltonian")?.0.clone(), tol)?;
        write_out(out, QsChannel(unitary_from_hamiltonian(&h, delta_tau)))
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_free(c: *mut QsChannel) {
    free(c)
}

/// Dimension, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_dim(c: *const QsChannel) -> usize {
    c.as_ref().map_or(0, |c| c.0.dim())
}

/// Number of Kraus operators, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_kraus_count(c: *const QsChannel) -> usize {
    c.as_ref().map_or(0, |c| c.0.kraus().len())
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_closure_deviation(c: *const QsChannel, out: *mut f64) -> QsStatus {
    guard(|| write_scalar(out, deref(c, "channel")?.0.closure_deviation()))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_apply(
    c: *const QsChannel,
    rho: *const QsDensity,
    out: *mut *mut QsDensity,
) -> QsStatus {
    guard(|| {
        let result = apply_channel(&deref(c, "channel")?.0, &deref(rho, "density")?.0)?;
        write_out(out, QsDensity(result))
    })
}

/// Channel applying `first` then `second`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_compose(
    first: *const QsChannel,
    second: *const QsChannel,
    out: *mut *mut QsChannel,
) -> QsStatus {
    guard(|| {
        let result = compose(&deref(first, "first")?.0, &deref(second, "second")?.0)?;
        write_out(out, QsChannel(result))
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_channel_is_unitary(c: *const QsChannel, tol: f64, out: *mut bool) -> QsStatus {
    guard(|| write_scalar(out, is_unitary_channel(&deref(c, "channel")?.0, tol)))
}

/// `rho_a (x) rho_b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_tensor(
    a: *const QsDensity,
    b: *const QsDensity,
    out: *mut *mut QsComposite,
) -> QsStatus {
    guard(|| {
        let result = tensor_state(&deref(a, "a")?.0, &deref(b, "b")?.0);
        write_out(out, QsComposite(result))
    })
}

/// Wraps a density matrix of dimension `dim_a * dim_b` as a composite.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_new(
    d: *const QsDensity,
    dim_a: usize,
    dim_b: usize,
    out: *mut *mut QsComposite,
) -> QsStatus {
    guard(|| {
        let state = deref(d, "density")?.0.clone();
        write_out(out, QsComposite(CompositeDensity::from_density(state, dim_a, dim_b)?))
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_free(c: *mut QsComposite) {
    free(c)
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_matrix(c: *const QsComposite, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| write_out(out, QsMatrix(deref(c, "composite")?.0.matrix().clone())))
}

/// Reduced state after tracing out `over`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_partial_trace(
    c: *const QsComposite,
    over: QsSubsystem,
    out: *mut *mut QsDensity,
) -> QsStatus {
    guard(|| {
        let over = match over {
            QsSubsystem::A => Subsystem::A,
            QsSubsystem::B => Subsystem::B,
        };
        write_out(out, QsDensity(partial_trace(&deref(c, "composite")?.0, over)))
    })
}

/// `U rho U^dagger` for a global unitary `u`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_apply_unitary(
    u: *const QsMatrix,
    c: *const QsComposite,
    out: *mut *mut QsComposite,
) -> QsStatus {
    guard(|| {
        let result = apply_global_unitary(&deref(u, "unitary")?.0, &deref(c, "composite")?.0)?;
        write_out(out, QsComposite(result))
    })
}

/// Whether the state equals the product of its marginals within `tol`.
/// `out_distance` may be null.
///
/// # Safety
/// `c` must be a live handle; `out_is_product` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_composite_is_product(
    c: *const QsComposite,
    tol: f64,
    out_is_product: *mut bool,
    out_distance: *mut f64,
) -> QsStatus {
    guard(|| {
        let test = is_product_state(&deref(c, "composite")?.0, tol);
        write_scalar(out_is_product, test.is_product)?;
        if !out_distance.is_null() {
            *out_distance = test.distance;
        }
        Ok(())
    })
}

/// Born probabilities for the spectral projectors of `observable`, in
/// ascending eigenvalue order. A non-positive `cluster_tol` selects the
/// default. `out_count` receives the number of outcomes even when `capacity`
/// is too small.
///
/// # Safety
/// Handles must be live; `out` must have room for `capacity` doubles;
/// `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_outcome_probabilities(
    rho: *const QsDensity,
    observable: *const QsMatrix,
    cluster_tol: f64,
    out: *mut f64,
    capacity: usize,
    out_count: *mut usize,
) -> QsStatus {
    guard(|| {
        let rho = &deref(rho, "density")?.0;
        let q = Observable::new(deref(observable, "observable")?.0.clone(), qsignals::DEFAULT_TOLERANCE)?;
        let cluster_tol = if cluster_tol > 0.0 { cluster_tol } else { DEFAULT_CLUSTER_TOL };
        let probs = outcome_probabilities(rho, &projectors_from_observable(&q, cluster_tol))?;
        write_scalar(out_count, probs.len())?;
        if capacity < probs.len() {
            return Err(Failure::new(
                QsStatus::InvalidArgument,
                format!("buffer holds {capacity} values, need {}", probs.len()),
            ));
        }
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        std::slice::from_raw_parts_mut(out, probs.len()).copy_from_slice(&probs);
        Ok(())
    })
}

/// Parses and runs a scenario; `*out` receives the report, to be released
/// with [`qs_string_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_scenario_run(json: *const c_char, machine: bool, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::null("json"));
        }
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let doc = parse_scenario(CStr::from_ptr(json).to_bytes())?;
        let report = run_pipeline(&doc)?;
        let format = if machine { ReportFormat::Machine } else { ReportFormat::Human };
        let text = CString::new(format_report(&report, format))
            .map_err(|_| Failure::new(QsStatus::Scenario, "report contains NUL"))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn guard_catches_panics() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, QsStatus::Panic);
        let msg = unsafe { CStr::from_ptr(qs_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("boom"));
    }

    #[test]
    fn success_clears_message() {
        let _ = guard(|| Err(Failure::null("x")));
        let _ = guard(|| Ok(()));
        let msg = unsafe { CStr::from_ptr(qs_last_error_message()) };
        assert!(msg.to_bytes().is_empty());
    }

    #[test]
    fn null_out_is_rejected() {
        let status = unsafe { qs_density_from_pure(1, [1.0, 0.0].as_ptr(), ptr::null_mut()) };
        assert_eq!(status, QsStatus::NullPointer);
    }
}
