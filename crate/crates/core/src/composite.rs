//! Bipartite composite signals on `E_A (x) E_B`.
//!
//! Composite index convention: `k = n * dim_b + m` pairs subsystem-A index `n`
//! with subsystem-B index `m` (0-based), matching [`ComplexMatrix::kron`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, HermitianEigen, ZERO};
use crate::signals::DensityMatrix;
use crate::systems::{KrausChannel, CLOSURE_TOLERANCE};

/// Eigenvalues of the ancilla state at or below this weight carry no branch.
pub const BRANCH_WEIGHT_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            other => Err(Error::InvalidSubsystem(other.to_string())),
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
        })
    }
}

/// Density matrix on a two-part space with recorded factor dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeDensity {
    dim_a: usize,
    dim_b: usize,
    state: DensityMatrix,
}

impl CompositeDensity {
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize, tol: f64) -> Result<Self> {
        check_factorization(matrix.rows(), dim_a, dim_b)?;
        let state = DensityMatrix::new(matrix, tol)?;
        Ok(Self { dim_a, dim_b, state })
    }

    pub fn from_density(state: DensityMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_factorization(state.dim(), dim_a, dim_b)?;
        Ok(Self { dim_a, dim_b, state })
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Self {
        debug_assert_eq!(matrix.rows(), dim_a * dim_b);
        Self {
            dim_a,
            dim_b,
            state: DensityMatrix::from_trusted(matrix),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.state.matrix()
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    /// Entry `rho[n, m; i, j]` of the rank-four view.
    pub fn element(&self, n: usize, m: usize, i: usize, j: usize) -> Complex {
        self.matrix()[(n * self.dim_b + m, i * self.dim_b + j)]
    }

    pub fn partial_trace(&self, over: Subsystem) -> DensityMatrix {
        DensityMatrix::from_trusted(partial_trace_matrix(self.matrix(), self.dim_a, self.dim_b, over))
    }
}

fn check_factorization(total: usize, dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a == 0 || dim_b == 0 || dim_a * dim_b != total {
        Err(Error::CompositeDims { total, dim_a, dim_b })
    } else {
        Ok(())
    }
}

/// Partial trace of a `(dim_a * dim_b)`-square matrix.
pub(crate) fn partial_trace_matrix(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    over: Subsystem,
) -> ComplexMatrix {
    let at = |n: usize, mm: usize, i: usize, j: usize| m[(n * dim_b + mm, i * dim_b + j)];
    match over {
        Subsystem::B => ComplexMatrix::from_fn(dim_a, dim_a, |n, i| {
            (0..dim_b).map(|mm| at(n, mm, i, mm)).sum()
        }),
        Subsystem::A => ComplexMatrix::from_fn(dim_b, dim_b, |mm, j| {
            (0..dim_a).map(|n| at(n, mm, n, j)).sum()
        }),
    }
}

pub fn tensor_state(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> CompositeDensity {
    CompositeDensity::from_trusted(rho_a.matrix().kron(rho_b.matrix()), rho_a.dim(), rho_b.dim())
}

pub fn partial_trace(rho_ab: &CompositeDensity, over: Subsystem) -> DensityMatrix {
    rho_ab.partial_trace(over)
}

/// Local channels acting independently on each factor: Kraus set
/// `{M_mu (x) M'_nu}` over all pairs.
pub fn lift_channels(ch_a: &KrausChannel, ch_b: &KrausChannel) -> KrausChannel {
    let kraus = ch_a
        .kraus()
        .iter()
        .flat_map(|a| ch_b.kraus().iter().map(move |b| a.kron(b)))
        .collect();
    KrausChannel::from_trusted(kraus)
}

/// Applies `ch_a (x) ch_b` to a composite whose factors match the channel dimensions.
pub fn apply_local_channels(
    ch_a: &KrausChannel,
    ch_b: &KrausChannel,
    rho_ab: &CompositeDensity,
) -> Result<CompositeDensity> {
    if (ch_a.dim(), ch_b.dim()) != rho_ab.dims() {
        return Err(Error::DimensionMismatch {
            op: "lift_channels",
            left: (ch_a.dim(), ch_b.dim()),
            right: rho_ab.dims(),
        });
    }
    let out = lift_channels(ch_a, ch_b).apply_matrix(rho_ab.matrix())?;
    Ok(CompositeDensity::from_trusted(out, rho_ab.dim_a, rho_ab.dim_b))
}

/// `U rho U^dagger` on the whole composite; `u` must be unitary within the
/// default closure tolerance.
pub fn apply_global_unitary(u: &ComplexMatrix, rho_ab: &CompositeDensity) -> Result<CompositeDensity> {
    let n = rho_ab.matrix().rows();
    if u.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "apply_global_unitary",
            left: u.shape(),
            right: (n, n),
        });
    }
    u.require_unitary(CLOSURE_TOLERANCE)?;
    Ok(CompositeDensity::from_trusted(
        u.congruence(rho_ab.matrix()),
        rho_ab.dim_a,
        rho_ab.dim_b,
    ))
}

/// Result of [`is_product_state`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTest {
    pub is_product: bool,
    /// `||rho_AB - Tr_B(rho) (x) Tr_A(rho)||_F`.
    pub distance: f64,
    pub reduced_purity_a: f64,
    /// The reduced states, present when the test passes.
    pub factors: Option<(DensityMatrix, DensityMatrix)>,
}

/// Tests whether `rho_AB` equals the product of its own marginals.
///
/// Exact for globally pure states. For mixed states this only checks the
/// specific product `Tr_B(rho) (x) Tr_A(rho)`; separable mixtures of products
/// are reported as non-product.
pub fn is_product_state(rho_ab: &CompositeDensity, tol: f64) -> ProductTest {
    let rho_a = rho_ab.partial_trace(Subsystem::B);
    let rho_b = rho_ab.partial_trace(Subsystem::A);
    let distance = rho_ab
        .matrix()
        .frobenius_distance(&rho_a.matrix().kron(rho_b.matrix()))
        .expect("same shape");
    let is_product = distance <= tol;
    ProductTest {
        is_product,
        distance,
        reduced_purity_a: rho_a.purity(),
        factors: is_product.then_some((rho_a, rho_b)),
    }
}

/// `(I_A (x) <bra|) U (I_A (x) |ket>)`, a `dim_a x dim_a` slice of `u`.
pub(crate) fn branch_operator(
    u: &ComplexMatrix,
    dim_a: usize,
    bra: &[Complex],
    ket: &[Complex],
) -> ComplexMatrix {
    let dim_b = bra.len();
    ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
        let mut acc = ZERO;
        for (n, b) in bra.iter().enumerate() {
            if *b == ZERO {
                continue;
            }
            let row = i * dim_b + n;
            let inner: Complex = ket
                .iter()
                .enumerate()
                .map(|(m, k)| u[(row, j * dim_b + m)] * k)
                .sum();
            acc += b.conj() * inner;
        }
        acc
    })
}

/// Kraus operators of the reduced dynamics of `A` when `A` and `B` start
/// uncorrelated and evolve jointly under `U_AB`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenSystemKraus {
    operators: Vec<ComplexMatrix>,
    dim_a: usize,
    interaction: ComplexMatrix,
    ancilla_spectrum: HermitianEigen,
    closure_deviation: f64,
}

impl OpenSystemKraus {
    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn interaction(&self) -> &ComplexMatrix {
        &self.interaction
    }

    /// Spectral decomposition of the initial `rho_B` the operators were built from.
    pub fn ancilla_spectrum(&self) -> &HermitianEigen {
        &self.ancilla_spectrum
    }

    pub fn closure_deviation(&self) -> f64 {
        self.closure_deviation
    }

    pub fn to_channel(&self) -> KrausChannel {
        KrausChannel::from_trusted(self.operators.clone())
    }

    pub fn apply(&self, rho_a: &DensityMatrix) -> Result<DensityMatrix> {
        self.to_channel().apply(rho_a)
    }
}

/// Builds `Omega_{n,k} = sqrt(l_k) (I (x) <b_n|) U (I (x) |e_k>)` from
/// `rho_B = sum_k l_k |e_k><e_k|`.
///
/// `tol` drops ancilla eigenvalues at or below it; unitarity of `u_ab` is
/// checked against [`CLOSURE_TOLERANCE`].
pub fn derive_open_system_kraus(
    u_ab: &ComplexMatrix,
    rho_b: &DensityMatrix,
    tol: f64,
) -> Result<OpenSystemKraus> {
    let dim_b = rho_b.dim();
    if !u_ab.is_square() || !u_ab.rows().is_multiple_of(dim_b) {
        return Err(Error::CompositeDims {
            total: u_ab.rows(),
            dim_a: u_ab.rows() / dim_b,
            dim_b,
        });
    }
    u_ab.require_unitary(CLOSURE_TOLERANCE)?;
    let dim_a = u_ab.rows() / dim_b;

    let spectrum = rho_b
        .matrix()
        .hermitian_eigen(f64::INFINITY)
        .expect("density matrices are Hermitian");
    let mut operators = Vec::new();
    for (k, &weight) in spectrum.eigenvalues.iter().enumerate() {
        if weight <= tol {
            continue;
        }
        let ket = spectrum.eigenvectors.column(k);
        let amplitude = weight.sqrt();
        for n in 0..dim_b {
            let mut bra = vec![ZERO; dim_b];
            bra[n] = Complex::new(1.0, 0.0);
            operators.push(branch_operator(u_ab, dim_a, &bra, &ket).scale_real(amplitude));
        }
    }
    let closure_deviation = crate::systems::closure_deviation(&operators);
    Ok(OpenSystemKraus {
        operators,
        dim_a,
        interaction: u_ab.clone(),
        ancilla_spectrum: spectrum,
        closure_deviation,
    })
}
