//! Quantum signals: pure states, statistical ensembles and validated
//! density matrices in the computational basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};

/// Inputs whose norm (or probability sum) lies within this distance of one are
/// renormalized instead of rejected.
pub const NORMALIZATION_SLACK: f64 = 1e-6;

/// Normalized amplitude vector `x[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyState);
        }
        if amplitudes.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Unnormalized { norm: f64::NAN });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(Error::Unnormalized { norm });
        }
        let amplitudes = amplitudes.into_iter().map(|z| z / norm).collect();
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|k>` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amplitudes = vec![Complex::new(0.0, 0.0); dim];
        amplitudes[k] = Complex::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    /// `rho[n][m] = x[n] x*[m]`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(ComplexMatrix::outer(&self.amplitudes, &self.amplitudes))
    }
}

/// A finite mixture `{(p_i, |x_i>)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::EmptyEnsemble);
        };
        let dim = first.dim();
        for (index, (p, state)) in members.iter().enumerate() {
            if !(*p > 0.0 && *p <= 1.0) {
                return Err(Error::InvalidProbability { index, p: *p });
            }
            if state.dim() != dim {
                return Err(Error::DimensionMismatch {
                    op: "ensemble",
                    left: (dim, 1),
                    right: (state.dim(), 1),
                });
            }
        }
        let sum: f64 = members.iter().map(|(p, _)| p).sum();
        if (sum - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(Error::ProbabilitySum { sum });
        }
        let members = members.into_iter().map(|(p, s)| (p / sum, s)).collect();
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }

    /// `rho[n][m] = sum_i p_i x_i[n] x_i*[m]`.
    pub fn density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut rho = ComplexMatrix::zeros(dim, dim);
        for (p, state) in &self.members {
            let a = state.amplitudes();
            rho.add_assign_unchecked(&ComplexMatrix::outer(a, a).scale_real(*p));
        }
        DensityMatrix::from_trusted(rho)
    }
}

/// Outcome of one density-matrix property check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub passed: bool,
    /// How far the measured quantity sits outside its admissible range (0 when inside).
    pub deviation: f64,
}

impl Check {
    fn within(deviation: f64, tol: f64) -> Self {
        Self {
            passed: deviation <= tol,
            deviation,
        }
    }

    fn failed() -> Self {
        Self {
            passed: false,
            deviation: f64::INFINITY,
        }
    }
}

/// Per-property verdicts for a candidate density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub square: bool,
    pub hermiticity: Check,
    pub trace: Check,
    pub positivity: Check,
    pub eigenvalue_cap: Check,
    /// Spectrum extremes of the Hermitian part; NaN when the matrix is not square.
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.square
            && self.hermiticity.passed
            && self.trace.passed
            && self.positivity.passed
            && self.eigenvalue_cap.passed
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.square {
            return write!(f, "matrix is not square");
        }
        let mut failures = Vec::new();
        if !self.hermiticity.passed {
            failures.push(format!("hermiticity off by {:e}", self.hermiticity.deviation));
        }
        if !self.trace.passed {
            failures.push(format!("trace off by {:e}", self.trace.deviation));
        }
        if !self.positivity.passed {
            failures.push(format!("min eigenvalue {:e}", self.min_eigenvalue));
        }
        if !self.eigenvalue_cap.passed {
            failures.push(format!("max eigenvalue {:e}", self.max_eigenvalue));
        }
        if failures.is_empty() {
            write!(f, "all checks passed")
        } else {
            write!(f, "{}", failures.join("; "))
        }
    }
}

/// Checks hermiticity, unit trace, positivity and the eigenvalue cap of `m`.
pub fn validate_density(m: &ComplexMatrix, tol: f64) -> ValidationReport {
    if !m.is_square() {
        return ValidationReport {
            square: false,
            hermiticity: Check::failed(),
            trace: Check::failed(),
            positivity: Check::failed(),
            eigenvalue_cap: Check::failed(),
            min_eigenvalue: f64::NAN,
            max_eigenvalue: f64::NAN,
        };
    }
    let hermiticity = Check::within(m.hermitian_asymmetry(), tol);
    let trace = m.trace().expect("square");
    let trace = Check::within((trace - Complex::new(1.0, 0.0)).norm(), tol);
    let spectrum = m
        .hermitian_part()
        .hermitian_eigen(f64::INFINITY)
        .expect("hermitian part is Hermitian");
    let min_eigenvalue = spectrum.min_eigenvalue();
    let max_eigenvalue = spectrum.max_eigenvalue();
    ValidationReport {
        square: true,
        hermiticity,
        trace,
        positivity: Check::within((-min_eigenvalue).max(0.0), tol),
        eigenvalue_cap: Check::within((max_eigenvalue - 1.0).max(0.0), tol),
        min_eigenvalue,
        max_eigenvalue,
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let report = validate_density(&matrix, tol);
        if report.passed() {
            Ok(Self { matrix })
        } else {
            Err(Error::InvalidDensity(report))
        }
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.density()
    }

    pub fn from_ensemble(e: &Ensemble) -> Self {
        e.density()
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.matrix.trace().expect("square").re
    }

    /// `Tr(rho^2)` from the spectrum, with slightly negative eigenvalues clamped to zero.
    pub fn purity(&self) -> f64 {
        let spectrum = self
            .matrix
            .hermitian_eigen(f64::INFINITY)
            .expect("square");
        spectrum.eigenvalues.iter().map(|&l| l.max(0.0).powi(2)).sum()
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        validate_density(&self.matrix, tol)
    }
}

pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    psi.density()
}

pub fn density_from_ensemble(e: &Ensemble) -> DensityMatrix {
    e.density()
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}
