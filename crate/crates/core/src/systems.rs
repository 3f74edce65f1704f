//! Quantum systems as Kraus channels `rho -> sum_mu M_mu rho M_mu^dagger`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::random::random_isometry;
use crate::signals::DensityMatrix;

/// Default closure tolerance for channels built from user input.
pub const CLOSURE_TOLERANCE: f64 = 1e-8;

/// Ordered Kraus set satisfying `sum M^dagger M = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    closure_deviation: f64,
}

/// `||sum M^dagger M - I||_F`.
pub fn closure_deviation(kraus: &[ComplexMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let n = first.rows();
    let mut sum = ComplexMatrix::zeros(n, n);
    for m in kraus {
        sum.add_assign_unchecked(&m.adjoint().mul(m));
    }
    sum.frobenius_distance(&ComplexMatrix::identity(n))
        .expect("same shape")
}

impl KrausChannel {
    /// Validates shapes and the closure relation.
    pub fn new(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        if !first.is_square() {
            return Err(Error::NotSquare {
                op: "kraus channel",
                rows: first.rows(),
                cols: first.cols(),
            });
        }
        let dim = first.rows();
        if let Some(bad) = kraus.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch {
                op: "kraus channel",
                left: (dim, dim),
                right: bad.shape(),
            });
        }
        let deviation = closure_deviation(&kraus);
        if deviation > tol {
            return Err(Error::ClosureViolated { deviation });
        }
        Ok(Self {
            dim,
            kraus,
            closure_deviation: deviation,
        })
    }

    pub(crate) fn from_trusted(kraus: Vec<ComplexMatrix>) -> Self {
        let dim = kraus[0].rows();
        let closure_deviation = closure_deviation(&kraus);
        Self {
            dim,
            kraus,
            closure_deviation,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_trusted(vec![ComplexMatrix::identity(dim)])
    }

    /// Single-Kraus channel; `u` must be unitary within `tol`.
    pub fn unitary(u: ComplexMatrix, tol: f64) -> Result<Self> {
        u.require_unitary(tol)?;
        Ok(Self::from_trusted(vec![u]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn closure_deviation(&self) -> f64 {
        self.closure_deviation
    }

    /// Kraus sum on an arbitrary square matrix (the map is linear, so inputs
    /// need not be states).
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                op: "apply_channel",
                left: (self.dim, self.dim),
                right: rho.shape(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for m in &self.kraus {
            out.add_assign_unchecked(&m.congruence(rho));
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.apply_matrix(rho.matrix()).map(DensityMatrix::from_trusted)
    }

    /// Channel that runs `self` first and `second` afterwards.
    pub fn then(&self, second: &KrausChannel) -> Result<KrausChannel> {
        compose(self, second)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary_channel(self, tol)
    }

    /// The unitary `U` when the channel is `rho -> U rho U^dagger`, recovered
    /// from the first Kraus matrix with non-negligible weight.
    pub fn as_unitary(&self, tol: f64) -> Option<ComplexMatrix> {
        if !self.is_unitary(tol) {
            return None;
        }
        let n = self.dim as f64;
        let (m, weight) = self
            .kraus
            .iter()
            .map(|m| (m, m.frobenius_norm().powi(2) / n))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        Some(m.scale_real(1.0 / weight.sqrt()))
    }
}

pub fn channel_from_kraus(matrices: Vec<ComplexMatrix>, tol: f64) -> Result<KrausChannel> {
    KrausChannel::new(matrices, tol)
}

pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    ch.apply(rho)
}

/// Sequential cascade: Kraus set `{second_nu * first_mu}` without reduction.
pub fn compose(first: &KrausChannel, second: &KrausChannel) -> Result<KrausChannel> {
    if first.dim != second.dim {
        return Err(Error::DimensionMismatch {
            op: "compose",
            left: (first.dim, first.dim),
            right: (second.dim, second.dim),
        });
    }
    let kraus = second
        .kraus
        .iter()
        .flat_map(|s| first.kraus.iter().map(move |f| s.mul(f)))
        .collect();
    Ok(KrausChannel::from_trusted(kraus))
}

/// Hermitian matrix playing the role of `H` in `U = exp(-i H dt)` (hbar = 1).
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
}

impl Hamiltonian {
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                op: "hamiltonian",
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let max_asymmetry = matrix.hermitian_asymmetry();
        if max_asymmetry > tol {
            return Err(Error::NotHermitian { max_asymmetry });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `exp(-i H dt)` through the spectral decomposition of `H`.
    pub fn evolution_operator(&self, delta_tau: f64) -> ComplexMatrix {
        let eigen = self
            .matrix
            .hermitian_eigen(f64::INFINITY)
            .expect("validated Hermitian");
        eigen.map_spectrum(|l| Complex::from_polar(1.0, -l * delta_tau))
    }
}

pub fn unitary_from_hamiltonian(h: &Hamiltonian, delta_tau: f64) -> KrausChannel {
    KrausChannel::from_trusted(vec![h.evolution_operator(delta_tau)])
}

/// True when the channel is `rho -> U rho U^dagger` for some unitary `U`,
/// i.e. every `M_mu^dagger M_nu` is a multiple of the identity.
pub fn is_unitary_channel(ch: &KrausChannel, tol: f64) -> bool {
    let n = ch.dim;
    let identity = ComplexMatrix::identity(n);
    if let [m] = ch.kraus.as_slice() {
        return m.unitarity_deviation() <= tol;
    }
    for a in &ch.kraus {
        let a_adj = a.adjoint();
        for b in &ch.kraus {
            let gram = a_adj.mul(b);
            let scalar = gram.trace().expect("square") / n as f64;
            let residual = gram
                .frobenius_distance(&identity.scale(scalar))
                .expect("same shape");
            if residual > tol {
                return false;
            }
        }
    }
    true
}

/// Random channel whose Kraus operators are the stacked blocks of a seeded
/// `(dim * kraus_count) x dim` isometry.
pub fn random_channel(dim: usize, kraus_count: usize, seed: u64) -> Result<KrausChannel> {
    let max = dim * dim;
    if dim == 0 || kraus_count == 0 || kraus_count > max {
        return Err(Error::KrausCount {
            count: kraus_count,
            max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let big = random_isometry(dim * kraus_count, dim, &mut rng);
    let kraus = (0..kraus_count)
        .map(|k| ComplexMatrix::from_fn(dim, dim, |i, j| big[(k * dim + i, j)]))
        .collect();
    Ok(KrausChannel::from_trusted(kraus))
}
