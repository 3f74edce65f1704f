//! Dense complex matrices and the handful of operations the rest of the
//! crate needs: products, adjoints, traces, Kronecker products and a
//! Hermitian eigensolver.
//!
//! Storage is row-major. Every stored entry is finite.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense `rows x cols` complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: m,
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, m, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        debug_assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diagonal(entries: &[Complex]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
    }

    pub fn real_diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex::new(entries[i], 0.0) } else { ZERO })
    }

    /// `|u><v|` for column vectors `u` and `v`.
    pub fn outer(u: &[Complex], v: &[Complex]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex> {
        (row < self.rows && col < self.cols).then(|| self.data[row * self.cols + col])
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.data[row * self.cols + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, col)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex>> {
        self.data.chunks(self.cols).map(<[Complex]>::to_vec).collect()
    }

    fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.mul(other))
    }

    /// Product for callers that already know the shapes conform.
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let lhs = &self.data[i * self.cols..(i + 1) * self.cols];
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in lhs.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(rhs) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `self * rho * self^dagger`.
    pub(crate) fn congruence(&self, rho: &Self) -> Self {
        self.mul(rho).mul(&self.adjoint())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Result<Complex> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self[(i, i)]).sum())
    }

    /// Kronecker product; row `n * b.rows + m` pairs row `n` of `self` with row `m` of `b`.
    pub fn kron(&self, b: &Self) -> Self {
        let (br, bc) = b.shape();
        Self::from_fn(self.rows * br, self.cols * bc, |k, l| {
            self[(k / br, l / bc)] * b[(k % br, l % bc)]
        })
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        debug_assert_eq!(self.shape(), other.shape());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other, "frobenius_distance")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |h - h^dagger|` over entries; infinite for non-square input.
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(h + h^dagger) / 2`.
    pub(crate) fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        self.zip_with(&adj, |a, b| (a + b) * 0.5)
    }

    /// Frobenius distance of `self^dagger self` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().mul(self);
        gram.frobenius_distance(&Self::identity(self.rows))
            .unwrap_or(f64::INFINITY)
    }

    pub fn require_unitary(&self, tol: f64) -> Result<()> {
        self.require_square("unitary check")?;
        let deviation = self.unitarity_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
    ///
    /// Eigenvalues come back ascending; column `k` of the eigenvector matrix
    /// belongs to eigenvalue `k`.
    pub fn hermitian_eigen(&self, tol: f64) -> Result<HermitianEigen> {
        let n = self.require_square("hermitian_eigen")?;
        let max_asymmetry = self.hermitian_asymmetry();
        if max_asymmetry > tol {
            return Err(Error::NotHermitian { max_asymmetry });
        }
        Ok(jacobi_eigen(self.hermitian_part(), n))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (row, col): (usize, usize)) -> &Complex {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        &self.data[row * self.cols + col]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>12.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Output of [`ComplexMatrix::hermitian_eigen`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let weights: Vec<Complex> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * weights[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| Complex::new(l, 0.0))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_eigen(mut a: ComplexMatrix, n: usize) -> HermitianEigen {
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let mut previous = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        // Rounding can park `off` just above the threshold; stop once sweeps stall.
        if off <= threshold || off >= previous {
            break;
        }
        previous = off;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

/// Annihilates `a[p][q]` with `G = D R`, where `D = diag(1, e^{-i phi})` makes
/// the pivot real and `R` is the classic real Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude <= f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / magnitude;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let g_pp = Complex::new(c, 0.0);
    let g_pq = Complex::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.rows();
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a.set(k, p, akp * g_pp + akq * g_qp);
        a.set(k, q, akp * g_pq + akq * g_qq);
    }
    // A <- G^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a.set(p, k, g_pp.conj() * apk + g_qp.conj() * aqk);
        a.set(q, k, g_pq.conj() * apk + g_qq.conj() * aqk);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    a.set(p, p, Complex::new(a[(p, p)].re, 0.0));
    a.set(q, q, Complex::new(a[(q, q)].re, 0.0));
    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v.set(k, p, vkp * g_pp + vkq * g_qp);
        v.set(k, q, vkp * g_pq + vkq * g_qq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![ZERO; 3]),
            Err(Error::EntryCount { actual: 3, .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(Error::EmptyMatrix { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            ComplexMatrix::from_rows(&[vec![ONE, ONE], vec![ONE]]),
            Err(Error::RaggedRows { row: 1, .. })
        ));
    }

    #[test]
    fn matmul_identity_and_flip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(2, 2, &mut rng);
        assert_eq!(ComplexMatrix::identity(2).matmul(&a).unwrap(), a);
        let x = sigma_x();
        assert_eq!(x.matmul(&x).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn matmul_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(3, 3, &mut rng);
        let b = random_matrix(3, 3, &mut rng);
        let got = a.matmul(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = ZERO;
                for k in 0..3 {
                    acc += a.as_slice()[i * 3 + k] * b.as_slice()[k * 3 + j];
                }
                assert!((got[(i, j)] - acc).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn matmul_shape_error_names_both_shapes() {
        let err = ComplexMatrix::zeros(2, 3).matmul(&ComplexMatrix::zeros(2, 3)).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "matmul",
                left: (2, 3),
                right: (2, 3)
            }
        );
        assert!(err.to_string().contains("(2, 3)"));
    }

    #[test]
    fn adjoint_examples() {
        let d = ComplexMatrix::real_diagonal(&[1.0, -2.0, 3.5]);
        assert_eq!(d.adjoint(), d);
        let a = ComplexMatrix::from_rows(&[vec![ZERO, c(0.0, 1.0)], vec![ZERO, ZERO]]).unwrap();
        let expected = ComplexMatrix::from_rows(&[vec![ZERO, ZERO], vec![c(0.0, -1.0), ZERO]]).unwrap();
        assert_eq!(a.adjoint(), expected);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = random_matrix(4, 2, &mut rng);
        let adj = r.adjoint();
        assert_eq!(adj.shape(), (2, 4));
        for i in 0..4 {
            for j in 0..2 {
                assert_eq!(adj.as_slice()[j * 4 + i], r.as_slice()[i * 2 + j].conj());
            }
        }
        assert_eq!(adj.adjoint(), r);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(5).trace().unwrap(), c(5.0, 0.0));
        assert_eq!(sigma_x().trace().unwrap(), ZERO);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = random_matrix(5, 5, &mut rng);
        let mut acc = ZERO;
        for i in 0..5 {
            acc += r.as_slice()[i * 6];
        }
        assert_eq!(r.trace().unwrap(), acc);
        assert!(matches!(
            ComplexMatrix::zeros(2, 3).trace(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4)
        );
        let p = ComplexMatrix::real_diagonal(&[1.0, 0.0]);
        assert_eq!(p.kron(&p), ComplexMatrix::real_diagonal(&[1.0, 0.0, 0.0, 0.0]));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(2, 2, &mut rng);
        let b = random_matrix(2, 2, &mut rng);
        let k = a.kron(&b);
        for n in 0..2 {
            for i in 0..2 {
                for m in 0..2 {
                    for j in 0..2 {
                        let expected = a.as_slice()[n * 2 + i] * b.as_slice()[m * 2 + j];
                        let got = k.as_slice()[(n * 2 + m) * 4 + (i * 2 + j)];
                        assert!((got - expected).norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 1);
        assert_eq!(a.kron(&b).shape(), (8, 3));
    }

    fn projector_onto(vectors: &[Vec<Complex>], n: usize) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(n, n);
        for v in vectors {
            p.add_assign_unchecked(&ComplexMatrix::outer(v, v));
        }
        p
    }

    #[test]
    fn eigen_of_diagonal() {
        let h = ComplexMatrix::real_diagonal(&[3.0, 1.0, 2.0]);
        let e = h.hermitian_eigen(1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
        // Column k should be the standard basis vector holding eigenvalue k.
        for (k, &basis) in [1usize, 2, 0].iter().enumerate() {
            let col = e.eigenvectors.column(k);
            assert!((col[basis].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eigen_of_sigma_x() {
        let e = sigma_x().hermitian_eigen(1e-12).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = projector_onto(&[vec![c(h, 0.0), c(-h, 0.0)]], 2);
        let plus = projector_onto(&[vec![c(h, 0.0), c(h, 0.0)]], 2);
        let got_minus = projector_onto(&[e.eigenvectors.column(0)], 2);
        let got_plus = projector_onto(&[e.eigenvectors.column(1)], 2);
        assert!(got_minus.frobenius_distance(&minus).unwrap() < 1e-14);
        assert!(got_plus.frobenius_distance(&plus).unwrap() < 1e-14);
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [1, 2, 4, 7, 16] {
            let a = random_matrix(n, n, &mut rng);
            let h = a.add(&a.adjoint()).unwrap().scale_real(0.5);
            let e = h.hermitian_eigen(1e-12).unwrap();
            let bound = 1e-10 * h.frobenius_norm().max(1.0);
            assert!(e.reconstruct().frobenius_distance(&h).unwrap() <= bound);
            assert!(e.eigenvectors.unitarity_deviation() < 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigen_degenerate_cluster_projector() {
        // diag(1,1,4) rotated by a fixed unitary; the 2-dim eigenspace projector is basis-free.
        let h = 1.0 / 2f64.sqrt();
        let u = ComplexMatrix::from_rows(&[
            vec![c(h, 0.0), c(0.0, h), ZERO],
            vec![c(0.0, h), c(h, 0.0), ZERO],
            vec![ZERO, ZERO, ONE],
        ])
        .unwrap();
        let m = u.congruence(&ComplexMatrix::real_diagonal(&[1.0, 4.0, 1.0]));
        let e = m.hermitian_eigen(1e-12).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-12 && (e.eigenvalues[1] - 1.0).abs() < 1e-12);
        let got = projector_onto(&[e.eigenvectors.column(0), e.eigenvectors.column(1)], 3);
        let expected = projector_onto(&[u.column(0), u.column(2)], 3);
        assert!(got.frobenius_distance(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.5, 0.0]]).unwrap();
        match a.hermitian_eigen(1e-10) {
            Err(Error::NotHermitian { max_asymmetry }) => assert!((max_asymmetry - 0.5).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn frobenius_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(3, 2, &mut rng);
        assert_eq!(a.frobenius_distance(&a).unwrap(), 0.0);
        let d = ComplexMatrix::zeros(2, 2)
            .frobenius_distance(&ComplexMatrix::identity(2))
            .unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let b = random_matrix(3, 2, &mut rng);
        let mut acc = 0.0;
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            acc += (x.re - y.re).powi(2) + (x.im - y.im).powi(2);
        }
        assert!((a.frobenius_distance(&b).unwrap() - acc.sqrt()).abs() < 1e-14);
        assert!(a.frobenius_distance(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
