//! Seeded generators for random states, Hermitian matrices and unitaries.
//!
//! Everything takes an explicit RNG; there is no ambient random state.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Complex, ComplexMatrix};
use crate::signals::{DensityMatrix, PureState};

fn gaussian(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `rows x cols` matrix of independent standard complex Gaussians.
pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

fn gram_schmidt_pass(columns: &mut [Vec<Complex>]) {
    for j in 0..columns.len() {
        let (done, rest) = columns.split_at_mut(j);
        let col = &mut rest[0];
        for q in done.iter() {
            let overlap: Complex = q.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in col.iter_mut().zip(q) {
                *x -= overlap * a;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in col.iter_mut() {
            *x /= norm;
        }
    }
}

/// `rows x cols` matrix with orthonormal columns (`cols <= rows`), from
/// modified Gram-Schmidt on a Ginibre matrix.
pub fn random_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows, got {rows}x{cols}");
    let g = ginibre(rows, cols, rng);
    let mut columns: Vec<Vec<Complex>> = (0..cols).map(|j| g.column(j)).collect();
    gram_schmidt_pass(&mut columns);
    // Second pass restores orthogonality lost to rounding.
    gram_schmidt_pass(&mut columns);
    ComplexMatrix::from_fn(rows, cols, |i, j| columns[j][i])
}

pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    random_isometry(n, n, rng)
}

pub fn random_pure_state(n: usize, rng: &mut impl Rng) -> PureState {
    let v: Vec<Complex> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(v.into_iter().map(|z| z / norm).collect()).expect("normalized")
}

/// Full-rank mixed state `G G^dagger / Tr(G G^dagger)`.
pub fn random_density(n: usize, rng: &mut impl Rng) -> DensityMatrix {
    random_density_with_rank(n, n, rng)
}

/// Mixed state of rank at most `rank`.
pub fn random_density_with_rank(n: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(n, rank.max(1), rng);
    let m = g.mul(&g.adjoint());
    let tr = m.trace().expect("square").re;
    let m = m.hermitian_part().scale_real(1.0 / tr);
    DensityMatrix::from_trusted(m)
}

/// `(A + A^dagger) / 2` for Gaussian `A`.
pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ginibre(n, n, rng).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 16, 36] {
            assert!(random_unitary(n, &mut rng).unitarity_deviation() < 1e-13);
        }
    }

    #[test]
    fn densities_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=6 {
            assert!(random_density(n, &mut rng).validate(1e-10).passed());
            assert!(random_density_with_rank(n, 1, &mut rng).validate(1e-10).passed());
            assert!(random_pure_state(n, &mut rng).density().validate(1e-10).passed());
        }
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = random_unitary(3, &mut ChaCha8Rng::seed_from_u64(5));
        let b = random_unitary(3, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }
}
