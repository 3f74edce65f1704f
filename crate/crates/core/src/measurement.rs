//! Projective and ancilla-based generalized measurement.
//!
//! Outcomes are always ordered by ascending eigenvalue. Composite spaces put
//! the measured signal first and the ancilla second (`A (x) B`).

use std::ops::Range;

use crate::composite::{branch_operator, partial_trace_matrix, tensor_state, Subsystem, BRANCH_WEIGHT_FLOOR};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianEigen};
use crate::signals::DensityMatrix;
use crate::systems::{KrausChannel, CLOSURE_TOLERANCE};

/// Eigenvalues closer than this are merged into one outcome by default.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Outcomes with probability at or below this are treated as impossible.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Hermitian matrix with its spectral decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    eigen: HermitianEigen,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let eigen = matrix.hermitian_eigen(tol)?;
        Ok(Self { matrix, eigen })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn projective_measurement(&self, cluster_tol: f64) -> ProjectiveMeasurement {
        projectors_from_observable(self, cluster_tol)
    }
}

/// Complete family of orthogonal projectors with one value per projector.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveMeasurement {
    projectors: Vec<ComplexMatrix>,
    values: Vec<f64>,
}

impl ProjectiveMeasurement {
    /// Validates idempotence, mutual orthogonality and completeness within `tol`.
    pub fn new(projectors: Vec<ComplexMatrix>, values: Vec<f64>, tol: f64) -> Result<Self> {
        let first = projectors
            .first()
            .ok_or_else(|| Error::InvalidMeasurement("no projectors".into()))?;
        if projectors.len() != values.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} projectors but {} values",
                projectors.len(),
                values.len()
            )));
        }
        let n = first.rows();
        if projectors.iter().any(|p| p.shape() != (n, n)) {
            return Err(Error::InvalidMeasurement("projectors differ in shape".into()));
        }
        let zero = ComplexMatrix::zeros(n, n);
        let mut total = ComplexMatrix::zeros(n, n);
        for (a, p) in projectors.iter().enumerate() {
            if p.hermitian_asymmetry() > tol {
                return Err(Error::InvalidMeasurement(format!("projector {a} is not Hermitian")));
            }
            for (b, q) in projectors.iter().enumerate() {
                let target = if a == b { p } else { &zero };
                if p.mul(q).frobenius_distance(target)? > tol {
                    return Err(Error::InvalidMeasurement(if a == b {
                        format!("projector {a} is not idempotent")
                    } else {
                        format!("projectors {a} and {b} are not orthogonal")
                    }));
                }
            }
            total.add_assign_unchecked(p);
        }
        if total.frobenius_distance(&ComplexMatrix::identity(n))? > tol {
            return Err(Error::InvalidMeasurement("projectors do not sum to the identity".into()));
        }
        Ok(Self { projectors, values })
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    /// The projectors as a Kraus set.
    pub fn as_channel(&self) -> KrausChannel {
        KrausChannel::from_trusted(self.projectors.clone())
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                op: "measurement",
                left: (self.dim(), self.dim()),
                right: (rho.dim(), rho.dim()),
            });
        }
        Ok(())
    }
}

/// Index ranges of ascending eigenvalues that lie within `cluster_tol` of the
/// first eigenvalue of their range.
fn spectral_clusters(eigenvalues: &[f64], cluster_tol: f64) -> Vec<Range<usize>> {
    let mut clusters = Vec::new();
    let mut start = 0;
    while start < eigenvalues.len() {
        let head = eigenvalues[start];
        let mut end = start + 1;
        while end < eigenvalues.len() && eigenvalues[end] - head <= cluster_tol {
            end += 1;
        }
        clusters.push(start..end);
        start = end;
    }
    clusters
}

/// Spectral projectors of `q`, one per eigenvalue cluster.
pub fn projectors_from_observable(q: &Observable, cluster_tol: f64) -> ProjectiveMeasurement {
    let eigen = &q.eigen;
    let n = q.dim();
    let mut projectors = Vec::new();
    let mut values = Vec::new();
    for cluster in spectral_clusters(&eigen.eigenvalues, cluster_tol) {
        let mut p = ComplexMatrix::zeros(n, n);
        for k in cluster.clone() {
            let v = eigen.eigenvectors.column(k);
            p.add_assign_unchecked(&ComplexMatrix::outer(&v, &v));
        }
        projectors.push(p);
        let members = &eigen.eigenvalues[cluster];
        values.push(members.iter().sum::<f64>() / members.len() as f64);
    }
    ProjectiveMeasurement { projectors, values }
}

/// `sum_n P_n rho P_n`.
pub fn measure_nonselective(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<DensityMatrix> {
    m.check_dim(rho)?;
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for p in &m.projectors {
        out.add_assign_unchecked(&p.congruence(rho.matrix()));
    }
    Ok(DensityMatrix::from_trusted(out))
}

fn born(p: &ComplexMatrix, rho: &ComplexMatrix) -> f64 {
    p.mul(rho).trace().expect("square").re
}

/// Born-rule probabilities `Tr(P_n rho)`, clamped to `[0, 1]` and normalized
/// by the trace of `rho`.
pub fn outcome_probabilities(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<Vec<f64>> {
    m.check_dim(rho)?;
    let raw: Vec<f64> = m
        .projectors
        .iter()
        .map(|p| born(p, rho.matrix()).clamp(0.0, 1.0))
        .collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|p| p / total).collect())
}

/// Conditions `rho` on outcome `outcome_index`: returns `(p, P rho P / p)`.
pub fn measure_selective(
    rho: &DensityMatrix,
    m: &ProjectiveMeasurement,
    outcome_index: usize,
) -> Result<(f64, DensityMatrix)> {
    m.check_dim(rho)?;
    let p = m.projectors.get(outcome_index).ok_or(Error::OutcomeIndex {
        index: outcome_index,
        count: m.len(),
    })?;
    let probability = born(p, rho.matrix());
    if probability <= PROBABILITY_FLOOR {
        return Err(Error::ZeroProbability {
            index: outcome_index,
            probability,
        });
    }
    let post = p.congruence(rho.matrix()).scale_real(1.0 / probability);
    Ok((probability, DensityMatrix::from_trusted(post)))
}

/// Signal-ancilla coupling followed by a projective readout of the ancilla.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedMeasurement {
    ancilla_state: DensityMatrix,
    interaction: ComplexMatrix,
    ancilla_observable: Observable,
}

impl GeneralizedMeasurement {
    pub fn new(
        ancilla_state: DensityMatrix,
        interaction: ComplexMatrix,
        ancilla_observable: Observable,
        tol: f64,
    ) -> Result<Self> {
        let dim_b = ancilla_state.dim();
        if ancilla_observable.dim() != dim_b {
            return Err(Error::DimensionMismatch {
                op: "generalized measurement (observable vs ancilla)",
                left: (dim_b, dim_b),
                right: ancilla_observable.matrix.shape(),
            });
        }
        if !interaction.is_square() || !interaction.rows().is_multiple_of(dim_b) {
            return Err(Error::CompositeDims {
                total: interaction.rows(),
                dim_a: interaction.rows() / dim_b,
                dim_b,
            });
        }
        interaction.require_unitary(tol)?;
        Ok(Self {
            ancilla_state,
            interaction,
            ancilla_observable,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.interaction.rows() / self.dim_b()
    }

    pub fn dim_b(&self) -> usize {
        self.ancilla_state.dim()
    }

    pub fn ancilla_state(&self) -> &DensityMatrix {
        &self.ancilla_state
    }

    pub fn interaction(&self) -> &ComplexMatrix {
        &self.interaction
    }

    pub fn ancilla_observable(&self) -> &Observable {
        &self.ancilla_observable
    }

    fn readout(&self) -> ProjectiveMeasurement {
        self.ancilla_observable.projective_measurement(DEFAULT_CLUSTER_TOL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub value: f64,
    pub probability: f64,
    /// `None` for outcomes at or below [`PROBABILITY_FLOOR`].
    pub post_state: Option<DensityMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub outcomes: Vec<Outcome>,
    pub nonselective_state: DensityMatrix,
}

impl MeasurementRecord {
    pub fn probabilities(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }
}

/// Couples `rho_a` to the ancilla, evolves, reads out the ancilla and
/// reports per-outcome probabilities and post-states on `A`.
pub fn generalized_measure(rho_a: &DensityMatrix, gm: &GeneralizedMeasurement) -> Result<MeasurementRecord> {
    let dim_a = gm.dim_a();
    let dim_b = gm.dim_b();
    if rho_a.dim() != dim_a {
        return Err(Error::DimensionMismatch {
            op: "generalized_measure",
            left: (dim_a, dim_a),
            right: (rho_a.dim(), rho_a.dim()),
        });
    }
    let joint = tensor_state(rho_a, &gm.ancilla_state);
    let evolved = gm.interaction.congruence(joint.matrix());
    let identity_a = ComplexMatrix::identity(dim_a);
    let readout = gm.readout();

    let mut outcomes = Vec::with_capacity(readout.len());
    let mut nonselective = ComplexMatrix::zeros(dim_a, dim_a);
    for (p_b, &value) in readout.projectors.iter().zip(&readout.values) {
        let lifted = identity_a.kron(p_b);
        let probability = born(&lifted, &evolved).clamp(0.0, 1.0);
        let post_state = (probability > PROBABILITY_FLOOR).then(|| {
            let conditional = lifted.congruence(&evolved).scale_real(1.0 / probability);
            partial_trace_matrix(&conditional, dim_a, dim_b, Subsystem::B)
        });
        if let Some(post) = &post_state {
            nonselective.add_assign_unchecked(&post.scale_real(probability));
        }
        outcomes.push(Outcome {
            value,
            probability,
            post_state: post_state.map(DensityMatrix::from_trusted),
        });
    }
    Ok(MeasurementRecord {
        outcomes,
        nonselective_state: DensityMatrix::from_trusted(nonselective),
    })
}

/// POVM element on `A` for one ancilla outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmEffect {
    /// Index into the ancilla readout outcomes (ascending eigenvalue order).
    pub outcome_index: usize,
    pub value: f64,
    pub effect: ComplexMatrix,
}

/// Effects `E_k = sum_j B_kj^dagger B_kj` with branch operators
/// `B_kj = sqrt(l_j) (I (x) <q_k|) U (I (x) |e_j>)`. Effects with negligible
/// trace (unreachable outcomes) are dropped.
pub fn extract_povm_effects(gm: &GeneralizedMeasurement) -> Result<Vec<PovmEffect>> {
    let dim_a = gm.dim_a();
    let spectrum = gm
        .ancilla_state
        .matrix()
        .hermitian_eigen(f64::INFINITY)
        .expect("density matrices are Hermitian");
    let observable = &gm.ancilla_observable.eigen;
    let clusters = spectral_clusters(&observable.eigenvalues, DEFAULT_CLUSTER_TOL);

    let mut effects = Vec::new();
    for (index, cluster) in clusters.into_iter().enumerate() {
        let members = &observable.eigenvalues[cluster.clone()];
        let value = members.iter().sum::<f64>() / members.len() as f64;
        let mut effect = ComplexMatrix::zeros(dim_a, dim_a);
        for (j, &weight) in spectrum.eigenvalues.iter().enumerate() {
            if weight <= BRANCH_WEIGHT_FLOOR {
                continue;
            }
            let ket = spectrum.eigenvectors.column(j);
            for k in cluster.clone() {
                let bra = observable.eigenvectors.column(k);
                let b = branch_operator(&gm.interaction, dim_a, &bra, &ket);
                effect.add_assign_unchecked(&b.adjoint().mul(&b).scale_real(weight));
            }
        }
        if effect.trace()?.re > PROBABILITY_FLOOR {
            effects.push(PovmEffect {
                outcome_index: index,
                value,
                effect: effect.hermitian_part(),
            });
        }
    }
    Ok(effects)
}

/// Convenience wrapper validating an interaction with the closure tolerance.
pub fn generalized_measurement(
    ancilla_state: DensityMatrix,
    interaction: ComplexMatrix,
    ancilla_observable: Observable,
) -> Result<GeneralizedMeasurement> {
    GeneralizedMeasurement::new(ancilla_state, interaction, ancilla_observable, CLOSURE_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex;
    use crate::random::{random_density, random_hermitian, random_unitary};
    use crate::signals::PureState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    fn sigma_z() -> Observable {
        Observable::new(ComplexMatrix::real_diagonal(&[1.0, -1.0]), 1e-12).unwrap()
    }

    fn sigma_x() -> Observable {
        Observable::new(r(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-12).unwrap()
    }

    fn cnot() -> ComplexMatrix {
        r(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    fn psi(a: f64, b: f64) -> DensityMatrix {
        PureState::new(vec![Complex::new(a, 0.0), Complex::new(b, 0.0)])
            .unwrap()
            .density()
    }

    fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.frobenius_distance(b).unwrap()
    }

    #[test]
    fn projector_examples() {
        let m = sigma_z().projective_measurement(DEFAULT_CLUSTER_TOL);
        assert_eq!(m.values(), &[-1.0, 1.0]);
        assert!(dist(&m.projectors()[0], &ComplexMatrix::real_diagonal(&[0.0, 1.0])) < 1e-15);
        assert!(dist(&m.projectors()[1], &ComplexMatrix::real_diagonal(&[1.0, 0.0])) < 1e-15);

        let id = Observable::new(ComplexMatrix::identity(2), 1e-12).unwrap();
        let m = id.projective_measurement(DEFAULT_CLUSTER_TOL);
        assert_eq!(m.len(), 1);
        assert!(dist(&m.projectors()[0], &ComplexMatrix::identity(2)) < 1e-15);

        let m = sigma_x().projective_measurement(DEFAULT_CLUSTER_TOL);
        assert!((m.values()[0] + 1.0).abs() < 1e-15 && (m.values()[1] - 1.0).abs() < 1e-15);
        assert!(dist(&m.projectors()[0], &r(&[&[0.5, -0.5], &[-0.5, 0.5]])) < 1e-15);
        assert!(dist(&m.projectors()[1], &r(&[&[0.5, 0.5], &[0.5, 0.5]])) < 1e-15);

        let rebuilt = ProjectiveMeasurement::new(m.projectors().to_vec(), m.values().to_vec(), 1e-12);
        assert!(rebuilt.is_ok());
        assert!(Observable::new(r(&[&[0.0, 1.0], &[0.0, 0.0]]), 1e-12).is_err());
    }

    #[test]
    fn projective_measurement_validation() {
        let p0 = ComplexMatrix::real_diagonal(&[1.0, 0.0]);
        assert!(ProjectiveMeasurement::new(vec![p0.clone()], vec![0.0], 1e-12).is_err());
        assert!(ProjectiveMeasurement::new(vec![p0.clone(), p0.clone()], vec![0.0, 1.0], 1e-12).is_err());
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(ProjectiveMeasurement::new(vec![half.clone(), half], vec![0.0, 1.0], 1e-12).is_err());
    }

    #[test]
    fn nonselective_examples() {
        let m = sigma_z().projective_measurement(DEFAULT_CLUSTER_TOL);
        let diag = DensityMatrix::new(ComplexMatrix::real_diagonal(&[0.3, 0.7]), 1e-12).unwrap();
        assert!(dist(measure_nonselective(&diag, &m).unwrap().matrix(), diag.matrix()) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let out = measure_nonselective(&psi(h, h), &m).unwrap();
        assert!(dist(out.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);

        let out = measure_nonselective(&psi(0.6, 0.8), &m).unwrap();
        assert!(dist(out.matrix(), &ComplexMatrix::real_diagonal(&[0.36, 0.64])) < 1e-15);
        assert!(measure_nonselective(&DensityMatrix::maximally_mixed(3), &m).is_err());
    }

    #[test]
    fn probability_examples() {
        let z = sigma_z().projective_measurement(DEFAULT_CLUSTER_TOL);
        assert_eq!(outcome_probabilities(&psi(1.0, 0.0), &z).unwrap(), vec![0.0, 1.0]);
        let x = sigma_x().projective_measurement(DEFAULT_CLUSTER_TOL);
        for m in [&z, &x] {
            let p = outcome_probabilities(&DensityMatrix::maximally_mixed(2), m).unwrap();
            assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        }
        let p = outcome_probabilities(&psi(0.6, 0.8), &z).unwrap();
        assert!((p[0] - 0.64).abs() < 1e-15 && (p[1] - 0.36).abs() < 1e-15);
    }

    #[test]
    fn selective_examples() {
        let z = sigma_z().projective_measurement(DEFAULT_CLUSTER_TOL);
        let zero = psi(1.0, 0.0);
        let (p, post) = measure_selective(&zero, &z, 1).unwrap();
        assert_eq!(p, 1.0);
        assert_eq!(post, zero);
        assert!(matches!(
            measure_selective(&zero, &z, 0),
            Err(Error::ZeroProbability { index: 0, .. })
        ));
        assert!(matches!(measure_selective(&zero, &z, 2), Err(Error::OutcomeIndex { .. })));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = psi(h, h);
        for (idx, basis) in [(0, [0.0, 1.0]), (1, [1.0, 0.0])] {
            let (p, post) = measure_selective(&plus, &z, idx).unwrap();
            assert!((p - 0.5).abs() < 1e-15);
            assert!(dist(post.matrix(), &ComplexMatrix::real_diagonal(&basis)) < 1e-15);
        }
    }

    #[test]
    fn degenerate_observable_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let u = random_unitary(4, &mut rng);
        let q = Observable::new(
            u.congruence(&ComplexMatrix::real_diagonal(&[2.0, -1.0, 2.0, 0.5])),
            1e-10,
        )
        .unwrap();
        let m = q.projective_measurement(DEFAULT_CLUSTER_TOL);
        assert_eq!(m.len(), 3);
        assert!((m.values()[2] - 2.0).abs() < 1e-12);
        assert!((m.projectors()[2].trace().unwrap().re - 2.0).abs() < 1e-12);
        assert!(ProjectiveMeasurement::new(m.projectors().to_vec(), m.values().to_vec(), 1e-10).is_ok());
    }

    #[test]
    fn generalized_without_interaction() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let rho = random_density(2, &mut rng);
        let gm = generalized_measurement(psi(1.0, 0.0), ComplexMatrix::identity(4), sigma_z()).unwrap();
        let record = generalized_measure(&rho, &gm).unwrap();
        assert_eq!(record.outcomes.len(), 2);
        assert_eq!(record.outcomes[0].probability, 0.0);
        assert!(record.outcomes[0].post_state.is_none());
        assert!((record.outcomes[1].probability - 1.0).abs() < 1e-15);
        let post = record.outcomes[1].post_state.as_ref().unwrap();
        assert!(dist(post.matrix(), rho.matrix()) < 1e-14);

        let effects = extract_povm_effects(&gm).unwrap();
        assert_eq!(effects.len(), 1);
        assert_eq!(effects[0].outcome_index, 1);
        assert!(dist(&effects[0].effect, &ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn cnot_ancilla_reads_out_sigma_z() {
        let gm = generalized_measurement(psi(1.0, 0.0), cnot(), sigma_z()).unwrap();
        let record = generalized_measure(&psi(0.6, 0.8), &gm).unwrap();
        // Ascending order: ancilla -1 (|1>) first.
        assert!((record.outcomes[0].probability - 0.64).abs() < 1e-15);
        assert!((record.outcomes[1].probability - 0.36).abs() < 1e-15);
        let post1 = record.outcomes[0].post_state.as_ref().unwrap();
        let post0 = record.outcomes[1].post_state.as_ref().unwrap();
        assert!(dist(post1.matrix(), &ComplexMatrix::real_diagonal(&[0.0, 1.0])) < 1e-14);
        assert!(dist(post0.matrix(), &ComplexMatrix::real_diagonal(&[1.0, 0.0])) < 1e-14);

        let effects = extract_povm_effects(&gm).unwrap();
        assert_eq!(effects.len(), 2);
        assert!(dist(&effects[0].effect, &ComplexMatrix::real_diagonal(&[0.0, 1.0])) < 1e-15);
        assert!(dist(&effects[1].effect, &ComplexMatrix::real_diagonal(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn povm_matches_pipeline_on_random_setups() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for (na, nb) in [(2, 2), (2, 3), (3, 2)] {
            let u = random_unitary(na * nb, &mut rng);
            let ancilla = random_density(nb, &mut rng);
            let q = Observable::new(random_hermitian(nb, &mut rng), 1e-12).unwrap();
            let gm = generalized_measurement(ancilla, u, q).unwrap();
            let effects = extract_povm_effects(&gm).unwrap();
            let mut total = ComplexMatrix::zeros(na, na);
            for e in &effects {
                total.add_assign_unchecked(&e.effect);
            }
            assert!(dist(&total, &ComplexMatrix::identity(na)) < 1e-10);
            for _ in 0..10 {
                let rho = random_density(na, &mut rng);
                let record = generalized_measure(&rho, &gm).unwrap();
                for e in &effects {
                    let p = e.effect.mul(rho.matrix()).trace().unwrap().re;
                    assert!((p - record.outcomes[e.outcome_index].probability).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn generalized_rejects_inconsistent_setups() {
        assert!(matches!(
            generalized_measurement(psi(1.0, 0.0), ComplexMatrix::identity(5), sigma_z()),
            Err(Error::CompositeDims { .. })
        ));
        assert!(matches!(
            generalized_measurement(psi(1.0, 0.0), ComplexMatrix::identity(4).scale_real(0.5), sigma_z()),
            Err(Error::NotUnitary { .. })
        ));
        let q3 = Observable::new(ComplexMatrix::identity(3), 1e-12).unwrap();
        assert!(generalized_measurement(psi(1.0, 0.0), ComplexMatrix::identity(4), q3).is_err());
        let gm = generalized_measurement(psi(1.0, 0.0), cnot(), sigma_z()).unwrap();
        assert!(generalized_measure(&DensityMatrix::maximally_mixed(3), &gm).is_err());
    }
}
