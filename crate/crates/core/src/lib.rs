//! Quantum information processing as signals and systems.
//!
//! Density matrices are the signals, Kraus channels are the systems. On top
//! of that sit bipartite composites (tensor products, partial traces, the
//! reduced dynamics of an open subsystem) and measurement, both projective
//! and ancilla-based. The [`scenario`] module runs declarative JSON pipelines
//! over all of it.

pub mod composite;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod random;
pub mod scenario;
pub mod signals;
pub mod systems;

pub use composite::{
    apply_global_unitary, apply_local_channels, derive_open_system_kraus, is_product_state,
    lift_channels, partial_trace, tensor_state, CompositeDensity, OpenSystemKraus, ProductTest,
    Subsystem,
};
pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix, HermitianEigen};
pub use measurement::{
    extract_povm_effects, generalized_measure, measure_nonselective, measure_selective,
    outcome_probabilities, projectors_from_observable, GeneralizedMeasurement, MeasurementRecord,
    Observable, Outcome, PovmEffect, ProjectiveMeasurement,
};
pub use signals::{
    density_from_ensemble, density_from_pure, purity, validate_density, DensityMatrix, Ensemble,
    PureState, ValidationReport,
};
pub use systems::{
    apply_channel, channel_from_kraus, compose, is_unitary_channel, random_channel,
    unitary_from_hamiltonian, Hamiltonian, KrausChannel,
};

/// Comparison tolerance for validated objects.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
