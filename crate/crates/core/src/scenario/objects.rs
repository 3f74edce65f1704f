//! Turns document payloads into validated numerical objects.

use std::collections::HashMap;

use super::document::{matrix_from_payload, complex_from_payload, ChannelSpec, ScenarioDocument, StateSpec};
use super::error::ScenarioError;
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::measurement::Observable;
use crate::signals::{DensityMatrix, Ensemble, PureState};
use crate::systems::{unitary_from_hamiltonian, Hamiltonian, KrausChannel, CLOSURE_TOLERANCE};

pub const DEFAULT_DELTA_TAU: f64 = 1.0;

#[derive(Clone, Debug)]
pub(crate) enum BuiltChannel {
    Kraus(KrausChannel),
    Hamiltonian { hamiltonian: Hamiltonian, delta_tau: f64 },
}

impl BuiltChannel {
    pub fn dim(&self) -> usize {
        match self {
            Self::Kraus(ch) => ch.dim(),
            Self::Hamiltonian { hamiltonian, .. } => hamiltonian.dim(),
        }
    }

    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, Self::Hamiltonian { .. })
    }

    pub fn channel(&self, delta_tau: Option<f64>) -> KrausChannel {
        match self {
            Self::Kraus(ch) => ch.clone(),
            Self::Hamiltonian { hamiltonian, delta_tau: default } => {
                unitary_from_hamiltonian(hamiltonian, delta_tau.unwrap_or(*default))
            }
        }
    }

    /// The single unitary this channel applies, if it is one.
    pub fn unitary(&self, delta_tau: Option<f64>) -> Option<ComplexMatrix> {
        match self {
            Self::Kraus(ch) => match ch.kraus() {
                [u] if u.unitarity_deviation() <= CLOSURE_TOLERANCE => Some(u.clone()),
                _ => None,
            },
            Self::Hamiltonian { hamiltonian, delta_tau: default } => {
                Some(hamiltonian.evolution_operator(delta_tau.unwrap_or(*default)))
            }
        }
    }
}

pub(crate) struct Objects {
    pub states: HashMap<String, DensityMatrix>,
    pub channels: HashMap<String, BuiltChannel>,
    pub observables: HashMap<String, Observable>,
}

/// Tolerance for text-supplied operators; never tighter than the closure default.
fn payload_tolerance(tol: f64) -> f64 {
    tol.max(CLOSURE_TOLERANCE)
}

pub(crate) fn build_state(spec: &StateSpec, tol: f64) -> Result<DensityMatrix> {
    match spec {
        StateSpec::Pure { amplitudes } => {
            Ok(PureState::new(amplitudes.iter().map(complex_from_payload).collect())?.density())
        }
        StateSpec::Ensemble { members } => {
            let members = members
                .iter()
                .map(|m| {
                    PureState::new(m.amplitudes.iter().map(complex_from_payload).collect())
                        .map(|s| (m.p, s))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Ensemble::new(members)?.density())
        }
        StateSpec::Density { matrix } => DensityMatrix::new(matrix_from_payload(matrix)?, tol),
    }
}

pub(crate) fn build_channel(spec: &ChannelSpec, tol: f64) -> Result<BuiltChannel> {
    match spec {
        ChannelSpec::Kraus { matrices } => {
            let matrices = matrices
                .iter()
                .map(matrix_from_payload)
                .collect::<Result<Vec<_>>>()?;
            Ok(BuiltChannel::Kraus(KrausChannel::new(matrices, payload_tolerance(tol))?))
        }
        ChannelSpec::Hamiltonian { matrix, delta_tau } => Ok(BuiltChannel::Hamiltonian {
            hamiltonian: Hamiltonian::new(matrix_from_payload(matrix)?, payload_tolerance(tol))?,
            delta_tau: delta_tau.unwrap_or(DEFAULT_DELTA_TAU),
        }),
    }
}

pub(crate) fn build_observable(matrix: &super::document::MatrixPayload, tol: f64) -> Result<Observable> {
    Observable::new(matrix_from_payload(matrix)?, payload_tolerance(tol))
}

pub(crate) fn build_objects(doc: &ScenarioDocument) -> std::result::Result<Objects, ScenarioError> {
    let tol = doc.settings.tolerance;
    let payload_error = |name: &str| {
        let name = name.to_string();
        move |source| ScenarioError::InvalidPayload { name, source }
    };
    let mut states = HashMap::new();
    for (name, spec) in doc.states.iter() {
        states.insert(name.to_string(), build_state(spec, tol).map_err(payload_error(name))?);
    }
    let mut channels = HashMap::new();
    for (name, spec) in doc.channels.iter() {
        channels.insert(name.to_string(), build_channel(spec, tol).map_err(payload_error(name))?);
    }
    let mut observables = HashMap::new();
    for (name, spec) in doc.observables.iter() {
        observables.insert(name.to_string(), build_observable(spec, tol).map_err(payload_error(name))?);
    }
    Ok(Objects {
        states,
        channels,
        observables,
    })
}
