//! Declarative JSON scenarios.
//!
//! A scenario names states, channels and observables, then lists pipeline
//! steps that consume and bind them. [`parse_scenario`] checks the whole
//! document (names, dimensions, payload invariants) before anything runs;
//! [`run_pipeline`] executes it and [`format_report`] renders the result.
//!
//! ```
//! use qsignals::scenario::{parse_scenario, run_pipeline};
//!
//! let doc = parse_scenario(br#"{
//!     "states": { "psi": { "kind": "pure", "amplitudes": [[1, 0], [0, 0]] } },
//!     "channels": { "id": { "kind": "kraus", "matrices": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]] } },
//!     "pipeline": [ { "op": "apply", "inputs": ["id", "psi"], "as": "out" } ]
//! }"#).unwrap();
//! let report = run_pipeline(&doc).unwrap();
//! assert_eq!(report.steps[0].trace, Some(1.0));
//! ```

mod document;
mod error;
mod objects;
mod pipeline;
mod report;
mod validate;

pub use document::{
    complex_from_payload, matrix_from_payload, payload_from_complex, payload_from_matrix,
    ChannelSpec, ComplexPayload, EnsembleMember, MatrixPayload, NamedMap, PipelineStep,
    ScenarioDocument, Settings, StateSpec, StepOp, StepParams,
};
pub use error::ScenarioError;
pub use objects::DEFAULT_DELTA_TAU;
pub use pipeline::{run_pipeline, Report, StepReport};
pub use report::{format_complex, format_real, format_report, ReportFormat};
pub use validate::{parse_scenario, parse_scenario_with, ParseOptions, MAX_PRECISION};

/// Pretty-printed JSON that [`parse_scenario`] reads back to an equal document.
pub fn serialize_scenario(doc: &ScenarioDocument) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("documents serialize");
    out.push(b'\n');
    out
}
