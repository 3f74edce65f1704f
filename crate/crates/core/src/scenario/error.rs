use thiserror::Error;

use super::document::StepOp;
use crate::error::Error as CoreError;

/// Everything that can go wrong while loading or running a scenario.
///
/// All variants except [`ScenarioError::Runtime`] are raised before any step
/// executes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("step {step}: unknown op {op:?}")]
    UnknownOp { step: usize, op: String },

    #[error("duplicate {namespace} name {name:?}")]
    DuplicateName { namespace: &'static str, name: String },

    #[error("step {step}: undefined reference {name:?}")]
    UndefinedReference { step: usize, name: String },

    #[error("{context}: {detail}")]
    Dimension { context: String, detail: String },

    #[error("invalid payload in {name:?}: {source}")]
    InvalidPayload {
        name: String,
        #[source]
        source: CoreError,
    },

    #[error("step {step}: {detail}")]
    InvalidStep { step: usize, detail: String },

    #[error("invalid settings: {detail}")]
    InvalidSettings { detail: String },

    #[error("step {step} ({op}) failed: {source}")]
    Runtime {
        step: usize,
        op: StepOp,
        #[source]
        source: CoreError,
    },
}

impl ScenarioError {
    /// Stable machine-readable category name.
    pub fn category(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "syntax",
            Self::UnknownOp { .. } => "unknown_op",
            Self::DuplicateName { .. } => "duplicate_name",
            Self::UndefinedReference { .. } => "undefined_reference",
            Self::Dimension { .. } => "dimension",
            Self::InvalidPayload { .. } => "invalid_payload",
            Self::InvalidStep { .. } => "invalid_step",
            Self::InvalidSettings { .. } => "invalid_settings",
            Self::Runtime { .. } => "runtime",
        }
    }

    pub fn is_runtime(&self) -> bool {
        matches!(self, Self::Runtime { .. })
    }
}

impl From<serde_json::Error> for ScenarioError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; keep the bare message.
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(pos) => message[..pos].to_string(),
            None => message,
        };
        Self::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}
