//! Static checking: a dry run of the pipeline over shapes only.

use std::collections::HashMap;

use super::document::{
    PipelineStep, RawDocument, RawStep, ScenarioDocument, StepOp, StepParams,
};
use super::error::ScenarioError;
use super::objects::{build_objects, BuiltChannel, Objects};
use crate::composite::Subsystem;
use crate::measurement::DEFAULT_CLUSTER_TOL;

/// Largest accepted `output_precision`.
pub const MAX_PRECISION: usize = 17;

/// Command-line style overrides applied on top of a document's settings.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParseOptions {
    pub tolerance: Option<f64>,
    pub precision: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Shape {
    Density(usize),
    Composite(usize, usize),
    Verdict,
}

impl Shape {
    fn describe(self) -> String {
        match self {
            Self::Density(n) => format!("{n}x{n} state"),
            Self::Composite(a, b) => format!("{a}x{b} composite"),
            Self::Verdict => "verdict".to_string(),
        }
    }
}

/// Parses and validates a scenario.
pub fn parse_scenario(bytes: &[u8]) -> Result<ScenarioDocument, ScenarioError> {
    parse_scenario_with(bytes, ParseOptions::default())
}

/// Like [`parse_scenario`], with settings overrides applied before validation.
pub fn parse_scenario_with(bytes: &[u8], options: ParseOptions) -> Result<ScenarioDocument, ScenarioError> {
    let raw: RawDocument = serde_json::from_slice(bytes)?;
    let pipeline = raw
        .pipeline
        .into_iter()
        .enumerate()
        .map(|(i, step)| convert_step(i, step))
        .collect::<Result<Vec<_>, _>>()?;
    let mut doc = ScenarioDocument {
        settings: raw.settings,
        states: raw.states,
        channels: raw.channels,
        observables: raw.observables,
        pipeline,
    };
    if let Some(tol) = options.tolerance {
        doc.settings.tolerance = tol;
    }
    if let Some(precision) = options.precision {
        doc.settings.output_precision = precision;
    }
    check_document(&doc)?;
    Ok(doc)
}

fn convert_step(index: usize, raw: RawStep) -> Result<PipelineStep, ScenarioError> {
    let op = raw.op.parse().map_err(|()| ScenarioError::UnknownOp {
        step: index,
        op: raw.op.clone(),
    })?;
    Ok(PipelineStep {
        op,
        inputs: raw.inputs,
        params: raw.params,
        binding: raw.binding,
    })
}

/// Validates a document and builds its named objects.
pub(crate) fn check_document(doc: &ScenarioDocument) -> Result<Objects, ScenarioError> {
    let settings = &doc.settings;
    if !(settings.tolerance.is_finite() && settings.tolerance > 0.0) {
        return Err(ScenarioError::InvalidSettings {
            detail: format!("tolerance must be positive and finite, got {:e}", settings.tolerance),
        });
    }
    if settings.output_precision > MAX_PRECISION {
        return Err(ScenarioError::InvalidSettings {
            detail: format!(
                "output_precision must be at most {MAX_PRECISION}, got {}",
                settings.output_precision
            ),
        });
    }
    let duplicates = [
        ("state", doc.states.first_duplicate()),
        ("channel", doc.channels.first_duplicate()),
        ("observable", doc.observables.first_duplicate()),
    ];
    for (namespace, name) in duplicates {
        if let Some(name) = name {
            return Err(ScenarioError::DuplicateName {
                namespace,
                name: name.to_string(),
            });
        }
    }

    let objects = build_objects(doc)?;
    let mut checker = Checker {
        objects: &objects,
        env: objects
            .states
            .iter()
            .map(|(name, rho)| (name.clone(), Shape::Density(rho.dim())))
            .collect(),
    };
    for (index, step) in doc.pipeline.iter().enumerate() {
        checker.step(index, step)?;
    }
    Ok(objects)
}

fn allowed_params(op: StepOp) -> &'static [&'static str] {
    match op {
        StepOp::Apply | StepOp::Tensor => &[],
        StepOp::Evolve | StepOp::Gmeasure => &["delta_tau"],
        StepOp::Ptrace => &["over"],
        StepOp::Measure => &["outcome", "cluster_tol"],
        StepOp::ProductTest | StepOp::Validate => &["tolerance"],
    }
}

fn arity(op: StepOp) -> usize {
    match op {
        StepOp::Apply | StepOp::Evolve | StepOp::Tensor | StepOp::Measure => 2,
        StepOp::Gmeasure => 4,
        StepOp::Ptrace | StepOp::ProductTest | StepOp::Validate => 1,
    }
}

fn positive(value: Option<f64>) -> bool {
    value.is_none_or(|v| v.is_finite() && v > 0.0)
}

struct Checker<'a> {
    objects: &'a Objects,
    env: HashMap<String, Shape>,
}

impl Checker<'_> {
    fn step(&mut self, index: usize, step: &PipelineStep) -> Result<(), ScenarioError> {
        let invalid = |detail: String| ScenarioError::InvalidStep { step: index, detail };
        let op = step.op;
        if step.inputs.len() != arity(op) {
            return Err(invalid(format!(
                "{op} takes {} inputs, got {}",
                arity(op),
                step.inputs.len()
            )));
        }
        let allowed = allowed_params(op);
        if let Some(bad) = step.params.present().into_iter().find(|p| !allowed.contains(p)) {
            return Err(invalid(format!("{op} does not accept parameter {bad:?}")));
        }
        check_param_values(&step.params).map_err(invalid)?;

        let shape = self.output_shape(index, step)?;
        if let Some(name) = &step.binding {
            if self.env.contains_key(name) {
                return Err(invalid(format!("binding {name:?} already exists")));
            }
            self.env.insert(name.clone(), shape);
        }
        Ok(())
    }

    fn output_shape(&self, index: usize, step: &PipelineStep) -> Result<Shape, ScenarioError> {
        let op = step.op;
        let inputs = &step.inputs;
        let invalid = |detail: String| ScenarioError::InvalidStep { step: index, detail };
        let dimension = |detail: String| ScenarioError::Dimension {
            context: format!("step {index} ({op})"),
            detail,
        };

        match op {
            StepOp::Apply | StepOp::Evolve => {
                let channel = self.channel(index, &inputs[0])?;
                let shape = self.state(index, &inputs[1])?;
                if op == StepOp::Evolve {
                    if step.params.delta_tau.is_some() && !channel.is_hamiltonian() {
                        return Err(invalid("delta_tau requires a hamiltonian channel".into()));
                    }
                    if channel.unitary(None).is_none() {
                        return Err(invalid(format!(
                            "channel {:?} is not a hamiltonian or a single unitary",
                            inputs[0]
                        )));
                    }
                }
                let n = match shape {
                    Shape::Density(n) => n,
                    Shape::Composite(a, b) => a * b,
                    Shape::Verdict => return Err(invalid(format!("{:?} is a verdict", inputs[1]))),
                };
                if channel.dim() != n {
                    return Err(dimension(format!(
                        "channel {:?} acts on dimension {}, state {:?} is a {}",
                        inputs[0],
                        channel.dim(),
                        inputs[1],
                        shape.describe()
                    )));
                }
                Ok(shape)
            }
            StepOp::Tensor => {
                let a = self.density(index, &inputs[0])?;
                let b = self.density(index, &inputs[1])?;
                Ok(Shape::Composite(a, b))
            }
            StepOp::Ptrace => {
                let (a, b) = self.composite(index, &inputs[0])?;
                let over = step
                    .params
                    .over
                    .as_deref()
                    .ok_or_else(|| invalid("ptrace requires parameter \"over\"".into()))?;
                match over.parse::<Subsystem>().map_err(|_| invalid(format!("bad subsystem {over:?}")))? {
                    Subsystem::A => Ok(Shape::Density(b)),
                    Subsystem::B => Ok(Shape::Density(a)),
                }
            }
            StepOp::Measure => {
                let observable = self.observable(index, &inputs[0])?;
                let n = self.density(index, &inputs[1])?;
                if observable.dim() != n {
                    return Err(dimension(format!(
                        "observable {:?} has dimension {}, state {:?} has {n}",
                        inputs[0],
                        observable.dim(),
                        inputs[1]
                    )));
                }
                if let Some(outcome) = step.params.outcome {
                    let cluster_tol = step.params.cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL);
                    let count = observable.projective_measurement(cluster_tol).len();
                    if outcome >= count {
                        return Err(invalid(format!(
                            "outcome {outcome} out of range for {count} outcomes"
                        )));
                    }
                }
                Ok(Shape::Density(n))
            }
            StepOp::Gmeasure => {
                let a = self.density(index, &inputs[0])?;
                let b = self.density(index, &inputs[1])?;
                let channel = self.channel(index, &inputs[2])?;
                let observable = self.observable(index, &inputs[3])?;
                if step.params.delta_tau.is_some() && !channel.is_hamiltonian() {
                    return Err(invalid("delta_tau requires a hamiltonian channel".into()));
                }
                if channel.unitary(None).is_none() {
                    return Err(invalid(format!(
                        "interaction {:?} is not a hamiltonian or a single unitary",
                        inputs[2]
                    )));
                }
                if channel.dim() != a * b {
                    return Err(dimension(format!(
                        "interaction {:?} has dimension {}, expected {a}x{b} = {}",
                        inputs[2],
                        channel.dim(),
                        a * b
                    )));
                }
                if observable.dim() != b {
                    return Err(dimension(format!(
                        "observable {:?} has dimension {}, ancilla has {b}",
                        inputs[3],
                        observable.dim()
                    )));
                }
                Ok(Shape::Density(a))
            }
            StepOp::ProductTest => {
                self.composite(index, &inputs[0])?;
                Ok(Shape::Verdict)
            }
            StepOp::Validate => {
                let name = &inputs[0];
                match (self.env.get(name), self.objects.channels.contains_key(name)) {
                    (Some(_), true) => Err(invalid(format!(
                        "{name:?} names both a state and a channel"
                    ))),
                    (Some(Shape::Verdict), false) => Err(invalid(format!("{name:?} is a verdict"))),
                    (Some(_), false) | (None, true) => Ok(Shape::Verdict),
                    (None, false) => Err(undefined(index, name)),
                }
            }
        }
    }

    fn state(&self, index: usize, name: &str) -> Result<Shape, ScenarioError> {
        self.env.get(name).copied().ok_or_else(|| undefined(index, name))
    }

    fn density(&self, index: usize, name: &str) -> Result<usize, ScenarioError> {
        match self.state(index, name)? {
            Shape::Density(n) => Ok(n),
            other => Err(ScenarioError::InvalidStep {
                step: index,
                detail: format!("{name:?} is a {}, expected a state", other.describe()),
            }),
        }
    }

    fn composite(&self, index: usize, name: &str) -> Result<(usize, usize), ScenarioError> {
        match self.state(index, name)? {
            Shape::Composite(a, b) => Ok((a, b)),
            other => Err(ScenarioError::InvalidStep {
                step: index,
                detail: format!("{name:?} is a {}, expected a composite", other.describe()),
            }),
        }
    }

    fn channel(&self, index: usize, name: &str) -> Result<&BuiltChannel, ScenarioError> {
        self.objects.channels.get(name).ok_or_else(|| undefined(index, name))
    }

    fn observable(&self, index: usize, name: &str) -> Result<&crate::measurement::Observable, ScenarioError> {
        self.objects.observables.get(name).ok_or_else(|| undefined(index, name))
    }
}

fn undefined(step: usize, name: &str) -> ScenarioError {
    ScenarioError::UndefinedReference {
        step,
        name: name.to_string(),
    }
}

fn check_param_values(params: &StepParams) -> Result<(), String> {
    if !positive(params.cluster_tol) {
        return Err("cluster_tol must be positive and finite".into());
    }
    if !positive(params.tolerance) {
        return Err("tolerance must be positive and finite".into());
    }
    if params.delta_tau.is_some_and(|t| !t.is_finite()) {
        return Err("delta_tau must be finite".into());
    }
    Ok(())
}
