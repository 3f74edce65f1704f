use std::collections::HashMap;

use super::document::{PipelineStep, ScenarioDocument, Settings, StepOp};
use super::error::ScenarioError;
use super::objects::Objects;
use super::validate::check_document;
use crate::composite::{apply_global_unitary, is_product_state, CompositeDensity, Subsystem};
use crate::error::Result as CoreResult;
use crate::linalg::ComplexMatrix;
use crate::measurement::{
    generalized_measure, measure_nonselective, measure_selective, outcome_probabilities,
    projectors_from_observable, GeneralizedMeasurement, DEFAULT_CLUSTER_TOL,
};
use crate::signals::DensityMatrix;
use crate::systems::{KrausChannel, CLOSURE_TOLERANCE};

/// One entry per executed step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub id: usize,
    pub op: StepOp,
    pub binding: Option<String>,
    pub output: Option<ComplexMatrix>,
    pub trace: Option<f64>,
    pub purity: Option<f64>,
    pub probabilities: Option<Vec<f64>>,
    pub verdict: Option<bool>,
}

impl StepReport {
    fn new(id: usize, step: &PipelineStep) -> Self {
        Self {
            id,
            op: step.op,
            binding: step.binding.clone(),
            output: None,
            trace: None,
            purity: None,
            probabilities: None,
            verdict: None,
        }
    }

    fn with_state(mut self, rho: &DensityMatrix) -> Self {
        self.output = Some(rho.matrix().clone());
        self.trace = Some(rho.trace());
        self.purity = Some(rho.purity());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub steps: Vec<StepReport>,
    pub settings: Settings,
}

impl Report {
    pub fn empty(settings: Settings) -> Self {
        Self {
            steps: Vec::new(),
            settings,
        }
    }
}

#[derive(Clone, Debug)]
enum Value {
    Density(DensityMatrix),
    Composite(CompositeDensity),
    Verdict,
}

/// Validates `doc`, then executes its steps in order.
pub fn run_pipeline(doc: &ScenarioDocument) -> Result<Report, ScenarioError> {
    let objects = check_document(doc)?;
    let mut env: HashMap<String, Value> = objects
        .states
        .iter()
        .map(|(name, rho)| (name.clone(), Value::Density(rho.clone())))
        .collect();
    let mut report = Report::empty(doc.settings.clone());
    for (index, step) in doc.pipeline.iter().enumerate() {
        let (entry, value) = execute(index, step, &objects, &env, &doc.settings).map_err(|source| {
            ScenarioError::Runtime {
                step: index,
                op: step.op,
                source,
            }
        })?;
        if let Some(name) = &step.binding {
            env.insert(name.clone(), value);
        }
        report.steps.push(entry);
    }
    Ok(report)
}

fn density<'a>(env: &'a HashMap<String, Value>, name: &str) -> &'a DensityMatrix {
    match env.get(name) {
        Some(Value::Density(rho)) => rho,
        _ => unreachable!("checked before execution"),
    }
}

fn composite<'a>(env: &'a HashMap<String, Value>, name: &str) -> &'a CompositeDensity {
    match env.get(name) {
        Some(Value::Composite(rho)) => rho,
        _ => unreachable!("checked before execution"),
    }
}

fn execute(
    index: usize,
    step: &PipelineStep,
    objects: &Objects,
    env: &HashMap<String, Value>,
    settings: &Settings,
) -> CoreResult<(StepReport, Value)> {
    let entry = StepReport::new(index, step);
    let inputs = &step.inputs;
    let params = &step.params;
    let channel = |i: usize| &objects.channels[&inputs[i]];
    let observable = |i: usize| &objects.observables[&inputs[i]];

    let out = match step.op {
        StepOp::Apply | StepOp::Evolve => {
            let built = channel(0);
            let map = if step.op == StepOp::Apply {
                built.channel(None)
            } else {
                let u = built.unitary(params.delta_tau).expect("checked before execution");
                KrausChannel::from_trusted(vec![u])
            };
            match &env[&inputs[1]] {
                Value::Density(rho) => {
                    let out = map.apply(rho)?;
                    (entry.with_state(&out), Value::Density(out))
                }
                Value::Composite(rho) => {
                    let out = match step.op {
                        StepOp::Evolve => apply_global_unitary(&map.kraus()[0], rho)?,
                        _ => CompositeDensity::from_trusted(
                            map.apply_matrix(rho.matrix())?,
                            rho.dim_a(),
                            rho.dim_b(),
                        ),
                    };
                    (entry.with_state(out.state()), Value::Composite(out))
                }
                Value::Verdict => unreachable!("checked before execution"),
            }
        }
        StepOp::Tensor => {
            let out = crate::composite::tensor_state(density(env, &inputs[0]), density(env, &inputs[1]));
            (entry.with_state(out.state()), Value::Composite(out))
        }
        StepOp::Ptrace => {
            let over: Subsystem = params
                .over
                .as_deref()
                .and_then(|s| s.parse().ok())
                .expect("checked before execution");
            let out = composite(env, &inputs[0]).partial_trace(over);
            (entry.with_state(&out), Value::Density(out))
        }
        StepOp::Measure => {
            let rho = density(env, &inputs[1]);
            let m = projectors_from_observable(
                observable(0),
                params.cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL),
            );
            let probabilities = outcome_probabilities(rho, &m)?;
            let out = match params.outcome {
                Some(k) => measure_selective(rho, &m, k)?.1,
                None => measure_nonselective(rho, &m)?,
            };
            let mut entry = entry.with_state(&out);
            entry.probabilities = Some(probabilities);
            (entry, Value::Density(out))
        }
        StepOp::Gmeasure => {
            let u = channel(2)
                .unitary(params.delta_tau)
                .expect("checked before execution");
            let gm = GeneralizedMeasurement::new(
                density(env, &inputs[1]).clone(),
                u,
                observable(3).clone(),
                CLOSURE_TOLERANCE,
            )?;
            let record = generalized_measure(density(env, &inputs[0]), &gm)?;
            let mut entry = entry.with_state(&record.nonselective_state);
            entry.probabilities = Some(record.probabilities());
            (entry, Value::Density(record.nonselective_state))
        }
        StepOp::ProductTest => {
            let tol = params.tolerance.unwrap_or(settings.tolerance);
            let verdict = is_product_state(composite(env, &inputs[0]), tol).is_product;
            let mut entry = entry;
            entry.verdict = Some(verdict);
            (entry, Value::Verdict)
        }
        StepOp::Validate => {
            let tol = params.tolerance.unwrap_or(settings.tolerance);
            let name = &inputs[0];
            let (mut entry, verdict) = match env.get(name) {
                Some(Value::Density(rho)) => (entry.with_state(rho), rho.validate(tol).passed()),
                Some(Value::Composite(rho)) => {
                    (entry.with_state(rho.state()), rho.state().validate(tol).passed())
                }
                _ => {
                    let ch = objects.channels[name].channel(None);
                    (entry, ch.closure_deviation() <= tol.max(CLOSURE_TOLERANCE))
                }
            };
            entry.verdict = Some(verdict);
            (entry, Value::Verdict)
        }
    };
    Ok(out)
}
