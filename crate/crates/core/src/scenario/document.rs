use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{Complex, ComplexMatrix};
use crate::DEFAULT_TOLERANCE;

/// A complex number as `[re, im]`.
pub type ComplexPayload = [f64; 2];

/// Row-major rows of `[re, im]` pairs.
pub type MatrixPayload = Vec<Vec<ComplexPayload>>;

pub fn complex_from_payload(z: &ComplexPayload) -> Complex {
    Complex::new(z[0], z[1])
}

pub fn payload_from_complex(z: Complex) -> ComplexPayload {
    [z.re, z.im]
}

pub fn matrix_from_payload(rows: &MatrixPayload) -> crate::Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex>> = rows
        .iter()
        .map(|r| r.iter().map(complex_from_payload).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

pub fn payload_from_matrix(m: &ComplexMatrix) -> MatrixPayload {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(payload_from_complex).collect())
        .collect()
}

/// Insertion-ordered name -> value map that keeps duplicate keys so they can
/// be reported instead of silently overwritten.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedMap<T>(Vec<(String, T)>);

impl<T> Default for NamedMap<T> {
    fn default() -> Self {
        Self(Vec::new())
    }
}

impl<T> NamedMap<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    /// Appends without checking for an existing entry.
    pub fn push(&mut self, name: impl Into<String>, value: T) {
        self.0.push((name.into(), value));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.0.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First name that appears more than once.
    pub fn first_duplicate(&self) -> Option<&str> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, (n, _))| self.0[..*i].iter().any(|(m, _)| m == n))
            .map(|(_, (n, _))| n.as_str())
    }
}

impl<T: Serialize> Serialize for NamedMap<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for NamedMap<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MapVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for MapVisitor<T> {
            type Value = NamedMap<T>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object of named entries")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, T>()? {
                    entries.push((k, v));
                }
                Ok(NamedMap(entries))
            }
        }

        deserializer.deserialize_map(MapVisitor(PhantomData))
    }
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_precision() -> usize {
    6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_precision")]
    pub output_precision: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerance: default_tolerance(),
            output_precision: default_precision(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleMember {
    pub p: f64,
    pub amplitudes: Vec<ComplexPayload>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Pure { amplitudes: Vec<ComplexPayload> },
    Ensemble { members: Vec<EnsembleMember> },
    Density { matrix: MatrixPayload },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelSpec {
    Kraus {
        matrices: Vec<MatrixPayload>,
    },
    Hamiltonian {
        matrix: MatrixPayload,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta_tau: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepOp {
    Apply,
    Evolve,
    Tensor,
    Ptrace,
    Measure,
    Gmeasure,
    ProductTest,
    Validate,
}

impl StepOp {
    pub const ALL: [StepOp; 8] = [
        Self::Apply,
        Self::Evolve,
        Self::Tensor,
        Self::Ptrace,
        Self::Measure,
        Self::Gmeasure,
        Self::ProductTest,
        Self::Validate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Apply => "apply",
            Self::Evolve => "evolve",
            Self::Tensor => "tensor",
            Self::Ptrace => "ptrace",
            Self::Measure => "measure",
            Self::Gmeasure => "gmeasure",
            Self::ProductTest => "product_test",
            Self::Validate => "validate",
        }
    }
}

impl FromStr for StepOp {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Self::ALL.into_iter().find(|op| op.as_str() == s).ok_or(())
    }
}

impl fmt::Display for StepOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StepOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Op-specific parameters; which ones an op accepts is checked at parse time.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl StepParams {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub(crate) fn present(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.over.is_some() {
            names.push("over");
        }
        if self.outcome.is_some() {
            names.push("outcome");
        }
        if self.cluster_tol.is_some() {
            names.push("cluster_tol");
        }
        if self.delta_tau.is_some() {
            names.push("delta_tau");
        }
        if self.tolerance.is_some() {
            names.push("tolerance");
        }
        names
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineStep {
    pub op: StepOp,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "StepParams::is_empty")]
    pub params: StepParams,
    #[serde(rename = "as", skip_serializing_if = "Option::is_none")]
    pub binding: Option<String>,
}

/// A parsed and validated scenario.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScenarioDocument {
    pub settings: Settings,
    pub states: NamedMap<StateSpec>,
    pub channels: NamedMap<ChannelSpec>,
    pub observables: NamedMap<MatrixPayload>,
    pub pipeline: Vec<PipelineStep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawStep {
    pub op: String,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub params: StepParams,
    #[serde(rename = "as", default)]
    pub binding: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawDocument {
    #[serde(default)]
    pub settings: Settings,
    #[serde(default)]
    pub states: NamedMap<StateSpec>,
    #[serde(default)]
    pub channels: NamedMap<ChannelSpec>,
    #[serde(default)]
    pub observables: NamedMap<MatrixPayload>,
    #[serde(default)]
    pub pipeline: Vec<RawStep>,
}
