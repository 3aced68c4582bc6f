//! Problem descriptions (JSON, strict schema).

use serde::{Deserialize, Serialize};

pub const SPEC_VERSION: &str = "1";
pub const DEFAULT_KMAX: usize = 8;
pub const DEFAULT_DEGREE: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    pub task: TaskSpec,
}

/// `V = ℂ^{even|odd}`; the even part splits as `ℝ^{n1} × ℂ^{n2}` for mixed
/// questions (default: totally real).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub even: usize,
    pub odd: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Builtin(BuiltinSpec),
    /// Span of the given matrices (rows of scalar strings) in `gl(V)`.
    Custom(Vec<Vec<Vec<String>>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub name: BuiltinName,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinName {
    /// `gl(V)`.
    Gl,
    /// `osp(V, J)` for the standard even form on `ℂ^{m|2n}`.
    Osp,
    /// `p(V, J)` for the standard odd form on `ℂ^{n|n}`.
    P,
    /// The spinor superization, `params = [p, q]`.
    SpinW,
}

/// Mixed data by even generators (vectors of scalar strings); the odd part
/// is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedSpec {
    pub real: Vec<Vec<String>>,
    #[serde(default)]
    pub complex: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    Prolong {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kmax: Option<usize>,
    },
    FiniteType {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kmax: Option<usize>,
    },
    Admissible {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kmax: Option<usize>,
        /// Defaults to the model structure given by `space.n1`, `space.n2`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mixed: Option<MixedSpec>,
    },
    H02 {},
    Killing {
        /// Frame fields, one expression per field.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frame: Option<Vec<String>>,
        /// Constant even metric (rows of scalar strings).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        metric: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<u32>,
    },
    Flow {
        field: String,
        t_span: [f64; 2],
        bodies: Vec<Vec<f64>>,
        steps: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
    Decompose {
        params: usize,
        /// Images of `x1.., th1..` in terms of `p1..`, `x1..`, `th1..`.
        images: Vec<String>,
    },
    Check {},
}

impl TaskSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TaskSpec::Prolong { .. } => "prolong",
            TaskSpec::FiniteType { .. } => "finite-type",
            TaskSpec::Admissible { .. } => "admissible",
            TaskSpec::H02 {} => "h02",
            TaskSpec::Killing { .. } => "killing",
            TaskSpec::Flow { .. } => "flow",
            TaskSpec::Decompose { .. } => "decompose",
            TaskSpec::Check {} => "check",
        }
    }
}

impl ProblemSpec {
    pub fn from_json(src: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    /// The spec behind a bare `check`.
    pub fn check() -> Self {
        Self { version: SPEC_VERSION.into(), space: None, algebra: None, task: TaskSpec::Check {} }
    }
}
