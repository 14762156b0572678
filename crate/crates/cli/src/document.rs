//! Input and output documents. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};
use spinpoly::rational::{self, Rational};
use spinpoly::{CorrelationMatrix, Error};

pub fn rat_str(r: &Rational) -> String {
    rational::format(r)
}

pub fn rat_strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

/// A correlation matrix by its upper triangle in `(1,2), (1,3), …` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub upper: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &CorrelationMatrix) -> Self {
        Self {
            n: m.n(),
            upper: rat_strs(m.upper()),
            label: None,
            seed: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed matrix document: {e}"))
    }

    pub fn to_matrix(&self) -> Result<CorrelationMatrix, Error> {
        let upper = self
            .upper
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        CorrelationMatrix::new(self.n, upper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Success, member, or satisfied.
    Ok,
    /// A well-formed negative answer.
    Negative,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Error => 2,
        }
    }
}

/// The single document written to standard output per invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub sign: Vec<i8>,
    pub upper: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticesResult {
    pub n: usize,
    pub count: usize,
    pub vertices: Vec<VertexEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityEntry {
    /// One-based indices `i < j < k`.
    pub triple: [usize; 3],
    pub signs: [i8; 3],
    /// Coefficients on `σ_ij`, `σ_ik`, `σ_jk`.
    pub coefficients: [i8; 3],
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BellsResult {
    pub n: usize,
    pub count: usize,
    pub inequalities: Vec<InequalityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub n: usize,
    pub checked: usize,
    pub satisfied: bool,
    pub violated: Vec<InequalityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberResult {
    pub n: usize,
    pub member: bool,
    /// Class weights, one per vertex in `vertices` order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    /// Farkas vector over the rows `(σ, 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub atom: Vec<i8>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizeResult {
    pub n: usize,
    pub realizable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<AtomEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarycentricResult {
    pub moment: Vec<String>,
    pub bell_values: Vec<String>,
    pub lambda: Vec<String>,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceEntry {
    pub offset: String,
    pub normal: Vec<String>,
    /// The matching Bell inequality, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bell: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EqualityEntry {
    pub offset: String,
    pub normal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetsResult {
    pub n: usize,
    pub dim: usize,
    pub hull_dim: usize,
    pub count: usize,
    pub bell_count: usize,
    pub halfspaces: Vec<HalfSpaceEntry>,
    pub affine_equalities: Vec<EqualityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexResult {
    pub n: usize,
    pub vertices: usize,
    pub dim: usize,
    pub hull_dim: usize,
    pub is_simplex: bool,
    pub count_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapResult {
    pub n: usize,
    pub seed: u64,
    pub source: String,
    pub matrix: MatrixDocument,
    pub min_bell_value: String,
    pub certificate: Vec<String>,
    pub certificate_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleResult {
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    pub rng: String,
    pub exact: Vec<String>,
    pub estimate: Vec<f64>,
    pub std_err: Vec<f64>,
}
