//! Request and response bodies for the MZV service's HTTP/JSON API.
//!
//! Domain payloads (combinations, polynomials, series, reports) reuse the
//! core wire formats directly; this crate only adds the request envelopes.

use serde::{Deserialize, Serialize};

pub use mzv_core::index_algebra::{Index, IndexCombination};
pub use mzv_core::regularization::RegPolynomial;
pub use mzv_core::relations::{CaseResult, CaseStatus, LabeledConstant, RelationCertificate};
pub use mzv_core::smzv::TSeries;

/// An operand that may be a bare index (`[1,3]`) or a full combination.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Operand {
    Index(Index),
    Combination(IndexCombination),
}

impl Operand {
    pub fn into_combination(self) -> IndexCombination {
        match self {
            Operand::Index(k) => IndexCombination::from_index(k),
            Operand::Combination(x) => x,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalRequest {
    pub index: Index,
    #[serde(default)]
    pub digits: Option<u32>,
    /// Evaluate the regularized constant term instead of rejecting
    /// non-admissible indices.
    #[serde(default)]
    pub star: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalResponse {
    pub index: Index,
    pub digits: u32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalCombinationRequest {
    pub combination: IndexCombination,
    #[serde(default)]
    pub digits: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueResponse {
    pub digits: u32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BinaryOpRequest {
    pub x: Operand,
    pub y: Operand,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaRequest {
    pub n: u32,
    pub x: Operand,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MInRequest {
    pub m: u32,
    pub n: u32,
    pub index: Index,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularizeRequest {
    pub x: Operand,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZetaStarRequest {
    pub index: Index,
    /// Weight shift `m` for `zeta_star_m`; defaults to 0.
    #[serde(default)]
    pub m: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmzvRequest {
    pub index: Index,
    pub order: usize,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub symbolic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StadicRequest {
    pub m: u32,
    pub n: u32,
    pub index: Index,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PslqRequest {
    /// Decimal strings, all accurate to `digits`.
    pub values: Vec<String>,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub max_coeff: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PslqResponse {
    /// Coefficients as decimal strings, or absent when nothing was found.
    pub relation: Option<Vec<String>>,
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pi2BasisRequest {
    pub weight: u32,
    #[serde(default)]
    pub digits: Option<u32>,
    /// Additional depth >= 2 generators on top of the defaults.
    #[serde(default)]
    pub extra_generators: Vec<Index>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pi2BasisResponse {
    pub weight: u32,
    pub constants: Vec<LabeledConstant>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyRequest {
    pub suite: String,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub extra_generators: Vec<Index>,
}

/// The suite report: the case array is the pinned wire format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyResponse {
    pub suite: String,
    pub digits: u32,
    pub passed: bool,
    pub report: Vec<CaseResult>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuitesResponse {
    pub suites: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}
