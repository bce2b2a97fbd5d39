use thiserror::Error;

use crate::composition::Composition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid peak set: {0}")]
    InvalidPeakSet(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("composition ({0}) is not admissible")]
    Inadmissible(Composition),

    /// The requested size is beyond what the brute-force oracle will scan.
    #[error("size {size} exceeds the exhaustion limit {limit}; use the fast counter")]
    ExhaustionLimit { size: usize, limit: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("no closed form is stated for Int_{{{a},{b}}}(3,{m}) and n = {n} is beyond the oracle", m = .n - 3)]
    FormulaNotStated { n: usize, a: usize, b: usize },

    #[error("dominance hypothesis violated: Int_{{{x},{y}}}(1+c) > Int_{{{x},{y}}}(1+c')")]
    DominanceViolated { x: usize, y: usize },

    /// A closed form produced a non-integer where a cardinality was expected.
    #[error("formula {formula} is inconsistent: evaluates to {value}, expected an integer{}", reference.as_ref().map(|r| format!(" (direct count {r})")).unwrap_or_default())]
    FormulaInconsistency { formula: String, value: String, reference: Option<String> },

    #[error("construction failed: {0}")]
    Construction(String),
}
