use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("minimal polynomial must be monic, leading coefficient is {0}")]
    NotMonic(BigInt),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("interval [{lo}, {hi}] is empty or reversed")]
    EmptyInterval { lo: BigRational, hi: BigRational },
    #[error("polynomial does not change sign across [{lo}, {hi}]")]
    NoSignChange { lo: BigRational, hi: BigRational },
    #[error("isolating interval [{lo}, {hi}] must lie strictly above zero")]
    NonPositiveInterval { lo: BigRational, hi: BigRational },
    #[error("polynomial has the rational root {0}; a minimal polynomial of degree >= 2 cannot")]
    RationalRoot(BigRational),
    #[error("the isolated root is zero; tangent 0 does not define an angle in (0, pi)")]
    ZeroTangent,
    #[error("b = 0 (right angle) requires the right-angle mode to be enabled")]
    RightAngleDisabled,
    #[error("operation is undefined for the zero vector")]
    ZeroVector,
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("point set contains duplicate points")]
    DuplicatePoints,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("grid cardinality {size} exceeds the limit {limit}")]
    GridTooLarge { size: BigUint, limit: u64 },
    #[error("expected {expected} triples, above the generation budget {budget}")]
    BudgetExceeded { expected: BigUint, budget: u64 },
    #[error("{n} points exceed the limit {limit} for this counter")]
    PointLimitExceeded { n: usize, limit: usize },
    #[error("n = {n} admits no t >= 1 (need n > C3 = {c3})")]
    NoValidSize { n: BigUint, c3: BigUint },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True when the error falsifies a mathematical guarantee rather than
    /// reporting bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

macro_rules! ensure_invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure_invariant;
