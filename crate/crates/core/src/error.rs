use thiserror::Error;

/// Errors reported by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group name `{0}`")]
    GroupParse(String),
    #[error("invalid group G({m},{p},{n}): {reason}")]
    InvalidGroup { m: u32, p: u32, n: usize, reason: String },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("resource cap exceeded at multidegree {degree:?}: {entries} matrix entries (cap {cap})")]
    ResourceCap { degree: Vec<usize>, entries: usize, cap: usize },
    #[error("polarized generators are not available for {0}; use the reynolds policy")]
    UnsupportedPolicy(String),
    #[error("cyclotomic order mismatch: group uses {expected}, polynomial uses {found}")]
    OrderMismatch { expected: u32, found: u32 },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("polynomial is not symmetric: coefficient of {0:?} differs from its sorted rearrangement")]
    NotSymmetric(Vec<u32>),
    #[error("plethysm into an infinite series requires a truncation degree")]
    UntruncatedSeries,
    #[error("incompatible truncation degrees {0} and {1}")]
    IncompatibleTruncation(usize, usize),
    #[error("target vector is not in the column span")]
    NotInSpan,
    #[error("no closed form is available for {0}")]
    UnsupportedFamily(String),
    #[error("universality violated at multidegree {degree:?}: restricted value {restricted}, direct value {direct}")]
    UniversalityViolated { degree: Vec<usize>, restricted: u64, direct: u64 },
    #[error("harmonic component of multidegree {0:?} is nonzero above the degree bound")]
    DegreeBoundViolated(Vec<usize>),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
