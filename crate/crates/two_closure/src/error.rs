//! One error type for the whole crate, with the process exit code each
//! variant maps to in the CLI.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // Permutation parsing and arithmetic.
    #[error("point {point} appears twice in cycle notation")]
    RepeatedPoint { point: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle text: {0}")]
    MalformedCycleText(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    // Caps. These are configuration limits, never silent truncations.
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: u128 },
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("search exceeded the node budget of {budget}")]
    SearchBudgetExceeded { budget: u64 },

    // Structural preconditions.
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("subset is not invariant under the group")]
    NotInvariant,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("delta action is not a faithful isomorphic image: {0}")]
    UnfaithfulDeltaAction(String),
    #[error("generator map does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("factor orders are not coprime")]
    NotCoprime,
    #[error("not a factorization: {0}")]
    NotAFactorization(String),
    #[error("unknown orbital color {color}; rank is {rank}")]
    UnknownColor { color: usize, rank: usize },
    #[error("representation spec is not faithful")]
    UnfaithfulSpec,

    // Verification outcomes that must abort loudly.
    #[error("contradiction with theorem prediction: {0}")]
    ContradictionWithTheorem(String),
    #[error("engines disagree: {0}")]
    EnginesDisagree(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    // Group-spec language and harness plumbing.
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("unknown group family: {0}")]
    UnknownFamily(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
    #[error("catalog error: {0}")]
    CatalogIo(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code: 2 verification failure or contradiction, 3 cap
    /// exceeded, 4 parse error, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            ContradictionWithTheorem(_) | EnginesDisagree(_) | VerificationFailed(_) => 2,
            OrderCapExceeded { .. } | DegreeCapExceeded { .. } | SearchBudgetExceeded { .. } => 3,
            RepeatedPoint { .. } | PointOutOfRange { .. } | MalformedCycleText(_)
            | ParseError(_) | UnknownFamily(_) | BadParameter(_) | UnknownSuite(_) => 4,
            _ => 1,
        }
    }
}
