use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("factor list is empty")]
    EmptyFactorList,
    #[error("cyclic factor {0} is below 2")]
    FactorBelowTwo(u64),
    #[error("factors {0:?} do not form a divisibility chain n_1 | n_2 | ... | n_r")]
    NotDivisibilityChain(Vec<u64>),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: u128, cap: u64 },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element does not belong to this group")]
    GroupMismatch,
    #[error("sequence is not a subsequence of the source")]
    NotASubsequence,
    #[error("weight {weight} outside [1, {max}]")]
    WeightOutOfRange { weight: i64, max: u64 },
    #[error("weight set is empty")]
    EmptyWeightSet,
    #[error("target is not an A-weighted {length}-term subsequence sum")]
    TargetNotReachable { length: usize },
    #[error("group is not a p-group")]
    NotAPGroup,
    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("witness already has a nonempty weighted zero-sum subsequence")]
    WitnessInvalid,
    #[error("valuation of f(alpha) reached the cap {cap}")]
    ValuationCapExceeded { cap: u32 },
    #[error("residue check space p^{exponent} is too large to scan")]
    ResidueSpaceTooLarge { exponent: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
