use thiserror::Error;

/// Failure modes of the library. Every public fallible routine returns one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit: size {requested} exceeds the configured maximum {limit}")]
    ResourceLimit { requested: usize, limit: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not non-crossing")]
    Crossing,
    #[error("sequence of order {have} is too short, order {need} required")]
    OrderTooSmall { need: usize, have: usize },
    #[error("sequence is empty")]
    EmptySequence,
    #[error("sequence is not {k}-dilated: entry {index} is nonzero")]
    NotDilated { k: usize, index: usize },
    #[error("series has a zero constant term")]
    ZeroConstantTerm,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series is not compositionally invertible")]
    NotInvertible,
    #[error("leading coefficient is not positive")]
    BadLeadingCoefficient,
    #[error("leading coefficient has no rational {k}-th root")]
    IrrationalRoot { k: usize },
    #[error("all moments vanish")]
    AllZeroMoments,
    #[error("first nonvanishing moment has the wrong sign")]
    BadSign,
    #[error("moment sequence is not {k}-divisible: entry {index} is nonzero")]
    NotKDivisible { k: usize, index: usize },
    #[error("parameter must be positive")]
    NonPositiveParameter,
    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),
    #[error("variable {label} has no moment of order {exponent}")]
    MissingMoment { label: String, exponent: i64 },
    #[error("variable {0} has no period, negative exponents are undefined")]
    NegativeExponent(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("moments do not define a positive measure")]
    InvalidPositiveMeasure,
    #[error("symmetry orders differ: {0} and {1}")]
    MismatchedK(usize, usize),
    #[error("independent routes disagree at index {0}")]
    RouteMismatch(usize),
    #[error("{n} is not a perfect {k}-th power")]
    NotPerfectPower { n: u64, k: usize },
    #[error("cumulant of order {k} must equal 1")]
    NotNormalized { k: usize },
    #[error("index {index} out of range for {count} matrices")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
