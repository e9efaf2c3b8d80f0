use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variant names double as the machine-readable error names reported by the
/// command-line tool, so renaming one is a breaking change.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("first breakpoint must be (0,0) and last must be (1,1)")]
    BadEndpoints,
    #[error("breakpoints are not monotone: {0}")]
    NotMonotone(String),
    #[error("value outside the unit interval: {0}")]
    OutOfRange(String),
    #[error("map has a constant segment and is not invertible")]
    NotInjective,
    #[error("invalid stop data: {0}")]
    InvalidStopData(String),
    #[error("duplicate stop value {0}")]
    DuplicateValue(String),
    #[error("depth {depth} exceeds the {len} available values")]
    DepthTooLarge { depth: usize, len: usize },
    #[error("no right lift: stop values of phi are not contained in those of eta")]
    NoRightLift,
    #[error("extra stop values violate the admissible range: {0}")]
    BadExtraStops(String),
    #[error("no left factor: stop intervals of phi do not refine those of eta")]
    NoLeftFactor,
    #[error("path times must start at 0 and end at 1 and lie in [0,1]")]
    BadTimeRange,
    #[error("path times must be strictly increasing")]
    NotIncreasingTime,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("paths are not reparametrization equivalent")]
    NotEquivalent,
    #[error("path is not regular")]
    NotRegular,
    #[error("witness does not satisfy its defining equality")]
    WitnessMismatch,
    #[error("end point of the first path differs from the start of the second")]
    EndpointMismatch,
    #[error("path is not loop-free")]
    NotLoopFree,
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::BadEndpoints => "BadEndpoints",
            Error::NotMonotone(_) => "NotMonotone",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NotInjective => "NotInjective",
            Error::InvalidStopData(_) => "InvalidStopData",
            Error::DuplicateValue(_) => "DuplicateValue",
            Error::DepthTooLarge { .. } => "DepthTooLarge",
            Error::NoRightLift => "NoRightLift",
            Error::BadExtraStops(_) => "BadExtraStops",
            Error::NoLeftFactor => "NoLeftFactor",
            Error::BadTimeRange => "BadTimeRange",
            Error::NotIncreasingTime => "NotIncreasingTime",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotEquivalent => "NotEquivalent",
            Error::NotRegular => "NotRegular",
            Error::WitnessMismatch => "WitnessMismatch",
            Error::EndpointMismatch => "EndpointMismatch",
            Error::NotLoopFree => "NotLoopFree",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
