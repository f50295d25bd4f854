use thiserror::Error;

/// Errors produced by the core library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {0} lies outside [0,1]")]
    Domain(String),
    #[error("degenerate interval [{0}, {0}]")]
    DegenerateInterval(String),
    #[error("interval [{lo}, {hi}] is not a subinterval of [0,1]")]
    InvalidInterval { lo: String, hi: String },
    #[error("invalid PL map: {0}")]
    InvalidMap(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("leaf count mismatch: domain has {domain}, range has {range}")]
    LeafCountMismatch { domain: usize, range: usize },
    #[error("tree pair is not reduced")]
    NotReduced,
    #[error("the zero character has no class on the sphere")]
    ZeroCharacter,
    #[error("character is not discrete")]
    NotDiscrete,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("element moves the cut point {0}; not in the embedded product")]
    MovesCutPoint(String),
    #[error("element is not in the kernel of chi_0 (value {0})")]
    NotInKernel(String),
    #[error("operation requires a non-identity element")]
    IdentityElement,
    #[error("invalid epsilon {0}: {1}")]
    InvalidEpsilon(String, String),
    #[error("relation x{i}^-1 x{n} x{i} = x{m} failed", m = n + 1)]
    RelationFailed { i: u32, n: u32 },
    #[error("vertex budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("inner radius {inner} exceeds outer radius {outer}")]
    BallSpec { inner: usize, outer: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
