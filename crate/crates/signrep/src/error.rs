use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the library. Every fallible operation returns one of
/// these rather than panicking; caps are enforced by explicit refusal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A point or polynomial does not match the expected number of variables.
    DimensionMismatch { expected: usize, found: usize },
    /// Operation requires a univariate polynomial.
    NotUnivariate { dimension: usize },
    /// Operation is undefined for the zero polynomial.
    ZeroPolynomial,
    /// A conic combination weight was zero or negative.
    NonPositiveWeight,
    /// Input sequence must be strictly increasing.
    NotStrictlyIncreasing(&'static str),
    EmptyInput(&'static str),
    InvalidGrid(String),
    PointOffGrid(Vec<i64>),
    /// Grid enumeration refused: the point count exceeds the configured cap.
    GridTooLarge { points: u128, cap: u64 },
    /// A search or enumeration cap was exceeded; the message names the cap.
    CapExceeded(String),
    /// Every admissible support was tried and none was feasible.
    SearchExhausted { max_support: usize },
    AlphaOutOfRange { index: usize, detail: String },
    SingularMatrix,
    /// A polynomial vanished at a point where a strict sign was required.
    VanishesAt(i64),
    /// AND-gate positive and negated variable sets must be disjoint.
    OverlappingGateSets,
    BadArity(String),
    Parse(String),
    UnknownName { kind: &'static str, name: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotUnivariate { dimension } => {
                write!(f, "expected a univariate polynomial, got dimension {dimension}")
            }
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::NonPositiveWeight => write!(f, "conic combination weights must be positive"),
            Error::NotStrictlyIncreasing(what) => {
                write!(f, "{what} must be strictly increasing")
            }
            Error::EmptyInput(what) => write!(f, "{what} must be nonempty"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::PointOffGrid(p) => write!(f, "point {p:?} is not on the grid"),
            Error::GridTooLarge { points, cap } => {
                write!(f, "grid has {points} points, exceeding the cap of {cap}")
            }
            Error::CapExceeded(msg) => write!(f, "cap exceeded: {msg}"),
            Error::SearchExhausted { max_support } => {
                write!(f, "no feasible support of size up to {max_support}")
            }
            Error::AlphaOutOfRange { index, detail } => {
                write!(f, "alpha[{index}] out of range: {detail}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::VanishesAt(p) => write!(f, "polynomial vanishes at {p}"),
            Error::OverlappingGateSets => {
                write!(f, "gate sets I and J must be disjoint")
            }
            Error::BadArity(msg) => write!(f, "{msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::UnknownName { kind, name } => write!(f, "unknown {kind}: {name}"),
        }
    }
}

impl std::error::Error for Error {}
