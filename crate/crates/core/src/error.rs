use alloc::string::String;

/// What went wrong while reading a permutation from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A point was listed twice (as an image, or inside the cycles).
    Duplicate(usize),
    /// A point outside `1..=r`.
    OutOfRange(usize),
    /// One-line form with the wrong number of entries.
    WrongLength { expected: usize, found: usize },
    /// Anything the grammar does not accept.
    Syntax(String),
}

impl core::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseErrorKind::Duplicate(v) => write!(f, "duplicate point {v}"),
            ParseErrorKind::OutOfRange(v) => write!(f, "point {v} out of range"),
            ParseErrorKind::WrongLength { expected, found } => {
                write!(f, "expected {expected} images, found {found}")
            }
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
        }
    }
}

/// Permutation parse failure; `position` is a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    Parse(#[from] ParseError),
    #[error("permutation images are not a bijection of 1..={size}")]
    NotABijection { size: usize },
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("expected {expected} Hodge slopes, got {found}")]
    SlopeCount { expected: usize, found: usize },
    #[error("circular sequence must be nonempty")]
    EmptySequence,
    #[error("entries at {index} and its successor do not share a strict sign")]
    NotSameSign { index: usize },
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("first reduction needs at least two entries")]
    TooShort,
    #[error("sequence is all zeroes")]
    AllZero,
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("crystal is not a Dieudonné module (slopes must lie in {{0, 1}})")]
    NotDieudonne,
    #[error("zero mark on circular component through vertex {digit}:{position}")]
    ZeroOnCycle { digit: usize, position: usize },
    #[error("vertex {digit}:{position} has {direction}-degree above one")]
    DegreeOverflow {
        digit: usize,
        position: usize,
        direction: &'static str,
    },
    #[error("resource limit exceeded: {what} = {value} > {limit}")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },
}
