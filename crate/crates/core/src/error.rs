use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant carries a stable machine-readable [`Error::code`] which the
/// CLI (in JSON mode) and the C ABI surface verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("zero is not a valid value of q")]
    ZeroQ,

    #[error("q is not a root of unity")]
    NotRootOfUnity,

    #[error("inadmissible line ({n}, {k}, {a}, {b}): violates {condition}")]
    Inadmissible {
        n: i64,
        k: i64,
        a: i64,
        b: i64,
        condition: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prefix too short: {required} terms required, {actual} given")]
    PrefixTooShort { required: usize, actual: usize },

    #[error("enumeration cap exceeded: {what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("|q| versus 1 undecided at {bits} bits of working precision")]
    Undecided { bits: u64 },

    #[error("q is a root of unity of order {order}, not above the total degree {degree}")]
    SmallRootOfUnity { order: u64, degree: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("malformed prefix dump at line {line}: {message}")]
    Dump { line: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroQ => "zero_q",
            Error::NotRootOfUnity => "not_root_of_unity",
            Error::Inadmissible { .. } => "inadmissible_spec",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::PrefixTooShort { .. } => "prefix_too_short",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Undecided { .. } => "precision_exhausted",
            Error::SmallRootOfUnity { .. } => "small_root_of_unity",
            Error::Syntax { .. } => "syntax_error",
            Error::Dump { .. } => "malformed_dump",
            Error::Inconsistency(_) => "inconsistency",
        }
    }

    /// True for errors caused by malformed text input rather than by the
    /// mathematical content of a request.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Dump { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
