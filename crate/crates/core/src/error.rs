use thiserror::Error;

/// Errors raised anywhere in the detection pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{source_name}:{line}:{col}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        col: usize,
        message: String,
    },
    #[error("variable `{0}` has an infinite bound")]
    Unbounded(String),
    #[error("permutation has degree {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("equation `{0}` still has quadratic terms; relax the problem before flat encoding")]
    Nonlinear(String),
    #[error("monomial {0} does not occur in the problem")]
    MonomialNotPresent(String),
    #[error("expected a {expected} encoding, got {found}")]
    EncodingKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("label {label} does not fit in {layers} layers")]
    LabelOutOfRange { label: u64, layers: u32 },
    #[error("{what} exceeds the enumeration guard ({size} > {limit})")]
    Guard {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("variable `{0}` is continuous; enumeration needs integer variables")]
    Continuous(String),
    #[error("groups act on different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 1,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
