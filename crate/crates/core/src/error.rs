use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants split into two families that the command-line driver maps to
/// different exit codes: malformed input (syntax, sorts, shapes, unknown names)
/// and violated preconditions of an otherwise well-formed request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a subspace: {0}")]
    NotASubspace(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("algebra is not admissible: {0}")]
    NotAdmissible(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("field characteristic {characteristic} is too small (need 0 or > {needed})")]
    CharacteristicTooSmall { characteristic: u32, needed: usize },
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("pp-pair `{0}` has not been certified")]
    UncertifiedPair(String),
    #[error("interpretation functor `{0}` has not been validated")]
    NotValidated(String),
    #[error("induced map undefined: {0}")]
    InducedMapUndefined(String),
    #[error("endomorphism ring is not split local: {0}")]
    NotSplitEndo(String),
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: sort error: {message}")]
    Sort {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: unresolved reference `{name}`")]
    UnresolvedReference {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotASubspace(_) => "NotASubspace",
            Error::NotPrime(_) => "NotPrime",
            Error::DivisionByZero => "DivisionByZero",
            Error::SortMismatch(_) => "SortMismatch",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::ZeroModule => "ZeroModule",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::UncertifiedPair(_) => "UncertifiedPair",
            Error::NotValidated(_) => "NotValidated",
            Error::InducedMapUndefined(_) => "InducedMapUndefined",
            Error::NotSplitEndo(_) => "NotSplitEndo",
            Error::NotMono => "NotMono",
            Error::Syntax { .. } => "SyntaxError",
            Error::Sort { .. } => "SortError",
            Error::UnresolvedReference { .. } => "UnresolvedReference",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by a well-formed request whose preconditions
    /// do not hold (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotAdmissible(_)
                | Error::CharacteristicTooSmall { .. }
                | Error::ZeroModule
                | Error::UncertifiedPair(_)
                | Error::NotValidated(_)
                | Error::InducedMapUndefined(_)
                | Error::NotSplitEndo(_)
                | Error::NotMono
                | Error::NotASubspace(_)
                | Error::AlgebraMismatch
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
