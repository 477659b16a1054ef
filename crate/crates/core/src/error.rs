use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Mathematical "no" answers (a polynomial is not a prime power, a module is
/// not uniserial, two representations are inequivalent) are data, not errors;
/// errors are reserved for violated preconditions and unsupported inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("expected a monic polynomial, got {0}")]
    NotMonic(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("irreducibility over Q could not be decided for {0}")]
    IrreducibilityUnknown(String),
    #[error("minimal polynomials are not coprime; the equation may be unsolvable or not uniquely solvable")]
    NotCoprime,
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
    #[error("representation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("uniserializing search unsupported: {0}")]
    UniserializerUnsupported(String),
    #[error("characteristic-p hypothesis violated: {0}")]
    CharPUnsupported(String),
    #[error("not linked: {0}")]
    NotLinked(String),
    #[error("nilpotency length 1 is out of scope for classification; factor invariants: {0}")]
    LengthOne(String),
    #[error("ambiguous normalization: {0}")]
    AmbiguousNormalization(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch(..) => "field_mismatch",
            Error::NotMonic(..) => "not_monic",
            Error::Dimension(..) => "dimension",
            Error::InvalidInput(..) => "invalid_input",
            Error::IrreducibilityUnknown(..) => "irreducibility_unknown",
            Error::NotCoprime => "not_coprime",
            Error::LinearSolve(..) => "linear_solve",
            Error::NotAdmissible(..) => "not_admissible",
            Error::UniserializerUnsupported(..) => "uniserializer_unsupported",
            Error::CharPUnsupported(..) => "charp_unsupported",
            Error::NotLinked(..) => "not_linked",
            Error::LengthOne(..) => "length_one",
            Error::AmbiguousNormalization(..) => "ambiguous_normalization",
            Error::Inconsistent(..) => "inconsistent",
            Error::BoundExceeded(..) => "bound_exceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
