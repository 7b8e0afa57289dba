use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial coefficient C({a},{b}) is undefined: negative upper argument requires lower argument 0")]
    NegativeBinomial { a: i64, b: i64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("context mismatch: monomial {monomial} is not a valid {context} basis element")]
    ContextMismatch { monomial: String, context: &'static str },

    #[error("degree mismatch: expected degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("inadmissible composition: Q^{op} applied to {target} (Dyer-Lashof Adem relations are not supported)")]
    InadmissibleComposition { op: u32, target: String },

    #[error("Nishida coefficient C({a},{b}) with negative upper argument is outside the supported range")]
    NishidaRange { a: i64, b: i64 },

    #[error("xi undefined outside the height-2, dimension 2k+2 range: {0}")]
    XiUndefined(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported manifold: {0}")]
    UnsupportedManifold(String),

    #[error("class is not expressible in the given basis: {0}")]
    NotInBasis(String),

    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
}

impl Error {
    /// Domain errors are mathematically well-posed requests that fall outside
    /// what the engine computes; everything else is a caller validation error.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::InadmissibleComposition { .. } | Error::NishidaRange { .. } | Error::XiUndefined(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
