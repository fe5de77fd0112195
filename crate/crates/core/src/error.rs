use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("polynomial is not squarefree; deflate by gcd(h, h') first")]
    NotSquarefree,

    #[error("empty interval: left endpoint must be strictly below right endpoint")]
    EmptyInterval,

    #[error("polynomial is not q-symmetric for q = {q}")]
    NotQSymmetric { q: String },

    #[error("coefficient a_{index} = {value} lies outside the box bound {bound}")]
    OutsideBox { index: usize, value: i64, bound: i64 },

    #[error("refused: {what} has size {size}, above the limit {limit}")]
    Refused { what: String, size: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical root finder failed: residual {residual:e} exceeds tolerance {tol:e}")]
    RootFinder { residual: f64, tol: f64 },

    #[error("singular curve: right-hand side is not squarefree mod {0}")]
    SingularCurve(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("exact value requested but Ω({0}) was estimated by sampling")]
    SampledOmega(u64),

    #[error("constraint bound not implied by the subset family: {0}")]
    BoundNotImplied(String),
}

impl Error {
    /// True for refusals caused by enumeration or work limits.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refused { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
