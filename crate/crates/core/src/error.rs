use thiserror::Error;

/// Errors raised by the exact-arithmetic operations.
///
/// Everything except [`Error::BitLimitExceeded`] is an input or domain
/// error; the bit limit is a resource guard hit during orbit iteration.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime set must be nonempty and strictly increasing, got {0:?}")]
    BadPrimeSet(Vec<u64>),

    #[error("not a {p}-adic integer: |{x}|_{p} > 1")]
    NotPAdicInteger { x: String, p: u64 },

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),

    #[error("modulus {0} must be >= 1")]
    BadModulus(String),

    #[error("prime set mismatch: {0:?} vs {1:?}")]
    PrimeSetMismatch(Vec<u64>, Vec<u64>),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("exponents must all be positive, got {0}")]
    BadExponent(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("not a multiplicative scaling: coordinate {0} is zero")]
    ZeroCoordinate(usize),

    #[error("matrix is not invertible over the S-integers (determinant {0})")]
    NotAUnit(String),

    #[error("orbit step {step} exceeded the bit limit ({bits} > {limit})")]
    BitLimitExceeded { step: usize, bits: u64, limit: u64 },

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },
}

impl Error {
    /// Resource errors map to a distinct process exit code in the CLI.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BitLimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
