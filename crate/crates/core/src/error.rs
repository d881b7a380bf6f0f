use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZcError {
    #[error("{value} is not an odd prime")]
    NotPrime { value: u64 },

    #[error("{value} has no inverse modulo {modulus}")]
    ZeroResidue { value: i64, modulus: u64 },

    #[error("root {u} is not a valid root for length {n_zc} (need 1 <= u < n and gcd(u, n) = 1)")]
    InvalidRoot { u: u64, n_zc: u64 },

    #[error("sequence length {0} is too short (need at least 3)")]
    InvalidLength(u64),

    #[error("period lengths differ: {0} vs {1}")]
    LengthMismatch(u64, u64),

    #[error("modulus {0} is not congruent to 3 mod 4")]
    WrongResidueClass(u64),

    #[error("frequency index {k} out of range for length {n_zc}")]
    IndexOutOfRange { k: u64, n_zc: u64 },

    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),

    #[error("oversampling factor must be at least 1")]
    InvalidOversampling,

    #[error("need at least {min} timing iterations, got {got}")]
    TooFewIterations { got: usize, min: usize },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, ZcError>;
