use thiserror::Error;

/// Errors produced by the library layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {p}^{e} exceeds the 2^62 native-arithmetic bound")]
    ModulusTooLarge { p: u64, e: u32 },

    #[error("values belong to different moduli ({left} vs {right})")]
    ContextMismatch { left: u64, right: u64 },

    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: u64, modulus: u64 },

    #[error("no primitive root exists modulo 2^{e}")]
    NoPrimitiveRoot { e: u32 },

    #[error("operation requires exponent e >= {min}, got {e}")]
    ExponentTooSmall { e: u32, min: u32 },

    #[error("modulus {modulus} exceeds the configured bound {bound}")]
    BoundExceeded { modulus: u64, bound: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
}

pub type Result<T> = std::result::Result<T, Error>;
