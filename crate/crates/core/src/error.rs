use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 2 <= m <= 2^32")]
    InvalidModulus(u64),

    #[error("{a} is not a unit modulo {m}")]
    NotAUnit { a: u64, m: u64 },

    #[error("expected {expected} residues, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("not invertible over Z_{0}")]
    NotInvertible(u64),

    #[error("inverse check failed: F*G != 1 over Z_{0}")]
    InverseCheck(u64),

    #[error("configuration of length {len} is shorter than rule width {width}")]
    ConfigTooShort { len: usize, width: usize },

    #[error("word of length {len} is shorter than rule width {width}")]
    WindowTooShort { len: usize, width: usize },

    #[error("symbol {symbol} is not a residue modulo {m}")]
    SymbolOutOfRange { symbol: u64, m: u64 },

    #[error("enumeration of {needed} words exceeds guard {limit}")]
    Guard { needed: String, limit: u64 },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
