use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value left the representable floating-point range.
    #[error("range error: {0}")]
    Range(String),

    /// The bracketing function has the same sign at both ends.
    #[error("no sign change on bracket [{lo}, {hi}] (residuals {f_lo:e}, {f_hi:e})")]
    BracketSign { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A threshold predicate did not flip across the requested bracket.
    #[error("predicate does not flip on [{lo}, {hi}]: holds at low end = {holds_lo}, at high end = {holds_hi}")]
    Bracket { lo: f64, hi: f64, holds_lo: bool, holds_hi: bool },

    #[error("zero pivot in tridiagonal factorization at row {row}")]
    ZeroPivot { row: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
