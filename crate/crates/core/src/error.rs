use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("α ≤ 0: τ = {t}{u:+}i outside 𝔻(s,s) for s = {s} (α = {alpha})")]
    OutsideDisk { s: f64, t: f64, u: f64, alpha: f64 },

    #[error("invalid metric triple (a={a}, b={b}, c={c}): need a > 0, b > 0, ab − c² > 0")]
    InvalidMetric { a: f64, b: f64, c: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("character series cannot reach tolerance {tolerance:e} within {max_terms} terms")]
    Truncation { tolerance: f64, max_terms: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),
}
