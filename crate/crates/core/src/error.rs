use thiserror::Error;

/// Errors raised by the numerics. Offending values are carried as `f64`
/// regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arguments must be positive, got ({x}, {y})")]
    NonPositive { x: f64, y: f64 },

    #[error("unknown mean id `{0}`")]
    UnknownMean(String),

    #[error("unknown chain `{0}`")]
    UnknownChain(String),

    #[error("deformation parameter t = {0} is outside (0, 1]")]
    DeformRange(f64),

    #[error("Seiffert bound violated at z = {z}: f(z) = {value} not in [{lower}, {upper}]")]
    SeiffertBound {
        z: f64,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    NonConvergence { estimate: f64, error_bound: f64 },

    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },

    #[error("series did not converge within {terms} terms")]
    SeriesBudget { terms: usize },

    #[error("derivative unavailable at z = {z}")]
    Derivative { z: f64 },

    #[error("malformed grid: {0}")]
    Grid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
