use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain where the function is defined.
    #[error("{function}: argument {value} is outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Result exceeds the representable double range.
    #[error("{function}: result overflows for argument {value}")]
    Overflow { function: &'static str, value: f64 },

    /// Inconsistent problem parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The integrand produced a NaN.
    #[error("integrand returned NaN at {at}")]
    NanIntegrand { at: f64 },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: value {value}, error estimate {abs_error}")]
    NonConvergence { value: f64, abs_error: f64 },

    /// An integral required by the computation is infinite.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// Monte-Carlo variance differs wildly between strata.
    #[error("insufficient decay: stratum variance ratio {ratio:.3e}")]
    InsufficientDecay { ratio: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
