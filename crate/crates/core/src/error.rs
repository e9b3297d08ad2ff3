use thiserror::Error;

/// Errors raised by the special-function kernel, the closed-form pipeline and
/// the numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("gamma function overflows at x = {0}")]
    Overflow(f64),

    #[error("hypergeometric series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("step size underflow at z = {z} (h = {h:e})")]
    StepSizeUnderflow { z: f64, h: f64 },

    #[error("integrator exceeded {steps} steps before reaching z = {z_end}")]
    TooManySteps { steps: usize, z_end: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// `true` for failures of a numerical procedure, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_)
                | Error::NonConvergence { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::TooManySteps { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
