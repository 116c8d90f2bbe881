use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs that are individually valid but inconsistent with each other.
    #[error("usage error: {0}")]
    Usage(String),

    /// No sign change (hence no root) in the searched region.
    #[error("no root found: {0}")]
    NotFound(String),

    /// Bisection ran out of iterations before meeting either tolerance.
    #[error("no convergence after {iterations} iterations (best estimate {best})")]
    Convergence { best: f64, iterations: usize },

    #[error("non-finite function value at x = {x}")]
    Evaluation { x: f64 },

    /// `∂F/∂p` vanishes together with `∂F/∂q`.
    #[error("slope undefined at (q, p) = ({q}, {p})")]
    SingularSlope { q: f64, p: f64 },
}

impl Error {
    /// True for failures of the numerical search rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotFound(_)
                | Error::Convergence { .. }
                | Error::Evaluation { .. }
                | Error::SingularSlope { .. }
        )
    }
}
