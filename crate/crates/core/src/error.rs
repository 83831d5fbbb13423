use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of its evaluation budget.
    #[error("quadrature did not converge after {evaluations} evaluations (estimate {value:e}, error {error_estimate:e})")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// The epsilon -> 0 extrapolation could not produce a limit.
    #[error("regulator extrapolation failed: {0}")]
    Extrapolation(String),

    /// A formula evaluated on (or numerically at) one of its poles.
    #[error("on-resonance divergence: {0}")]
    Divergence(String),

    /// A photon distribution with too small a truncation level.
    #[error("truncation tail p[{n_max}] = {tail:e} exceeds the tail bound")]
    Truncation { n_max: usize, tail: f64 },

    /// Explicit time stepping above its stability bound, or a blow-up.
    #[error("unstable evolution: {0}")]
    Instability(String),

    /// No normalizable stationary state exists for the given rates.
    #[error("no normalizable steady state: {0}")]
    NoSteadyState(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
