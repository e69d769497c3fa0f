use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function spec produced a non-finite value.
    #[error("evaluation of `{expr}` at t={tau} is not finite")]
    Evaluation { expr: String, tau: f64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A checker precondition (bounds, parameter constraint) does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported reduction `{0}`: only riemann_liouville, katugampola and erdelyi_kober have finite parameter settings; limit-based reductions are not evaluated")]
    UnsupportedReduction(String),

    /// A quantity that must be nonnegative came out clearly negative.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("quadrature rule construction did not converge (n={0})")]
    NoConvergence(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
