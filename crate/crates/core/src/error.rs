use thiserror::Error;

use crate::metrics::SValue;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A vector needed for an angle or direction is (numerically) zero.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// The bisection residual did not reach the requested tolerance.
    /// The best value found is still carried along.
    #[error("s evaluation did not converge (residual {:.3e})", .0.bisection_residual)]
    Convergence(Box<SValue>),

    #[error("points are not collinear with the origin (cross norm {0:.3e})")]
    NotCollinear(f64),

    #[error("trace is empty: {0}")]
    EmptyTrace(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("non-positive argument l(t,|x|) = {0:.6e}")]
    NonpositiveArg(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
