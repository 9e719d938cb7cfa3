use thiserror::Error;

use crate::rational::Q;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested witness does not exist for these inputs.
    #[error("no witness: {0}")]
    NoWitness(String),
    /// A target level has no preimage under the map.
    #[error("no preimage at alpha {alpha}: level {{{}}} is not covered by the image", .level.join(","))]
    NoPreimage { alpha: Q, level: Vec<String> },
    /// An enumeration would exceed the configured budget.
    #[error("budget exceeded: {what} needs {count}, budget is {budget}")]
    Budget {
        what: String,
        count: u128,
        budget: u128,
    },
    /// Malformed input data.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
