use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("input error: {0}")]
    Input(String),
    /// The request is well formed but outside what this library computes.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A configured size bound (ball size, group order, radius) was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// Images supplied for a closed surface do not kill the surface relator.
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    /// An internal invariant failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
