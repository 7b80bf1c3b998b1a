use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),
    /// Input claimed to be a Thue-Morse prefix but is not.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// A digit sequence handed to the run-length encoder is not square-free.
    #[error("digit sequence is not square-free: square with root {root} at index {start}")]
    SquareInDigits { start: usize, root: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
