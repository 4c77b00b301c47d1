use thiserror::Error;

/// Errors surfaced by the library. "No witness found" is never an error;
/// operations that can legitimately come up empty return an outcome enum
/// or an `Option` instead.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: out-of-range vertices, self-loops, overlapping
    /// sets, cross-graph set use, unknown pattern names, and the like.
    #[error("input error: {0}")]
    Input(String),

    /// An exact mode was asked to run past its documented cap.
    #[error("capability error: {what} requires size <= {cap}, got {got}")]
    Capability {
        what: String,
        cap: usize,
        got: usize,
    },

    /// Theoretical-mode preconditions failed; each entry names one
    /// violated inequality.
    #[error("precondition failure in {context}: {}", failures.join("; "))]
    Precondition {
        context: String,
        failures: Vec<String>,
    },

    /// The input is structurally outside what the operation's analysis
    /// assumes (e.g. no valid pair type exists).
    #[error("analysis error: {0}")]
    Analysis(String),

    /// Text format problems (OGR files, blockade files).
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
