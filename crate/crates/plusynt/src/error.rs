use thiserror::Error;

/// Errors produced by parsing, construction, and solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("mixed-dialect operators: {0}")]
    MixedDialect(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state budget exceeded: {reached} states (cap {cap})")]
    StateBudget { reached: usize, cap: usize },

    #[error("deadline exceeded during {0}")]
    Timeout(&'static str),

    #[error("iteration budget exceeded in {0}")]
    IterationBudget(&'static str),

    #[error("event set too large: {events} events (cap {cap})")]
    EventCap { events: usize, cap: usize },

    #[error("unknown export format: {0}")]
    UnknownFormat(String),

    #[error("malformed {what}: {msg}")]
    Malformed { what: &'static str, msg: String },
}

impl Error {
    pub fn malformed(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Malformed { what, msg: msg.into() }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Budget exhaustion must be distinguishable from a genuine
    /// unrealizability verdict.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::StateBudget { .. } | Error::Timeout(_) | Error::IterationBudget(_) | Error::EventCap { .. }
        )
    }
}
