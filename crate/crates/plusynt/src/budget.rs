use std::time::Instant;

use crate::{Error, Result};

/// Resource limits threaded through construction and solving.
///
/// Exhaustion is reported as an error distinct from any game verdict.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Wall-clock deadline, if any.
    pub deadline: Option<Instant>,
    /// Cap on materialized product / arena states.
    pub state_cap: usize,
    /// Cap on atomic propositions per automaton alphabet.
    pub ap_cap: usize,
    /// Cap on objective events for Zielonka tree construction.
    pub event_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            deadline: None,
            state_cap: 1_000_000,
            ap_cap: 10,
            event_cap: 12,
        }
    }
}

impl Budget {
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn check_deadline(&self, what: &'static str) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(Error::Timeout(what));
            }
        }
        Ok(())
    }

    pub fn check_states(&self, reached: usize) -> Result<()> {
        if reached > self.state_cap {
            return Err(Error::StateBudget { reached, cap: self.state_cap });
        }
        Ok(())
    }

    pub fn check_events(&self, events: usize) -> Result<()> {
        if events > self.event_cap {
            return Err(Error::EventCap { events, cap: self.event_cap });
        }
        Ok(())
    }
}
