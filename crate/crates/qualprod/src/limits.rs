use crate::error::{Error, Result};

/// Budget for backtracking searches (cycle enumeration, walk searches).
///
/// Counts partial paths visited; exceeding the budget aborts the search with
/// a `Resource` error instead of running away on a pathological input.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_states: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_states: 10_000_000 }
    }
}

/// Running counter checked against a [`SearchLimits`] budget.
pub(crate) struct StateCounter {
    used: u64,
    max: u64,
    what: &'static str,
}

impl StateCounter {
    pub(crate) fn new(limits: &SearchLimits, what: &'static str) -> Self {
        StateCounter { used: 0, max: limits.max_states, what }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::Resource(format!(
                "{} exceeded the search budget of {} partial paths",
                self.what, self.max
            )))
        } else {
            Ok(())
        }
    }
}
