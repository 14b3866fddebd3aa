//! Work budgets for the exponential searches.
//!
//! Every enumeration-heavy operation charges a meter and fails with a
//! distinct error once the budget is exhausted, so "too big to decide" is
//! never silently confused with an answer.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("work budget exceeded: {used} of {limit} units ({context})")]
pub struct BudgetExceeded {
    pub used: u64,
    pub limit: u64,
    pub context: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Cap on enumerated subsets / search nodes per operation.
    pub max_work: u64,
    /// Cap on net repair rounds.
    pub max_repair_rounds: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_work: 10_000_000,
            max_repair_rounds: 200,
        }
    }
}

impl Budget {
    pub fn with_max_work(max_work: u64) -> Self {
        Budget {
            max_work,
            ..Budget::default()
        }
    }

    pub fn meter(&self, context: &'static str) -> WorkMeter {
        WorkMeter {
            used: 0,
            limit: self.max_work,
            context,
        }
    }
}

#[derive(Debug)]
pub struct WorkMeter {
    used: u64,
    limit: u64,
    context: &'static str,
}

impl WorkMeter {
    pub fn charge(&mut self, amount: u64) -> Result<(), BudgetExceeded> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            Err(BudgetExceeded {
                used: self.used,
                limit: self.limit,
                context: self.context,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_trips_at_limit() {
        let budget = Budget::with_max_work(10);
        let mut meter = budget.meter("test");
        assert!(meter.charge(10).is_ok());
        let err = meter.charge(1).unwrap_err();
        assert_eq!(err.limit, 10);
        assert_eq!(err.used, 11);
    }
}
