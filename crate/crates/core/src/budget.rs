//! Run-wide limits and the per-enumeration candidate budget.

use crate::error::{Error, Result};
use std::cell::Cell;

/// Bounds under which every operation runs. A fresh [`Counter`] is opened for
/// each single enumeration; exceeding the budget is an explicit error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Truncation bound for simplicial sets (dimension of stored cells).
    pub bound: usize,
    /// Largest horn dimension searched by quasicategory and fibration checks.
    pub n_max: usize,
    /// Maximal word length for bounded congruence closure.
    pub word_bound: usize,
    /// Cap on candidate assignments in any single enumeration.
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            bound: 3,
            n_max: 3,
            word_bound: 8,
            budget: 10_000_000,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.bound == 0 || self.n_max == 0 || self.word_bound == 0 {
            return Err(Error::InputFormat("all bounds must be positive".into()));
        }
        if self.budget < 1_000 {
            return Err(Error::InputFormat("budget must be at least 10^3".into()));
        }
        Ok(())
    }

    /// Opens a budget counter for one enumeration.
    pub fn counter(&self, context: &str) -> Counter {
        Counter {
            cap: self.budget,
            used: Cell::new(0),
            context: context.to_string(),
        }
    }
}

/// Counts candidate assignments during one enumeration.
#[derive(Debug)]
pub struct Counter {
    cap: u64,
    used: Cell<u64>,
    context: String,
}

impl Counter {
    /// Charges one candidate step, failing when the cap is crossed.
    pub fn step(&self) -> Result<()> {
        let n = self.used.get() + 1;
        self.used.set(n);
        if n > self.cap {
            Err(Error::ResourceExhausted(format!(
                "{} (cap {})",
                self.context, self.cap
            )))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}
