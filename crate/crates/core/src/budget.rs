//! Search budgets, statistics and three-valued outcomes.
//!
//! Exhaustive searches in this crate are exact within a budget and report
//! `Unknown` when the budget runs out; they never guess. Node budgets are the
//! determinism-bearing limit (a pure function of the input); the optional
//! wall-clock cap exists for interactive use and is off by default.

use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Limits for exhaustive searches.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum search-tree nodes before giving up.
    pub max_nodes: u64,
    /// Optional wall-clock cap in milliseconds. Runs that hit this cap are
    /// not reproducible across machines; leave `None` for deterministic use.
    pub max_millis: Option<u64>,
    /// Cap on candidate cliques enumerated before factor/tiling search.
    pub max_candidates: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 20_000_000,
            max_millis: None,
            max_candidates: 2_000_000,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }
}

/// Counters reported by budgeted searches.
///
/// `elapsed_ms` is populated for human-readable reporting but skipped during
/// serialization so that seeded pipelines emit byte-identical artifacts.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed_ms: u128,
    /// True when the candidate enumeration hit `max_candidates`.
    pub truncated_candidates: bool,
}

/// Tracks a running search against its budget.
pub(crate) struct BudgetClock {
    started: Instant,
    max_nodes: u64,
    max_millis: Option<u64>,
    pub nodes: u64,
}

impl BudgetClock {
    pub fn start(budget: &Budget) -> BudgetClock {
        BudgetClock {
            started: Instant::now(),
            max_nodes: budget.max_nodes,
            max_millis: budget.max_millis,
            nodes: 0,
        }
    }

    /// Counts one node; returns false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return false;
        }
        if let Some(ms) = self.max_millis {
            // Checking the clock on every node would dominate small searches.
            if self.nodes.is_multiple_of(1024) && self.started.elapsed().as_millis() as u64 > ms {
                return false;
            }
        }
        true
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.started.elapsed().as_millis()
    }
}

/// A verification result that may be undecided because a budgeted factor
/// search underneath it gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ternary {
    True,
    False,
    Unknown,
}

impl Ternary {
    pub fn from_bool(b: bool) -> Ternary {
        if b {
            Ternary::True
        } else {
            Ternary::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Ternary::True
    }
}
