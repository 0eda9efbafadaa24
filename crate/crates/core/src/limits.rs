//! Size guards shared by the enumerators and brute-force oracles.

use crate::error::{Error, Result};

/// Caps on the combinatorial work a single call may do.
///
/// The defaults keep every operation at desk scale. `Limits::relaxed()` lifts
/// them for callers that explicitly asked for large runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest edge count for connected edge-figure enumeration.
    pub max_figure_edges: usize,
    /// Largest total weight for catalog sequences and graph enumeration.
    pub max_weight: usize,
    /// Largest weight for the chromatic catalog.
    pub max_chromatic_weight: usize,
    /// Largest number of distinguishable figures in one inclusion-exclusion.
    pub max_figures: usize,
    /// Largest overlap graph for brute-force automorphism search.
    pub max_graph_vertices: usize,
    /// Largest graph handed to deletion-contraction.
    pub max_chromatic_vertices: usize,
    /// Iteration budget for brute-force oracles.
    pub brute_iterations: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_figure_edges: 6,
            max_weight: 6,
            max_chromatic_weight: 5,
            max_figures: 6,
            max_graph_vertices: 8,
            max_chromatic_vertices: 12,
            brute_iterations: 100_000_000,
        }
    }
}

impl Limits {
    pub fn relaxed() -> Self {
        Limits {
            max_figure_edges: 10,
            max_weight: 10,
            max_chromatic_weight: 10,
            max_figures: 8,
            max_graph_vertices: 10,
            max_chromatic_vertices: 20,
            brute_iterations: 100_000_000_000,
        }
    }

    pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::GuardExceeded {
                what,
                limit: limit as u64,
                actual: actual as u64,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_budget(&self, iterations: u128, hint: impl Into<String>) -> Result<()> {
        if iterations > self.brute_iterations {
            Err(Error::BudgetExceeded {
                iterations,
                budget: self.brute_iterations,
                hint: hint.into(),
            })
        } else {
            Ok(())
        }
    }
}
