//! An empirical modulus of absolute continuity for sampled functions.
//!
//! For a budget `δ`, the worst case of `Σ|f(x′ᵢ) − f(xᵢ)|` over disjoint
//! intervals with total length at most `δ` is attained, for a
//! piecewise-linear interpolant, by filling the budget with the steepest
//! cells first. This can expose a failure of absolute continuity but never
//! certify it: samples say nothing about what happens between nodes.

use crate::fnspace::{derivative, neumaier_sum, SampledFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct AcRow {
    pub delta: f64,
    pub worst_sum: f64,
    /// `max|f′| · δ`.
    pub lipschitz_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcReport {
    pub rows: Vec<AcRow>,
}

pub fn ac_diagnostic(f: &SampledFunction, deltas: &[f64]) -> AcReport {
    let d = derivative(f);
    let mut cells: Vec<(f64, f64)> = d
        .cells()
        .iter()
        .zip(f.grid().widths())
        .map(|(s, w)| (s.abs(), w))
        .collect();
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let steepest = cells.first().map_or(0.0, |c| c.0);
    let rows = deltas
        .iter()
        .map(|&delta| {
            let mut left = delta.max(0.0);
            let mut terms = Vec::new();
            for &(s, w) in &cells {
                if left <= 0.0 || s == 0.0 {
                    break;
                }
                let take = w.min(left);
                terms.push(s * take);
                left -= take;
            }
            AcRow {
                delta,
                worst_sum: neumaier_sum(terms),
                lipschitz_bound: steepest * delta,
            }
        })
        .collect();
    AcReport { rows }
}
