//! Riemann sums for step functions and pointwise evaluators.

use crate::fnspace::{neumaier_sum, CellFunction};
use crate::measurelab::cantor::snap_rational;
use crate::measurelab::{IntervalUnion, SimpleFunction};

/// `Σ cᵢ (ξᵢ − ξᵢ₋₁)`.
pub fn riemann_step_integral(psi: &CellFunction) -> f64 {
    neumaier_sum(
        psi.cells()
            .iter()
            .zip(psi.grid().widths())
            .map(|(c, w)| c * w),
    )
}

/// The simple function that agrees with `psi` off the grid nodes.
pub fn step_to_simple(psi: &CellFunction) -> SimpleFunction {
    let n = psi.grid().nodes();
    let terms = psi
        .cells()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, IntervalUnion::from_canonical(vec![(n[i], n[i + 1])])))
        .collect();
    SimpleFunction::new(terms).expect("cells lie in [0,1]")
}

/// Where each partition cell is sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TagRule {
    Left,
    Midpoint,
    Right,
    /// `xᵢ + θ·h` for a fixed `θ ∈ [0,1]`.
    Offset(f64),
}

impl TagRule {
    fn tag(self, lo: f64, h: f64) -> f64 {
        match self {
            TagRule::Left => lo,
            TagRule::Midpoint => lo + 0.5 * h,
            TagRule::Right => lo + h,
            TagRule::Offset(theta) => lo + theta * h,
        }
    }
}

/// `S(P, f)` on the uniform partition of `[a, b]` into `n` cells.
pub fn riemann_sum(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize, tags: TagRule) -> f64 {
    let h = (b - a) / n as f64;
    let sum = neumaier_sum((0..n).map(|i| {
        let lo = a + (b - a) * i as f64 / n as f64;
        f(tags.tag(lo, h))
    }));
    sum * h
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Mesh `h = (b − a)/n` for each partition.
    pub meshes: Vec<f64>,
    pub sums: Vec<f64>,
    /// `|S_{k+1} − S_k|`.
    pub differences: Vec<f64>,
    /// `log(dₖ/dₖ₊₁) / log(hₖ/hₖ₊₁)` for consecutive nonzero differences.
    pub orders: Vec<f64>,
}

impl ConvergenceReport {
    pub fn min_order(&self) -> Option<f64> {
        self.orders.iter().copied().reduce(f64::min)
    }
}

/// Riemann sums over a sequence of uniform partitions.
pub fn riemann_sum_converge(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cells: &[usize],
    tags: TagRule,
) -> ConvergenceReport {
    let meshes: Vec<f64> = cells.iter().map(|&n| (b - a) / n as f64).collect();
    let sums: Vec<f64> = cells
        .iter()
        .map(|&n| riemann_sum(&f, a, b, n, tags))
        .collect();
    let differences: Vec<f64> = sums.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let orders = differences
        .windows(2)
        .zip(meshes.windows(3))
        .filter(|(d, _)| d[0] > 0.0 && d[1] > 0.0)
        .map(|(d, h)| (d[0] / d[1]).ln() / (h[1] / h[2]).ln())
        .collect();
    ConvergenceReport {
        meshes,
        sums,
        differences,
        orders,
    }
}

/// Largest denominator counted as rational by [`rational_indicator`].
pub const RATIONAL_DENOMINATOR_LIMIT: u128 = 1 << 16;

/// Indicator of the rationals at desk scale: 1 when the simplest rational
/// that rounds to `x` has a small denominator.
pub fn rational_indicator(x: f64) -> f64 {
    match snap_rational(x) {
        Some((_, q)) if q <= RATIONAL_DENOMINATOR_LIMIT => 1.0,
        _ => 0.0,
    }
}
