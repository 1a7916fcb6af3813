//! Elastic distance between SRSF equivalence classes, optimal warps, and
//! geodesic paths between functions.

mod dp;

pub use dp::{DpConfig, LatticePath, DEFAULT_SLOPES};

use crate::error::{Error, Result};
use crate::fnspace::{CellFunction, SampledFunction};
use crate::srsf::{normalize, reconstruct, srsf_of, Srsf};
use crate::warp::{action, compose_function, Warp};
use dp::{Band, SegmentCost};

/// Outcome of an alignment.
#[derive(Debug, Clone)]
pub struct AlignmentResult {
    /// `sqrt(cost)`.
    pub distance: f64,
    /// Minimal lattice-path cost `‖q₁ − (q₂, γ)‖²`.
    pub cost: f64,
    pub path: LatticePath,
    pub warp: Warp,
    /// `(q₂, warp)`.
    pub aligned_q: Srsf,
    /// `f₂ ∘ warp`, when the aligned inputs were functions.
    pub aligned_f: Option<SampledFunction>,
    pub nodes_expanded: u64,
    /// Number of DP passes (1 for the full lattice).
    pub passes: usize,
    /// Set when a zero-length input forced the identity-warp convention.
    pub degenerate: bool,
}

impl AlignmentResult {
    /// Sampled warp as `(t, γ(t))` pairs.
    pub fn warp_points(&self) -> Vec<(f64, f64)> {
        let g = self.warp.gamma();
        g.grid()
            .nodes()
            .iter()
            .copied()
            .zip(g.values().iter().copied())
            .collect()
    }
}

/// Minimizes `‖q₁ − (q₂, γ)‖₂` over lattice warps.
///
/// Returns `ZeroLength` when either SRSF has zero norm; see
/// [`constant_convention`] for that case.
pub fn elastic_distance(q1: &Srsf, q2: &Srsf, cfg: &DpConfig) -> Result<AlignmentResult> {
    cfg.validate()?;
    if q1.norm() == 0.0 || q2.norm() == 0.0 {
        return Err(Error::ZeroLength);
    }
    let m = cfg.grid_size;
    let seg = SegmentCost::new(q1.q(), q2.q());
    let (sol, passes) = match cfg.band_width {
        None => (dp::solve(&seg, m, &cfg.slope_set, &Band::full(m)), 1),
        Some(w) => dp::solve_banded(&seg, m, &cfg.slope_set, cfg.max_step(), w),
    };
    let warp = sol.path.to_warp(m);
    let aligned_q = action(q2, &warp);
    Ok(AlignmentResult {
        distance: sol.cost.max(0.0).sqrt(),
        cost: sol.cost,
        path: sol.path,
        warp,
        aligned_q,
        aligned_f: None,
        nodes_expanded: sol.expanded,
        passes,
        degenerate: false,
    })
}

/// The zero-length convention: distance `‖q₁ − q₂‖₂`, identity warp, no
/// search, flagged as degenerate.
pub fn constant_convention(q1: &Srsf, q2: &Srsf, cfg: &DpConfig) -> Result<AlignmentResult> {
    let d = q1.q().l2_distance(q2.q())?;
    let m = cfg.grid_size.max(1);
    let path = LatticePath::diagonal(m);
    let warp = path.to_warp(m);
    Ok(AlignmentResult {
        distance: d,
        cost: d * d,
        path,
        warp,
        aligned_q: q2.clone(),
        aligned_f: None,
        nodes_expanded: 0,
        passes: 0,
        degenerate: true,
    })
}

/// [`elastic_distance`], falling back to [`constant_convention`] on
/// zero-length input.
pub fn elastic_distance_total(q1: &Srsf, q2: &Srsf, cfg: &DpConfig) -> Result<AlignmentResult> {
    match elastic_distance(q1, q2, cfg) {
        Err(Error::ZeroLength) => constant_convention(q1, q2, cfg),
        other => other,
    }
}

/// `‖q₁ − q₂‖₂` with no warping.
pub fn fisher_rao_distance(f1: &SampledFunction, f2: &SampledFunction) -> f64 {
    srsf_of(f1)
        .q()
        .l2_distance(srsf_of(f2).q())
        .expect("grids share the unit interval")
}

/// Elastic distance between unit-normalized SRSFs, with `f₂ ∘ γ` attached.
pub fn shape_distance(
    f1: &SampledFunction,
    f2: &SampledFunction,
    cfg: &DpConfig,
) -> Result<AlignmentResult> {
    let q1 = normalize(&srsf_of(f1))?;
    let q2 = normalize(&srsf_of(f2))?;
    let mut res = elastic_distance(&q1, &q2, cfg)?;
    res.aligned_f = Some(compose_function(f2, &res.warp));
    Ok(res)
}

/// Whether the optimal lattice path for `(q₁, q₂)` is also optimal for
/// `(b·q₁, c·q₂)`.
pub fn scalar_invariance_check(
    q1: &Srsf,
    q2: &Srsf,
    b: f64,
    c: f64,
    cfg: &DpConfig,
) -> Result<bool> {
    if !(b * c > 0.0) {
        return Err(Error::Domain(format!(
            "b·c must be positive, got b = {b}, c = {c}"
        )));
    }
    let base = elastic_distance(q1, q2, cfg)?;
    let scaled = elastic_distance(&q1.scaled(b), &q2.scaled(c), cfg)?;
    Ok(base.path == scaled.path)
}

/// Functions along the straight line between SRSFs, reconstructed from
/// `f1(0)`.
///
/// With `aligned`, `q₂` is first replaced by its optimal alignment to `q₁`.
pub fn geodesic_path(
    f1: &SampledFunction,
    f2: &SampledFunction,
    steps: usize,
    aligned: bool,
    cfg: &DpConfig,
) -> Result<Vec<SampledFunction>> {
    if steps < 2 {
        return Err(Error::Domain(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    let (a0, b0) = (f1.value_at_zero(), f2.value_at_zero());
    if a0 != b0 {
        return Err(Error::BasepointMismatch {
            left: a0,
            right: b0,
        });
    }
    let q1 = srsf_of(f1);
    let mut q2 = srsf_of(f2);
    if aligned {
        q2 = elastic_distance_total(&q1, &q2, cfg)?.aligned_q;
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let s = k as f64 / last;
            let mix = q1.q().zip_with(q2.q(), |a, b| (1.0 - s) * a + s * b)?;
            Ok(reconstruct(&Srsf::new(mix), a0))
        })
        .collect()
}

/// Convenience: the SRSF difference `q₁ − (q₂, γ)` as a cell function.
pub fn residual(q1: &Srsf, res: &AlignmentResult) -> Result<CellFunction> {
    q1.q().zip_with(res.aligned_q.q(), |a, b| a - b)
}
