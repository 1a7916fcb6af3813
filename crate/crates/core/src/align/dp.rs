//! The lattice dynamic program behind the elastic distance.
//!
//! The search space is every piecewise-linear warp through the lattice
//! `{(i/M, j/M)}` that starts at `(0,0)`, ends at `(M,M)`, and moves by steps
//! `(a, b)` drawn from the slope set. Segment costs are computed exactly for
//! step-function SRSFs, so the DP optimum is the true minimum over that
//! path family.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fnspace::CellFunction;
use crate::warp::Warp;

/// Default reduced-fraction slope set.
pub const DEFAULT_SLOPES: [(u32, u32); 7] =
    [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];

/// Largest supported slope set.
pub const MAX_SLOPES: usize = 16;

/// Lattice DP settings.
///
/// Ties between predecessors whose accumulated costs agree to within
/// rounding are broken by the smaller `|k − l|` (closest to the diagonal),
/// then the smaller `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpConfig {
    /// Number of lattice intervals per axis; the lattice has `M + 1` nodes.
    pub grid_size: usize,
    /// Admissible steps `(Δi, Δj)`.
    pub slope_set: Vec<(u32, u32)>,
    /// Half-width of the adaptive band; `None` runs the full DP.
    pub band_width: Option<usize>,
}

impl Default for DpConfig {
    fn default() -> Self {
        Self::new(64)
    }
}

impl DpConfig {
    pub fn new(grid_size: usize) -> Self {
        Self {
            grid_size,
            slope_set: DEFAULT_SLOPES.to_vec(),
            band_width: None,
        }
    }

    pub fn with_slopes(mut self, slopes: &[(u32, u32)]) -> Self {
        self.slope_set = slopes.to_vec();
        self
    }

    pub fn with_band(mut self, width: usize) -> Self {
        self.band_width = Some(width);
        self
    }

    pub fn max_step(&self) -> usize {
        self.slope_set
            .iter()
            .map(|&(a, b)| a.max(b) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_size < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid_size must be at least 2, got {}",
                self.grid_size
            )));
        }
        if self.slope_set.len() > MAX_SLOPES {
            return Err(Error::InvalidConfig(format!(
                "at most {MAX_SLOPES} slopes are supported, got {}",
                self.slope_set.len()
            )));
        }
        if !self.slope_set.contains(&(1, 1)) {
            return Err(Error::InvalidConfig("slope set must contain (1,1)".into()));
        }
        for &(a, b) in &self.slope_set {
            if a == 0 || b == 0 {
                return Err(Error::InvalidConfig(format!(
                    "slope ({a},{b}) has a zero component"
                )));
            }
            if gcd(a, b) != 1 {
                return Err(Error::InvalidConfig(format!(
                    "slope ({a},{b}) is not reduced"
                )));
            }
        }
        if let Some(w) = self.band_width {
            if w < self.max_step() {
                return Err(Error::InvalidConfig(format!(
                    "band width {w} is narrower than the largest step {}",
                    self.max_step()
                )));
            }
        }
        Ok(())
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lattice points `(i, j)` from `(0,0)` to `(M,M)`; `i` indexes the domain
/// of the warp and `j` its values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    points: Vec<(usize, usize)>,
}

impl LatticePath {
    pub fn new(points: Vec<(usize, usize)>) -> Self {
        Self { points }
    }

    pub fn diagonal(m: usize) -> Self {
        Self::new((0..=m).map(|i| (i, i)).collect())
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    /// Reflection across the diagonal: the path of the inverse warp.
    pub fn transpose(&self) -> Self {
        Self::new(self.points.iter().map(|&(i, j)| (j, i)).collect())
    }

    /// Whether the path runs `(0,0) → (m,m)` using only steps in `slopes`.
    pub fn is_admissible(&self, m: usize, slopes: &[(u32, u32)]) -> bool {
        self.points.first() == Some(&(0, 0))
            && self.points.last() == Some(&(m, m))
            && self.points.windows(2).all(|w| {
                let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
                slopes
                    .iter()
                    .any(|&(a, b)| a as usize == di && b as usize == dj)
            })
    }

    /// The piecewise-linear warp through the path's lattice points.
    pub fn to_warp(&self, m: usize) -> Warp {
        let scale = m as f64;
        let nodes = self.points.iter().map(|&(i, _)| i as f64 / scale).collect();
        let values = self.points.iter().map(|&(_, j)| j as f64 / scale).collect();
        Warp::from_nodes(nodes, values).expect("lattice paths are strictly increasing warps")
    }

    /// Fractional `j` of the path above column `i`.
    pub(crate) fn height_at(&self, i: usize) -> f64 {
        let k = self.points.partition_point(|&(pi, _)| pi <= i);
        let (i0, j0) = self.points[k - 1];
        if i0 == i || k == self.points.len() {
            return j0 as f64;
        }
        let (i1, j1) = self.points[k];
        j0 as f64 + (j1 as f64 - j0 as f64) * (i - i0) as f64 / (i1 - i0) as f64
    }
}

/// Events closer than this many ulps of 1 are merged.
const MERGE_ULPS: f64 = 8.0;

/// Exact cost `∫_{ta}^{tb} |q₁(t) − q₂(γ(t))√γ̇|² dt` for linear γ from
/// `(ta, sa)` to `(tb, sb)`.
pub(crate) struct SegmentCost<'a> {
    t1: &'a [f64],
    c1: &'a [f64],
    t2: &'a [f64],
    c2: &'a [f64],
}

fn cell_of(nodes: &[f64], x: f64) -> usize {
    nodes
        .partition_point(|&n| n <= x)
        .saturating_sub(1)
        .min(nodes.len() - 2)
}

impl<'a> SegmentCost<'a> {
    pub fn new(q1: &'a CellFunction, q2: &'a CellFunction) -> Self {
        Self {
            t1: q1.grid().nodes(),
            c1: q1.cells(),
            t2: q2.grid().nodes(),
            c2: q2.cells(),
        }
    }

    pub fn cost(&self, ta: f64, tb: f64, sa: f64, sb: f64) -> f64 {
        let root = ((sb - sa) / (tb - ta)).sqrt();
        let (t1, c1, t2, c2) = (self.t1, self.c1, self.t2, self.c2);
        let mut i1 = cell_of(t1, ta);
        let mut i2 = cell_of(t2, sa);
        let mut cur = ta;
        let mut acc = 0.0;
        loop {
            let e1 = if i1 + 2 < t1.len() && t1[i1 + 1] < tb {
                t1[i1 + 1]
            } else {
                tb
            };
            // a q₂ breakpoint landing within rounding of a q₁ breakpoint (or
            // of the segment end) is the same event
            let e2 = if i2 + 2 < t2.len() && t2[i2 + 1] < sb {
                let e = (ta + (t2[i2 + 1] - sa) / (sb - sa) * (tb - ta)).clamp(cur, tb);
                if (e1 - e).abs() <= MERGE_ULPS * f64::EPSILON {
                    e1
                } else {
                    e
                }
            } else {
                tb
            };
            let end = e1.min(e2);
            let d = c1[i1] - c2[i2] * root;
            acc += d * d * (end - cur);
            if end >= tb {
                break;
            }
            if e1 == end {
                i1 += 1;
            }
            if e2 == end {
                i2 += 1;
            }
            cur = end;
        }
        acc
    }
}

/// Set of admissible lattice nodes.
#[derive(Debug, Clone)]
pub(crate) struct Band {
    m: usize,
    mask: Vec<bool>,
}

impl Band {
    pub fn full(m: usize) -> Self {
        Self {
            m,
            mask: vec![true; (m + 1) * (m + 1)],
        }
    }

    pub fn empty(m: usize) -> Self {
        Self {
            m,
            mask: vec![false; (m + 1) * (m + 1)],
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.mask[self.idx(i, j)]
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn add_diagonal(&mut self, w: usize) {
        for i in 0..=self.m {
            for j in i.saturating_sub(w)..=(i + w).min(self.m) {
                let k = self.idx(i, j);
                self.mask[k] = true;
            }
        }
    }

    /// Adds the tube of half-width `w` around `path`; returns whether
    /// anything new was added.
    pub fn add_tube(&mut self, path: &LatticePath, w: usize) -> bool {
        let mut grew = false;
        for i in 0..=self.m {
            let y = path.height_at(i);
            let lo = (y - w as f64).ceil().max(0.0) as usize;
            let hi = ((y + w as f64).floor() as usize).min(self.m);
            for j in lo..=hi {
                let k = self.idx(i, j);
                if !self.mask[k] {
                    self.mask[k] = true;
                    grew = true;
                }
            }
        }
        grew
    }
}

pub(crate) struct DpSolution {
    pub cost: f64,
    pub path: LatticePath,
    pub expanded: u64,
}

const NONE: u8 = u8::MAX;

/// Candidates within this relative margin of the minimum are ties; the
/// margin sits well above accumulated rounding and well below 1e-12.
pub(crate) const TIE_TOLERANCE: f64 = 1.0 / (1u64 << 42) as f64;

/// Runs the DP over the nodes of `band`.
pub(crate) fn solve(
    seg: &SegmentCost<'_>,
    m: usize,
    slopes: &[(u32, u32)],
    band: &Band,
) -> DpSolution {
    let side = m + 1;
    let scale = m as f64;
    let coord = |k: usize| k as f64 / scale;
    let mut dist = vec![f64::INFINITY; side * side];
    let mut pred = vec![NONE; side * side];
    dist[0] = 0.0;
    let mut expanded = 1u64;

    let relax = |dist: &[f64], i: usize, j: usize| -> (f64, u8) {
        let mut cands = [(f64::INFINITY, (0usize, 0usize), NONE); MAX_SLOPES];
        let mut n = 0;
        let mut best = f64::INFINITY;
        for (s, &(a, b)) in slopes.iter().enumerate() {
            let (a, b) = (a as usize, b as usize);
            if a > i || b > j {
                continue;
            }
            let (k, l) = (i - a, j - b);
            let base = dist[k * side + l];
            if !base.is_finite() {
                continue;
            }
            let cand = base + seg.cost(coord(k), coord(i), coord(l), coord(j));
            best = best.min(cand);
            cands[n] = (cand, (k.abs_diff(l), k), s as u8);
            n += 1;
        }
        let limit = best + TIE_TOLERANCE * best;
        let chosen = cands[..n]
            .iter()
            .filter(|c| c.0 <= limit)
            .min_by_key(|c| c.1)
            .map_or(NONE, |c| c.2);
        (best, chosen)
    };

    for i in 1..side {
        let column: Vec<usize> = (1..side).filter(|&j| band.contains(i, j)).collect();
        expanded += column.len() as u64;
        let results: Vec<(f64, u8)> = if column.len() * slopes.len() >= 512 {
            column.par_iter().map(|&j| relax(&dist, i, j)).collect()
        } else {
            column.iter().map(|&j| relax(&dist, i, j)).collect()
        };
        for (&j, (d, p)) in column.iter().zip(results) {
            dist[i * side + j] = d;
            pred[i * side + j] = p;
        }
    }

    let cost = dist[side * side - 1];
    debug_assert!(cost.is_finite(), "band does not connect the corners");
    let mut points = vec![(m, m)];
    let (mut i, mut j) = (m, m);
    while (i, j) != (0, 0) {
        let (a, b) = slopes[pred[i * side + j] as usize];
        i -= a as usize;
        j -= b as usize;
        points.push((i, j));
    }
    points.reverse();
    DpSolution {
        cost,
        path: LatticePath::new(points),
        expanded,
    }
}

/// Iterative band search.
///
/// The band starts as the diagonal strip of half-width equal to the largest
/// step and grows one unit of width at a time up to `width`. At each width
/// the DP is re-run and the tube around its path is merged in until the
/// path's tube already lies inside the band. Bands only ever grow, so the
/// band reached for a width contains the band for every smaller width.
pub(crate) fn solve_banded(
    seg: &SegmentCost<'_>,
    m: usize,
    slopes: &[(u32, u32)],
    min_width: usize,
    width: usize,
) -> (DpSolution, usize) {
    let mut band = Band::empty(m);
    let mut expanded = 0u64;
    let mut passes = 0usize;
    let mut last = None;
    for w in min_width..=width {
        band.add_diagonal(w);
        loop {
            let sol = solve(seg, m, slopes, &band);
            expanded += sol.expanded;
            passes += 1;
            let grew = band.add_tube(&sol.path, w);
            last = Some(sol);
            if !grew {
                break;
            }
        }
        if band.count() == (m + 1) * (m + 1) {
            break;
        }
    }
    let mut sol = last.expect("at least one pass");
    sol.expanded = expanded;
    (sol, passes)
}
