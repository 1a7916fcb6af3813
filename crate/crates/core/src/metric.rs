//! The Fisher-Rao inner product on increasing functions and its SRSF
//! pushforward.

use crate::error::{Error, Result};
use crate::fnspace::{derivative, neumaier_sum, CellFunction, Grid, SampledFunction};
use crate::warp::{Refinement, Warp};

/// A perturbation direction at a base function.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub v: SampledFunction,
}

impl TangentVector {
    pub fn new(v: SampledFunction) -> Self {
        Self { v }
    }
}

impl From<SampledFunction> for TangentVector {
    fn from(v: SampledFunction) -> Self {
        Self { v }
    }
}

fn positive_slopes(f: &SampledFunction) -> Result<CellFunction> {
    let df = derivative(f);
    if let Some(cell) = df.cells().iter().position(|&s| !(s > 0.0)) {
        return Err(Error::NotPositiveSlope { cell });
    }
    Ok(df)
}

/// `¼ Σ u̇ᵢ v̇ᵢ / f′ᵢ · Δᵢ` over the union grid.
pub fn fisher_rao_inner(u: &TangentVector, v: &TangentVector, f: &SampledFunction) -> Result<f64> {
    let df = positive_slopes(f)?;
    let uv = derivative(&u.v).zip_with(&derivative(&v.v), |a, b| a * b)?;
    let integrand = uv.zip_with(&df, |p, s| 0.25 * p / s)?;
    Ok(weighted_sum(&integrand))
}

fn weighted_sum(g: &CellFunction) -> f64 {
    neumaier_sum(g.cells().iter().zip(g.grid().widths()).map(|(c, w)| c * w))
}

/// `v̇ / (2√f′)` cell by cell.
pub fn srsf_pushforward(v: &TangentVector, f: &SampledFunction) -> Result<CellFunction> {
    let df = positive_slopes(f)?;
    derivative(&v.v).zip_with(&df, |d, s| d / (2.0 * s.sqrt()))
}

/// Both sides of the isometry identity `⟪u∘γ, v∘γ⟫_{f∘γ} = ⟪u,v⟫_f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryReport {
    pub base: f64,
    pub warped: f64,
    pub difference: f64,
    /// `Σ|terms|` of the base sum, the natural scale for rounding error.
    pub scale: f64,
}

/// Computes both inner products, composing through `g` exactly on the
/// grid refined by the preimages of every breakpoint of `u`, `v` and `f`.
pub fn isometry_check(
    u: &TangentVector,
    v: &TangentVector,
    f: &SampledFunction,
    g: &Warp,
) -> Result<IsometryReport> {
    if !g.is_strict() {
        return Err(Error::InvalidWarp(
            "isometry requires a strictly increasing warp".into(),
        ));
    }
    let base = fisher_rao_inner(u, v, f)?;
    let union = u.v.grid().union(v.v.grid()).union(f.grid());
    let nodes = union.nodes();
    let r = Refinement::new(g, &nodes[1..nodes.len() - 1]);
    let grid = r.grid();
    let du = cells(&grid, r.chain(&derivative(&u.v)))?;
    let dv = cells(&grid, r.chain(&derivative(&v.v)))?;
    let df = cells(&grid, r.chain(&positive_slopes(f)?))?;
    if let Some(cell) = df.cells().iter().position(|&s| !(s > 0.0)) {
        return Err(Error::NotPositiveSlope { cell });
    }
    let terms: Vec<f64> = (0..grid.num_cells())
        .map(|k| 0.25 * du.cells()[k] * dv.cells()[k] / df.cells()[k] * grid.width(k))
        .collect();
    let warped = neumaier_sum(terms.iter().copied());
    let scale = {
        let uv = derivative(&u.v).zip_with(&derivative(&v.v), |a, b| a * b)?;
        let g = uv.zip_with(&derivative(f), |p, s| 0.25 * p / s)?;
        neumaier_sum(
            g.cells()
                .iter()
                .zip(g.grid().widths())
                .map(|(c, w)| (c * w).abs()),
        )
    };
    Ok(IsometryReport {
        base,
        warped,
        difference: warped - base,
        scale,
    })
}

fn cells(grid: &Grid, values: Vec<f64>) -> Result<CellFunction> {
    CellFunction::new(grid.clone(), values)
}
