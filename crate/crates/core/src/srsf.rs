//! Square-root slope functions.
//!
//! The SRSF of `f` is `q = sign(f′)·√|f′|`. For a piecewise-linear `f` it is a
//! step function on `f`'s grid, `‖q‖₂²` is exactly the length `∫|f′|`, and
//! `f(t) = f(0) + ∫₀ᵗ q|q|` recovers `f` exactly.

use crate::error::{Error, Result};
use crate::fnspace::{
    cumulative_integral_from, derivative, l2_norm, CellFunction, Grid, SampledFunction,
};
use crate::warp::{action, Warp};

/// A step-function SRSF with its cached L² norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Srsf {
    q: CellFunction,
    norm: f64,
}

impl Srsf {
    pub fn new(q: CellFunction) -> Self {
        let norm = l2_norm(&q);
        Self { q, norm }
    }

    pub fn q(&self) -> &CellFunction {
        &self.q
    }

    pub fn grid(&self) -> &Grid {
        self.q.grid()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn into_cells(self) -> CellFunction {
        self.q
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.q.scaled(c))
    }
}

fn signed_sqrt(d: f64) -> f64 {
    if d > 0.0 {
        d.sqrt()
    } else if d < 0.0 {
        -(-d).sqrt()
    } else {
        0.0
    }
}

pub fn srsf_of(f: &SampledFunction) -> Srsf {
    Srsf::new(derivative(f).map(signed_sqrt))
}

/// `f(t) = f0 + ∫₀ᵗ q|q|`.
pub fn reconstruct(q: &Srsf, f0: f64) -> SampledFunction {
    cumulative_integral_from(&q.q.map(|v| v * v.abs()), f0)
}

/// `q / ‖q‖₂`.
pub fn normalize(q: &Srsf) -> Result<Srsf> {
    if q.norm == 0.0 {
        return Err(Error::ZeroLength);
    }
    if q.norm == 1.0 {
        return Ok(q.clone());
    }
    Ok(q.scaled(1.0 / q.norm))
}

/// `∫|f′|`, the arc length of the graph's vertical component.
pub fn length(f: &SampledFunction) -> f64 {
    crate::fnspace::bounded_variation(f)
}

/// `f = h∘γ` with `|h′| = L` everywhere on `h`'s grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantSpeed {
    pub h: SampledFunction,
    pub gamma: Warp,
    pub length: f64,
}

/// Compensated running sums of `weights` normalised to end at exactly 1,
/// plus the total.
fn normalized_cumsum(weights: impl Iterator<Item = f64>, n: usize) -> (Vec<f64>, f64) {
    let mut cum = Vec::with_capacity(n);
    let (mut acc, mut comp) = (0.0f64, 0.0f64);
    cum.push(0.0);
    for w in weights {
        let t = acc + w;
        comp += if acc.abs() >= w.abs() {
            (acc - t) + w
        } else {
            (w - t) + acc
        };
        acc = t;
        cum.push(acc + comp);
    }
    let total = acc + comp;
    if total > 0.0 {
        for c in cum.iter_mut() {
            *c /= total;
        }
        *cum.last_mut().unwrap() = 1.0;
    }
    (cum, total)
}

/// Image nodes of `gamma` with plateaus collapsed, plus the index of the
/// first source node mapped to each image node.
fn collapse_plateaus(gamma: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut nodes = vec![gamma[0]];
    let mut source = vec![0];
    for (i, &g) in gamma.iter().enumerate().skip(1) {
        if g > *nodes.last().unwrap() {
            nodes.push(g);
            source.push(i);
        }
    }
    (nodes, source)
}

/// Constant-speed reparametrisation: `γ(t) = (1/L)∫₀ᵗ|f′|` and `h` defined
/// on the image of γ by `h(γ(t)) = f(t)`.
pub fn constant_speed(f: &SampledFunction) -> Result<ConstantSpeed> {
    let v = f.values();
    let (gamma_vals, total) = normalized_cumsum(v.windows(2).map(|w| (w[1] - w[0]).abs()), v.len());
    if total == 0.0 {
        return Err(Error::ZeroLength);
    }
    let (image, source) = collapse_plateaus(&gamma_vals);
    let h_vals = source.iter().map(|&i| v[i]).collect();
    let h = SampledFunction::new(Grid::new(image)?, h_vals)?;
    let gamma = Warp::new(SampledFunction::new(f.grid().clone(), gamma_vals)?)?;
    Ok(ConstantSpeed {
        h,
        gamma,
        length: total,
    })
}

/// `q = (w, γ)` with `|w| = √L` off the zero set of `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormPair {
    pub w: CellFunction,
    pub gamma: Warp,
    pub length: f64,
}

impl StandardFormPair {
    /// `(w, γ)`, which reproduces the source SRSF.
    pub fn recompose(&self) -> Srsf {
        action(&Srsf::new(self.w.clone()), &self.gamma)
    }
}

pub fn standard_form(q: &Srsf) -> Result<StandardFormPair> {
    if q.norm == 0.0 {
        return Err(Error::ZeroLength);
    }
    let length = q.norm * q.norm;
    let cells = q.q.cells();
    let (gamma_vals, _) = normalized_cumsum(
        cells.iter().zip(q.grid().widths()).map(|(&c, w)| c * c * w),
        cells.len() + 1,
    );
    let (image, source) = collapse_plateaus(&gamma_vals);
    let root = length.sqrt();
    // image cell k is the image of source cell source[k+1]-1
    let w_cells = source[1..]
        .iter()
        .map(|&i| root * signed_unit(cells[i - 1]))
        .collect();
    let w = CellFunction::new(Grid::new(image)?, w_cells)?;
    let gamma = Warp::new(SampledFunction::new(q.grid().clone(), gamma_vals)?)?;
    Ok(StandardFormPair { w, gamma, length })
}

fn signed_unit(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
