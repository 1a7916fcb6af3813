//! Grids on [0,1], piecewise-linear sampled functions, and piecewise-constant
//! cell functions.
//!
//! A [`SampledFunction`] is always read as its linear interpolant, so its
//! derivative is exactly a [`CellFunction`] (one value per grid cell) and the
//! two are exact inverses of each other under [`derivative`] and
//! [`cumulative_integral`]. All integrals of cell functions are finite sums
//! with no quadrature error.

use crate::error::{Error, Result};

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Strictly increasing partition of [0,1] with pinned endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if let Some(i) = nodes.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if nodes[0] != 0.0 || nodes[nodes.len() - 1] != 1.0 {
            return Err(Error::InvalidGrid(format!(
                "endpoints must be 0 and 1, got {} and {}",
                nodes[0],
                nodes[nodes.len() - 1]
            )));
        }
        if let Some(i) = nodes.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "nodes not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { nodes })
    }

    /// `n` equally spaced nodes, `i / (n - 1)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 nodes, got {n}"
            )));
        }
        let last = (n - 1) as f64;
        Self::new((0..n).map(|i| i as f64 / last).collect())
    }

    /// Caller guarantees the grid invariants.
    pub(crate) fn from_sorted_unchecked(nodes: Vec<f64>) -> Self {
        debug_assert!(nodes.len() >= 2);
        debug_assert!(nodes[0] == 0.0 && nodes[nodes.len() - 1] == 1.0);
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        Self { nodes }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self, cell: usize) -> f64 {
        self.nodes[cell + 1] - self.nodes[cell]
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.nodes.windows(2).map(|w| w[1] - w[0])
    }

    pub fn midpoint(&self, cell: usize) -> f64 {
        0.5 * (self.nodes[cell] + self.nodes[cell + 1])
    }

    pub fn max_width(&self) -> f64 {
        self.widths().fold(0.0, f64::max)
    }

    /// Index of the cell `[t_i, t_{i+1})` containing `x`; values outside
    /// [0,1] clamp to the first or last cell, and `x = 1` maps to the last.
    pub fn locate(&self, x: f64) -> usize {
        let p = self.nodes.partition_point(|&n| n <= x);
        p.saturating_sub(1).min(self.num_cells() - 1)
    }

    /// Sorted union of the two node sets, exact duplicates removed.
    pub fn union(&self, other: &Grid) -> Grid {
        if self.nodes == other.nodes {
            return self.clone();
        }
        let (a, b) = (&self.nodes, &other.nodes);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(&x), Some(&y)) if y < x => {
                    j += 1;
                    y
                }
                (Some(&x), Some(_)) => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Grid::from_sorted_unchecked(out)
    }
}

/// A function on [0,1] given by its values on a grid, read as the linear
/// interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    /// Builds a function from raw `(t, value)` rows.
    ///
    /// Rows with an abscissa equal to the previous one replace it (last value
    /// wins); a decreasing abscissa is an error. The abscissae must already
    /// span exactly [0,1].
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let mut nodes: Vec<f64> = Vec::with_capacity(points.len());
        let mut values: Vec<f64> = Vec::with_capacity(points.len());
        for (row, &(t, v)) in points.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite(row));
            }
            match nodes.last() {
                Some(&prev) if t == prev => {
                    *values.last_mut().unwrap() = v;
                }
                Some(&prev) if t < prev => return Err(Error::DecreasingAbscissa { row }),
                _ => {
                    nodes.push(t);
                    values.push(v);
                }
            }
        }
        Self::new(Grid::new(nodes)?, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_parts(self) -> (Grid, Vec<f64>) {
        (self.grid, self.values)
    }

    pub fn value_at_zero(&self) -> f64 {
        self.values[0]
    }

    /// Linear interpolant at `t`; exact at nodes.
    pub fn eval(&self, t: f64) -> f64 {
        let i = self.grid.locate(t);
        let nodes = self.grid.nodes();
        let (t0, t1) = (nodes[i], nodes[i + 1]);
        if t == t0 {
            return self.values[i];
        }
        if t == t1 {
            return self.values[i + 1];
        }
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        // clamp keeps the interpolant inside the cell's value range under rounding
        let v = v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
        v.clamp(v0.min(v1), v0.max(v1))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.grid.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn shifted(&self, c: f64) -> Result<Self> {
        self.map(|v| v + c)
    }

    /// Pointwise combination on the union grid.
    pub fn zip_with(&self, other: &SampledFunction, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let grid = self.grid.union(&other.grid);
        let values = grid
            .nodes()
            .iter()
            .map(|&t| f(self.eval(t), other.eval(t)))
            .collect();
        Self::new(grid, values)
    }
}

/// A step function: one value per grid cell.
///
/// Cells are `[t_i, t_{i+1})`; derivatives and SRSFs live here because they
/// are only defined almost everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFunction {
    grid: Grid,
    cells: Vec<f64>,
}

impl CellFunction {
    pub fn new(grid: Grid, cells: Vec<f64>) -> Result<Self> {
        if cells.len() != grid.num_cells() {
            return Err(Error::LengthMismatch {
                expected: grid.num_cells(),
                got: cells.len(),
            });
        }
        if let Some(i) = cells.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, cells })
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        let n = grid.num_cells();
        Self::new(grid, vec![c; n])
    }

    /// Samples `f` at cell midpoints.
    pub fn from_midpoints(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let cells = (0..grid.num_cells()).map(|i| f(grid.midpoint(i))).collect();
        Self::new(grid, cells)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn into_parts(self) -> (Grid, Vec<f64>) {
        (self.grid, self.cells)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.cells[self.grid.locate(t)]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let cells = self.cells.iter().map(|&v| f(v)).collect();
        Self {
            grid: self.grid.clone(),
            cells,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    /// Restriction to a refinement of this grid (or a sampling at the new
    /// cell midpoints when `grid` is not a refinement).
    pub fn on_grid(&self, grid: &Grid) -> Self {
        if grid == &self.grid {
            return self.clone();
        }
        let cells = (0..grid.num_cells())
            .map(|i| self.eval(grid.midpoint(i)))
            .collect();
        Self {
            grid: grid.clone(),
            cells,
        }
    }

    /// Pointwise combination on the union grid; exact for step functions.
    pub fn zip_with(&self, other: &CellFunction, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid == other.grid {
            let cells = self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| f(a, b))
                .collect();
            return Self::new(self.grid.clone(), cells);
        }
        let grid = self.grid.union(&other.grid);
        let a = self.on_grid(&grid);
        let b = other.on_grid(&grid);
        let cells = a
            .cells
            .iter()
            .zip(&b.cells)
            .map(|(&x, &y)| f(x, y))
            .collect();
        Self::new(grid, cells)
    }

    /// Exact L² inner product of two step functions.
    pub fn dot(&self, other: &CellFunction) -> Result<f64> {
        Ok(integrate_cells(&self.zip_with(other, |a, b| a * b)?))
    }

    /// Exact L² distance of two step functions.
    pub fn l2_distance(&self, other: &CellFunction) -> Result<f64> {
        Ok(l2_norm(&self.zip_with(other, |a, b| a - b)?))
    }
}

/// Cell-wise difference quotients: the a.e. derivative of the interpolant.
pub fn derivative(f: &SampledFunction) -> CellFunction {
    let nodes = f.grid.nodes();
    let cells = (0..f.grid.num_cells())
        .map(|i| (f.values[i + 1] - f.values[i]) / (nodes[i + 1] - nodes[i]))
        .collect();
    CellFunction {
        grid: f.grid.clone(),
        cells,
    }
}

/// `Σ c_i Δ_i`, exact for step functions up to rounding.
pub fn integrate_cells(g: &CellFunction) -> f64 {
    neumaier_sum(g.cells.iter().zip(g.grid.widths()).map(|(&c, w)| c * w))
}

/// Indefinite integral starting from zero at t = 0.
pub fn cumulative_integral(g: &CellFunction) -> SampledFunction {
    cumulative_integral_from(g, 0.0)
}

/// Indefinite integral starting from `f0` at t = 0.
pub fn cumulative_integral_from(g: &CellFunction, f0: f64) -> SampledFunction {
    let mut values = Vec::with_capacity(g.grid.len());
    let mut acc = f0;
    values.push(acc);
    for (&c, w) in g.cells.iter().zip(g.grid.widths()) {
        acc += c * w;
        values.push(acc);
    }
    SampledFunction {
        grid: g.grid.clone(),
        values,
    }
}

/// Linear interpolant of `f` at the nodes of `grid`.
pub fn resample(f: &SampledFunction, grid: &Grid) -> SampledFunction {
    if grid == &f.grid {
        return f.clone();
    }
    let values = grid.nodes().iter().map(|&t| f.eval(t)).collect();
    SampledFunction {
        grid: grid.clone(),
        values,
    }
}

pub fn l2_norm(g: &CellFunction) -> f64 {
    neumaier_sum(g.cells.iter().zip(g.grid.widths()).map(|(&c, w)| c * c * w)).sqrt()
}

/// Total variation of the interpolant, `Σ |f(t_{i+1}) - f(t_i)|`.
pub fn bounded_variation(f: &SampledFunction) -> f64 {
    neumaier_sum(f.values.windows(2).map(|w| (w[1] - w[0]).abs()))
}
