//! Seeded random generators for tests, benchmarks, and the verify suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::align::LatticePath;
use crate::fnspace::{CellFunction, Grid, SampledFunction};
use crate::srsf::Srsf;
use crate::warp::Warp;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` nodes, each interior node jittered by up to 40% of the uniform
/// spacing.
pub fn random_grid(rng: &mut impl Rng, n: usize) -> Grid {
    assert!(n >= 2);
    let h = 1.0 / (n - 1) as f64;
    let mut nodes: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                i as f64 * h
            } else {
                i as f64 * h + rng.random_range(-0.4..0.4) * h
            }
        })
        .collect();
    nodes[n - 1] = 1.0;
    Grid::new(nodes).expect("jittered nodes stay ordered")
}

/// A piecewise-linear function with slopes in `[−2, 2]`.
pub fn random_function(rng: &mut impl Rng, grid: Grid) -> SampledFunction {
    let mut v = rng.random_range(-1.0..1.0);
    let mut values = vec![v];
    for w in grid.widths().collect::<Vec<_>>() {
        v += rng.random_range(-2.0..2.0) * w;
        values.push(v);
    }
    SampledFunction::new(grid, values).expect("finite")
}

/// An increasing piecewise-linear function with slopes in `[0.2, 3]`.
pub fn random_increasing(rng: &mut impl Rng, grid: Grid) -> SampledFunction {
    let mut v = rng.random_range(-1.0..1.0);
    let mut values = vec![v];
    for w in grid.widths().collect::<Vec<_>>() {
        v += rng.random_range(0.2..3.0) * w;
        values.push(v);
    }
    SampledFunction::new(grid, values).expect("finite")
}

/// A step SRSF whose cells avoid a neighborhood of zero.
pub fn random_srsf(rng: &mut impl Rng, cells: usize) -> Srsf {
    let grid = random_grid(rng, cells + 1);
    let values = (0..cells)
        .map(|_| {
            let m = rng.random_range(0.1..2.0);
            if rng.random_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    Srsf::new(CellFunction::new(grid, values).expect("finite"))
}

/// A strictly increasing warp on a random grid of `n` nodes.
pub fn random_warp(rng: &mut impl Rng, n: usize) -> Warp {
    let grid = random_grid(rng, n);
    let steps: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.2..1.8)).collect();
    let total: f64 = steps.iter().sum();
    let mut acc = 0.0;
    let mut values = vec![0.0];
    for s in &steps[..n - 2] {
        acc += s;
        values.push(acc / total);
    }
    values.push(1.0);
    Warp::from_nodes(grid.nodes().to_vec(), values).expect("strictly increasing")
}

/// `γ(t) = (e^{at} − 1)/(e^a − 1)` on `n` uniform nodes; `a = 0` is the
/// identity.
pub fn smooth_warp(n: usize, a: f64) -> Warp {
    let grid = Grid::uniform(n).expect("n ≥ 2");
    let values: Vec<f64> = grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            if i == 0 || i == n - 1 || a == 0.0 {
                t
            } else {
                a.mul_add(t, 0.0).exp_m1() / a.exp_m1()
            }
        })
        .collect();
    Warp::from_nodes(grid.nodes().to_vec(), values).expect("smooth warps increase")
}

/// A uniformly chosen admissible step among those that can still reach
/// `(m, m)`; `None` if no admissible path exists.
pub fn random_lattice_path(
    rng: &mut impl Rng,
    m: usize,
    slopes: &[(u32, u32)],
) -> Option<LatticePath> {
    let side = m + 1;
    // reach[i][j]: (m,m) is reachable from (i,j)
    let mut reach = vec![false; side * side];
    reach[side * side - 1] = true;
    for i in (0..side).rev() {
        for j in (0..side).rev() {
            if (i, j) == (m, m) {
                continue;
            }
            reach[i * side + j] = slopes.iter().any(|&(a, b)| {
                let (ni, nj) = (i + a as usize, j + b as usize);
                ni <= m && nj <= m && reach[ni * side + nj]
            });
        }
    }
    if !reach[0] {
        return None;
    }
    let (mut i, mut j) = (0, 0);
    let mut points = vec![(0, 0)];
    while (i, j) != (m, m) {
        let options: Vec<(usize, usize)> = slopes
            .iter()
            .map(|&(a, b)| (i + a as usize, j + b as usize))
            .filter(|&(ni, nj)| ni <= m && nj <= m && reach[ni * side + nj])
            .collect();
        (i, j) = options[rng.random_range(0..options.len())];
        points.push((i, j));
    }
    Some(LatticePath::new(points))
}
