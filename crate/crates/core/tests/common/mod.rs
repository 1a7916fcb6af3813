#![allow(dead_code)]

use elastic_core::{action, CellFunction, LatticePath, Srsf};

/// Every admissible lattice path from `(0,0)` to `(m,m)`.
pub fn all_paths(m: usize, slopes: &[(u32, u32)]) -> Vec<LatticePath> {
    fn walk(
        m: usize,
        slopes: &[(u32, u32)],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<LatticePath>,
    ) {
        let (i, j) = *cur.last().unwrap();
        if (i, j) == (m, m) {
            out.push(LatticePath::new(cur.clone()));
            return;
        }
        for &(a, b) in slopes {
            let (ni, nj) = (i + a as usize, j + b as usize);
            if ni <= m && nj <= m {
                cur.push((ni, nj));
                walk(m, slopes, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(m, slopes, &mut vec![(0, 0)], &mut out);
    out
}

/// `‖q₁ − (q₂, γ)‖²` for the warp through `path`, computed by applying the
/// group action and taking an L² distance on the union grid.
pub fn oracle_cost(q1: &Srsf, q2: &Srsf, path: &LatticePath, m: usize) -> f64 {
    let warped = action(q2, &path.to_warp(m));
    let d = q1.q().l2_distance(warped.q()).unwrap();
    d * d
}

/// Brute-force minimum over all admissible paths.
///
/// Paths whose costs agree to within rounding are ties; among them the
/// winner has, read backwards from `(m,m)`, predecessors closest to the
/// diagonal, then leftmost.
pub fn brute_force(q1: &Srsf, q2: &Srsf, m: usize, slopes: &[(u32, u32)]) -> (f64, LatticePath) {
    let scored: Vec<(f64, LatticePath)> = all_paths(m, slopes)
        .into_iter()
        .map(|p| (oracle_cost(q1, q2, &p, m), p))
        .collect();
    let best = scored.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let limit = best * (1.0 + 1e-13);
    let backward_key = |p: &LatticePath| -> Vec<(usize, usize)> {
        p.points()
            .iter()
            .rev()
            .skip(1)
            .map(|&(k, l)| (k.abs_diff(l), k))
            .collect()
    };
    scored
        .into_iter()
        .filter(|s| s.0 <= limit)
        .min_by_key(|s| backward_key(&s.1))
        .unwrap()
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// `∫|g − h|²` for a step function `g` and a smooth `h`, cell by cell.
pub fn l2_sq_against(g: &CellFunction, h: impl Fn(f64) -> f64) -> f64 {
    let n = g.grid().nodes();
    g.cells()
        .iter()
        .enumerate()
        .map(|(i, &c)| simpson(|t| (c - h(t)).powi(2), n[i], n[i + 1], 8))
        .sum()
}

/// Observed orders `log2(eₖ/eₖ₊₁)` for errors at successively halved mesh.
pub fn orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect()
}
