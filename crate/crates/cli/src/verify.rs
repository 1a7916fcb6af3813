//! Seeded self-checks across every module, reported one JSON line per
//! invariant.

use elastic_core::fixtures::{
    random_function, random_grid, random_lattice_path, random_srsf, random_warp, rng, smooth_warp,
    ChaCha8Rng,
};
use elastic_core::measurelab::{
    cantor_function, cantor_function_exact, cantor_level, in_cantor_set, lebesgue_integral_simple,
    riemann_step_integral, step_to_simple, IntervalUnion,
};
use elastic_core::{
    action, action_algebra_check, cumulative_integral_from, derivative, elastic_distance,
    isometry_check, reconstruct, srsf_of, CellFunction, DpConfig, Grid, LatticePath,
    SampledFunction, TangentVector, DEFAULT_SLOPES,
};
use num_rational::Ratio;
use serde::Serialize;

pub const SUITES: [&str; 8] = [
    "fnspace", "srsf", "warp", "metric", "align", "oracle", "cantor", "measure",
];

/// The brute-force oracle enumerates every lattice path, so it only runs on
/// small lattices.
pub const MAX_ORACLE_M: usize = 10;

const TRIALS: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub invariant: &'static str,
    pub pass: bool,
    pub detail: String,
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    /// Records `worst ≤ tol`.
    fn bound(&mut self, invariant: &'static str, worst: f64, tol: f64) {
        self.checks.push(Check {
            suite: self.suite,
            invariant,
            pass: worst <= tol,
            detail: format!("worst {worst:.3e}, tolerance {tol:.1e}"),
        });
    }

    fn holds(&mut self, invariant: &'static str, pass: bool, detail: String) {
        self.checks.push(Check {
            suite: self.suite,
            invariant,
            pass,
            detail,
        });
    }
}

fn sup_diff(a: &SampledFunction, b: &SampledFunction) -> f64 {
    a.grid()
        .nodes()
        .iter()
        .chain(b.grid().nodes())
        .map(|&t| (a.eval(t) - b.eval(t)).abs())
        .fold(0.0, f64::max)
}

fn fnspace(r: &mut ChaCha8Rng, run: &mut Runner) {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let grid = random_grid(r, 50);
        let f = random_function(r, grid);
        let back = cumulative_integral_from(&derivative(&f), f.value_at_zero());
        worst = worst.max(sup_diff(&f, &back));
    }
    run.bound("integral_of_derivative_recovers_function", worst, 1e-12);
}

fn srsf(r: &mut ChaCha8Rng, run: &mut Runner) {
    let (mut round, mut length) = (0.0f64, 0.0f64);
    for _ in 0..TRIALS {
        let grid = random_grid(r, 60);
        let f = random_function(r, grid);
        let q = srsf_of(&f);
        round = round.max(sup_diff(&f, &reconstruct(&q, f.value_at_zero())));
        let tv: f64 = f.values().windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        length = length.max((q.norm().powi(2) - tv).abs() / tv);
    }
    run.bound("reconstruct_inverts_srsf", round, 1e-12);
    run.bound("squared_norm_is_length", length, 1e-12);
}

fn warp(r: &mut ChaCha8Rng, run: &mut Runner) {
    let (mut norm, mut comp, mut inv) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..TRIALS {
        let q = random_srsf(r, 40);
        let g1 = random_warp(r, 15);
        let g2 = random_warp(r, 11);
        let n = q.norm();
        norm = norm.max((action(&q, &g1).norm() - n).abs() / n);
        let rep = action_algebra_check(&q, &g1, &g2).unwrap();
        comp = comp.max(rep.composition / n);
        inv = inv.max(rep.inverse / n);
    }
    run.bound("action_preserves_norm", norm, 1e-12);
    // slivers between nearly coincident breakpoints carry cancelled slopes
    run.bound("action_respects_composition", comp, 1e-6);
    run.bound("action_respects_inverse", inv, 1e-6);
}

fn metric(r: &mut ChaCha8Rng, run: &mut Runner) {
    let mut worst = 0.0f64;
    let grid = Grid::uniform(17).unwrap();
    for _ in 0..TRIALS {
        let f = elastic_core::fixtures::random_increasing(r, grid.clone());
        let u = TangentVector::new(random_function(r, grid.clone()));
        let v = TangentVector::new(random_function(r, grid.clone()));
        let g = smooth_warp(33, 1.3);
        let rep = isometry_check(&u, &v, &f, &g).unwrap();
        worst = worst.max(rep.difference / rep.scale.max(f64::MIN_POSITIVE));
    }
    run.bound("fisher_rao_isometry_under_warping", worst, 1e-12);
}

fn align(r: &mut ChaCha8Rng, m: usize, run: &mut Runner) {
    let cfg = DpConfig::new(m);
    let (mut selfd, mut above, mut recovered) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..TRIALS {
        let q1 = random_srsf(r, 3 * m);
        let q2 = random_srsf(r, 2 * m + 1);
        selfd = selfd.max(elastic_distance(&q1, &q1, &cfg).unwrap().distance);
        let d = elastic_distance(&q1, &q2, &cfg).unwrap().distance;
        above = above.max(d - q1.q().l2_distance(q2.q()).unwrap());
        let p = random_lattice_path(r, m, &DEFAULT_SLOPES).unwrap();
        let warped = action(&q1, &p.to_warp(m));
        let res = elastic_distance(&q1, &warped, &cfg).unwrap();
        if res.path == p.transpose() && res.distance <= 1e-9 {
            recovered += 1;
        }
    }
    run.bound("self_distance_is_zero", selfd, 1e-12);
    run.bound("alignment_never_increases_distance", above, 1e-12);
    run.holds(
        "lattice_warps_are_recovered",
        recovered == TRIALS,
        format!("{recovered}/{TRIALS} recovered"),
    );
}

fn all_paths(m: usize, slopes: &[(u32, u32)]) -> Vec<LatticePath> {
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

fn oracle(r: &mut ChaCha8Rng, m: usize, run: &mut Runner) {
    let cfg = DpConfig::new(m);
    let paths = all_paths(m, &DEFAULT_SLOPES);
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let q1 = random_srsf(r, 2 * m + 1);
        let q2 = random_srsf(r, 3 * m - 1);
        let cost = |p: &LatticePath| {
            let d = q1.q().l2_distance(action(&q2, &p.to_warp(m)).q()).unwrap();
            d * d
        };
        let best = paths.iter().map(cost).fold(f64::INFINITY, f64::min);
        let dp = elastic_distance(&q1, &q2, &cfg).unwrap();
        worst = worst.max((dp.cost - best).abs() / best.max(1.0));
    }
    run.bound("dp_matches_brute_force", worst, 1e-12);
}

fn cantor(r: &mut ChaCha8Rng, run: &mut Runner) {
    let exact = |p: u64, q: u64| cantor_function_exact(p, q, 52).unwrap();
    let half = Ratio::new(1u64, 2);
    let golden = [
        (0, 1, Ratio::from_integer(0)),
        (1, 1, Ratio::from_integer(1)),
        (1, 3, half),
        (1, 2, half),
        (2, 3, half),
        (1, 9, Ratio::new(1, 4)),
        (2, 9, Ratio::new(1, 4)),
        (7, 9, Ratio::new(3, 4)),
        (8, 9, Ratio::new(3, 4)),
    ];
    let misses: Vec<String> = golden
        .iter()
        .filter(|&&(p, q, v)| exact(p, q) != v)
        .map(|&(p, q, _)| format!("{p}/{q}"))
        .collect();
    run.holds(
        "golden_values",
        misses.is_empty(),
        format!("mismatches: {misses:?}"),
    );

    let bad_level = (0..=20u32)
        .find(|&m| cantor_level(m).unwrap().measure() != Ratio::new(2u64.pow(m), 3u64.pow(m)));
    run.holds(
        "level_measures_exact",
        bad_level.is_none(),
        format!("first failing level: {bad_level:?}"),
    );

    let mut xs: Vec<f64> = (0..10_000).map(|_| rand::Rng::random::<f64>(r)).collect();
    xs.sort_by(f64::total_cmp);
    let ys: Vec<f64> = xs.iter().map(|&x| cantor_function(x, 52)).collect();
    let drops = ys.windows(2).filter(|w| w[1] < w[0]).count();
    run.holds(
        "monotone",
        drops == 0,
        format!("{drops} decreases over 10000 samples"),
    );

    let members = [0.0, 0.25, 1.0 / 3.0, 0.75, 1.0];
    let outsiders = [0.5, 0.4, 5.0 / 9.0];
    let ok = members.iter().all(|&x| in_cantor_set(x, 30))
        && outsiders.iter().all(|&x| !in_cantor_set(x, 30));
    run.holds(
        "membership",
        ok,
        "triadic endpoints and middle thirds".into(),
    );
}

fn measure(r: &mut ChaCha8Rng, run: &mut Runner) {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let grid = random_grid(r, 30);
        let cells = (0..29)
            .map(|_| rand::Rng::random_range(r, -3.0..3.0))
            .collect();
        let psi = CellFunction::new(grid, cells).unwrap();
        let a = riemann_step_integral(&psi);
        let b = lebesgue_integral_simple(&step_to_simple(&psi));
        let scale: f64 = psi.cells().iter().map(|c| c.abs()).sum();
        worst = worst.max((a - b).abs() / scale);
    }
    run.bound("riemann_equals_lebesgue", worst, 1e-13);

    let mut add = 0.0f64;
    for _ in 0..TRIALS {
        let mut pts: Vec<f64> = (0..4).map(|_| rand::Rng::random::<f64>(r)).collect();
        pts.sort_by(f64::total_cmp);
        let a = IntervalUnion::interval(pts[0], pts[1]).unwrap();
        let b = IntervalUnion::interval(pts[2], pts[3]).unwrap();
        add = add.max((a.union(&b).measure() - a.measure() - b.measure()).abs());
    }
    run.bound("measure_is_additive_on_disjoint_sets", add, 1e-15);
}

/// Runs `suites` (all when empty) with lattice size `m`. The oracle suite
/// is skipped above [`MAX_ORACLE_M`].
pub fn run(seed: u64, suites: &[String], m: usize) -> Vec<Check> {
    let wanted = |s: &str| suites.is_empty() || suites.iter().any(|x| x == s);
    let mut checks = Vec::new();
    for (k, &suite) in SUITES.iter().enumerate() {
        if !wanted(suite) || (suite == "oracle" && m > MAX_ORACLE_M) {
            continue;
        }
        // each suite draws from its own stream so selection does not shift results
        let mut r = rng(seed.wrapping_mul(31).wrapping_add(k as u64));
        let mut run = Runner {
            suite,
            checks: Vec::new(),
        };
        match suite {
            "fnspace" => fnspace(&mut r, &mut run),
            "srsf" => srsf(&mut r, &mut run),
            "warp" => warp(&mut r, &mut run),
            "metric" => metric(&mut r, &mut run),
            "align" => align(&mut r, m, &mut run),
            "oracle" => oracle(&mut r, m, &mut run),
            "cantor" => cantor(&mut r, &mut run),
            "measure" => measure(&mut r, &mut run),
            _ => unreachable!(),
        }
        checks.extend(run.checks);
    }
    checks
}
