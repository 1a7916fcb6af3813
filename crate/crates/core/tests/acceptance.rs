//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use elastic_core::fixtures::{
    random_function, random_grid, random_increasing, random_lattice_path, random_srsf, rng,
    smooth_warp,
};
use elastic_core::measurelab::{
    cantor_function, cantor_function_exact, cantor_level, lebesgue_integral_simple,
    riemann_step_integral, step_to_simple, IntervalUnion, SimpleFunction,
};
use elastic_core::{
    action, derivative, elastic_distance, fisher_rao_inner, isometry_check, reconstruct,
    scalar_invariance_check, shape_distance, srsf_of, srsf_pushforward, CellFunction, DpConfig,
    Grid, SampledFunction, Srsf, TangentVector, DEFAULT_SLOPES,
};
use num_rational::Ratio;
use rand::Rng;

use common::{brute_force, orders, simpson};

const EPS: f64 = f64::EPSILON;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(cond: bool, detail: String) -> Verdict {
    if cond {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn within(elapsed: Duration, limit_secs: u64, v: Verdict) -> Verdict {
    match v {
        Verdict::Pass(d) if elapsed.as_secs_f64() > limit_secs as f64 => Verdict::Fail(format!(
            "{d}; took {:.2}s, limit {limit_secs}s",
            elapsed.as_secs_f64()
        )),
        other => other,
    }
}

fn srsf_round_trip() -> Verdict {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for n in [17, 257, 4097] {
        for _ in 0..200 {
            let f = {
                let g = random_grid(&mut r, n);
                random_function(&mut r, g)
            };
            let back = reconstruct(&srsf_of(&f), f.value_at_zero());
            if back.grid() != f.grid() {
                return Verdict::Fail("reconstruction changed the grid".into());
            }
            for (a, b) in back.values().iter().zip(f.values()) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    within(
        start.elapsed(),
        5,
        check(
            worst <= 1e-9,
            format!("600 functions, max nodal error {worst:.3e} (limit 1e-9)"),
        ),
    )
}

fn dp_oracle() -> Verdict {
    let start = Instant::now();
    let slopes = [(1, 1), (1, 2), (2, 1)];
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut mismatched = 0;
    let mut cases = 0;
    for m in 4..=8 {
        let cfg = DpConfig::new(m).with_slopes(&slopes);
        for _ in 0..50 {
            let cells = r.random_range(3..12);
            let q1 = random_srsf(&mut r, cells);
            let q2 = random_srsf(&mut r, cells);
            let dp = elastic_distance(&q1, &q2, &cfg).unwrap();
            let (best, path) = brute_force(&q1, &q2, m, &slopes);
            worst = worst.max((dp.cost - best).abs());
            if dp.path != path {
                mismatched += 1;
            }
            cases += 1;
        }
    }
    within(
        start.elapsed(),
        30,
        check(
            worst <= 1e-12 && mismatched == 0,
            format!(
                "{cases} pairs, M = 4..8, max |cost − brute force| {worst:.3e} (limit 1e-12), \
                 {mismatched} path mismatches"
            ),
        ),
    )
}

fn known_warp_recovery() -> Verdict {
    let start = Instant::now();
    let m = 64;
    let cfg = DpConfig::new(m);
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    let mut mismatched = 0;
    for _ in 0..50 {
        let cells = r.random_range(8..40);
        let q1 = random_srsf(&mut r, cells);
        let p0 = random_lattice_path(&mut r, m, &DEFAULT_SLOPES).unwrap();
        let q2 = action(&q1, &p0.to_warp(m));
        let res = elastic_distance(&q1, &q2, &cfg).unwrap();
        worst = worst.max(res.distance);
        // (q₁∘γ₀, γ) returns to q₁ exactly when γ = γ₀⁻¹
        if res.path != p0.transpose() {
            mismatched += 1;
        }
    }
    within(
        start.elapsed(),
        60,
        check(
            worst <= 1e-8 && mismatched == 0,
            format!(
                "50 lattice warps at M = 64, max distance {worst:.3e} (limit 1e-8), \
                 {mismatched} paths differ from the inverse of the generating warp"
            ),
        ),
    )
}

fn norm_preservation() -> Verdict {
    let mut r = rng(4);
    let mut worst_norm: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    for _ in 0..100 {
        let q1 = random_srsf(&mut r, 30);
        let q2 = random_srsf(&mut r, 30);
        let g = elastic_core::fixtures::random_warp(&mut r, 25);
        let (a1, a2) = (action(&q1, &g), action(&q2, &g));
        worst_norm = worst_norm.max((a1.norm() - q1.norm()).abs() / (EPS * q1.norm()));
        let before = q1.q().l2_distance(q2.q()).unwrap();
        let after = a1.q().l2_distance(a2.q()).unwrap();
        worst_dist = worst_dist.max((after - before).abs() / (EPS * before));
    }
    let exact = worst_norm <= 8.0 && worst_dist <= 8.0;

    // smooth SRSFs and a smooth warp, sampled at N cells, against the
    // continuum values
    let q1 = |t: f64| (3.0 * t).cos() + 0.5;
    let q2 = |t: f64| (4.0 * t).sin() - 0.25;
    let a: f64 = 1.5;
    let fine = 1 << 16;
    let norm_exact = simpson(|t| q1(t).powi(2), 0.0, 1.0, fine).sqrt();
    let dist_exact = simpson(|t| (q1(t) - q2(t)).powi(2), 0.0, 1.0, fine).sqrt();
    let mut e_norm = Vec::new();
    let mut e_dist = Vec::new();
    for n in [256, 512, 1024] {
        let grid = Grid::uniform(n + 1).unwrap();
        let s1 = Srsf::new(CellFunction::from_midpoints(grid.clone(), q1).unwrap());
        let s2 = Srsf::new(CellFunction::from_midpoints(grid, q2).unwrap());
        let g = smooth_warp(n + 1, a);
        let (a1, a2) = (action(&s1, &g), action(&s2, &g));
        e_norm.push((a1.norm() - norm_exact).abs());
        e_dist.push((a1.q().l2_distance(a2.q()).unwrap() - dist_exact).abs());
    }
    let ok_orders = [&e_norm, &e_dist]
        .iter()
        .all(|e| orders(e).iter().all(|&p| p >= 1.0));
    check(
        exact && ok_orders,
        format!(
            "exact cases: norm {worst_norm:.1} ulp, distance {worst_dist:.1} ulp (limit 8); \
             smooth-warp orders norm {:.2?}, distance {:.2?} (need ≥ 1)",
            orders(&e_norm),
            orders(&e_dist)
        ),
    )
}

fn scalar_invariance() -> Verdict {
    let cfg = DpConfig::new(32);
    let mut r = rng(5);
    let mut failures = 0;
    for _ in 0..100 {
        let q1 = random_srsf(&mut r, 20);
        let q2 = random_srsf(&mut r, 20);
        for (b, c) in [(2.0, 3.0), (1e-3, 1e-3), (5.0, 0.1)] {
            if !scalar_invariance_check(&q1, &q2, b, c, &cfg).unwrap() {
                failures += 1;
            }
        }
    }
    check(
        failures == 0,
        format!("300 scaled instances at M = 32, {failures} path changes"),
    )
}

fn pushforward_identity() -> Verdict {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = {
            let g = random_grid(&mut r, 40);
            random_increasing(&mut r, g)
        };
        let v1 = TangentVector::new({
            let g = random_grid(&mut r, 30);
            random_function(&mut r, g)
        });
        let v2 = TangentVector::new({
            let g = random_grid(&mut r, 35);
            random_function(&mut r, g)
        });
        let lhs = srsf_pushforward(&v1, &f)
            .unwrap()
            .dot(&srsf_pushforward(&v2, &f).unwrap())
            .unwrap();
        let rhs = fisher_rao_inner(&v1, &v2, &f).unwrap();
        let prod = derivative(&v1.v)
            .zip_with(&derivative(&v2.v), |a, b| a * b)
            .unwrap();
        let terms = prod
            .zip_with(&derivative(&f), |p, s| (0.25 * p / s).abs())
            .unwrap();
        let scale: f64 = terms
            .cells()
            .iter()
            .zip(terms.grid().widths())
            .map(|(c, w)| c * w)
            .sum();
        worst = worst.max((lhs - rhs).abs() / (EPS * scale));
    }

    // u, v, f on the lattice grid, warped by lattice paths
    let m = 16;
    let lattice = Grid::uniform(m + 1).unwrap();
    let mut worst_iso: f64 = 0.0;
    for _ in 0..100 {
        let f = random_increasing(&mut r, lattice.clone());
        let u = TangentVector::new(random_function(&mut r, lattice.clone()));
        let v = TangentVector::new(random_function(&mut r, lattice.clone()));
        let g = random_lattice_path(&mut r, m, &DEFAULT_SLOPES)
            .unwrap()
            .to_warp(m);
        let rep = isometry_check(&u, &v, &f, &g).unwrap();
        worst_iso = worst_iso.max(rep.difference.abs() / (EPS * rep.scale));
    }

    // smooth u, v, f composed with a smooth warp and sampled at N nodes,
    // against the continuum inner product
    let (u, du) = (|t: f64| (2.0 * t).sin(), |t: f64| 2.0 * (2.0 * t).cos());
    let (v, dv) = (|t: f64| t * t - t, |t: f64| 2.0 * t - 1.0);
    let (f, df) = (|t: f64| t + 0.3 * t * t, |t: f64| 1.0 + 0.6 * t);
    let exact = simpson(|t| 0.25 * du(t) * dv(t) / df(t), 0.0, 1.0, 1 << 16);
    let mut errors = Vec::new();
    for n in [256, 512, 1024] {
        let g = smooth_warp(n + 1, 1.2);
        let sample = |h: &dyn Fn(f64) -> f64| {
            let vals = g.values().iter().map(|&s| h(s)).collect();
            SampledFunction::new(g.grid().clone(), vals).unwrap()
        };
        let got = fisher_rao_inner(
            &TangentVector::new(sample(&u)),
            &TangentVector::new(sample(&v)),
            &sample(&f),
        )
        .unwrap();
        errors.push((got - exact).abs());
    }
    let ok = worst <= 8.0 && worst_iso <= 8.0 && orders(&errors).iter().all(|&p| p >= 1.0);
    check(
        ok,
        format!(
            "pushforward {worst:.1} ulp, lattice-warp isometry {worst_iso:.1} ulp (limit 8); \
             dense-warp orders {:.2?} (need ≥ 1)",
            orders(&errors)
        ),
    )
}

fn cantor_golden() -> Verdict {
    let mut bad = Vec::new();
    let golden: [(&[f64], f64); 5] = [
        (&[0.0], 0.0),
        (&[1.0], 1.0),
        (&[1.0 / 3.0, 0.4, 0.5, 0.6, 2.0 / 3.0], 0.5),
        (&[1.0 / 9.0, 0.15, 0.2, 2.0 / 9.0], 0.25),
        (&[7.0 / 9.0, 0.8, 0.85, 8.0 / 9.0], 0.75),
    ];
    for (xs, want) in golden {
        for &x in xs {
            let got = cantor_function(x, 52);
            if got != want {
                bad.push(format!("f({x}) = {got}, want {want}"));
            }
        }
    }
    for (p, q, want) in [
        (1, 3, (1, 2)),
        (2, 3, (1, 2)),
        (1, 9, (1, 4)),
        (8, 9, (3, 4)),
    ] {
        if cantor_function_exact(p, q, 52).unwrap() != Ratio::new(want.0, want.1) {
            bad.push(format!("exact f({p}/{q})"));
        }
    }
    let samples: Vec<f64> = (0..10_000)
        .map(|k| cantor_function(k as f64 / 9999.0, 52))
        .collect();
    if !samples.windows(2).all(|w| w[0] <= w[1]) {
        bad.push("not monotone on 10^4 samples".into());
    }
    for m in 0..=20u32 {
        let level = cantor_level(m).unwrap();
        let want = Ratio::new(2u64, 3).pow(m as i32);
        let summed = level
            .intervals_exact()
            .map(|(lo, hi)| Ratio::new(hi - lo, level.denominator()))
            .fold(Ratio::from_integer(0u64), |a, b| a + b);
        if level.measure() != want || summed != want {
            bad.push(format!("level {m} measure"));
        }
    }
    let l1: Vec<_> = cantor_level(1).unwrap().intervals_exact().collect();
    let l2: Vec<_> = cantor_level(2).unwrap().intervals_exact().collect();
    if l1 != [(0, 1), (2, 3)] || l2 != [(0, 1), (2, 3), (6, 7), (8, 9)] {
        bad.push("level 1/2 intervals".into());
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "golden values exact, monotone on 10^4 samples, measures (2/3)^m exact for m ≤ 20"
                .into()
        } else {
            bad.join("; ")
        },
    )
}

fn riemann_lebesgue() -> Verdict {
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let n = r.random_range(2..60);
        let grid = random_grid(&mut r, n);
        let cells: Vec<f64> = (0..n - 1).map(|_| r.random_range(-5.0..5.0)).collect();
        let psi = CellFunction::new(grid.clone(), cells.clone()).unwrap();
        let riemann = riemann_step_integral(&psi);
        let nodes = grid.nodes();
        let phi = SimpleFunction::new(
            cells
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, IntervalUnion::interval(nodes[i], nodes[i + 1]).unwrap()))
                .collect(),
        )
        .unwrap();
        let scale: f64 = cells
            .iter()
            .zip(grid.widths())
            .map(|(c, w)| (c * w).abs())
            .sum();
        for lebesgue in [
            lebesgue_integral_simple(&phi),
            lebesgue_integral_simple(&phi.canonical()),
            lebesgue_integral_simple(&step_to_simple(&psi)),
        ] {
            worst = worst.max((riemann - lebesgue).abs() / (EPS * scale));
        }
    }
    check(
        worst <= 4.0,
        format!("500 step functions, max difference {worst:.2} ulp (limit 4)"),
    )
}

fn read_points(path: &str) -> Result<Vec<(f64, f64)>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let mut pts = Vec::new();
    for line in text.lines() {
        let mut it = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty());
        if let (Some(a), Some(b)) = (it.next(), it.next()) {
            if let (Ok(t), Ok(v)) = (a.parse::<f64>(), b.parse::<f64>()) {
                pts.push((t, v));
            }
        }
    }
    let (lo, hi) = (
        pts.first().ok_or("empty file")?.0,
        pts.last().ok_or("empty file")?.0,
    );
    Ok(pts
        .into_iter()
        .map(|(t, v)| ((t - lo) / (hi - lo), v))
        .collect())
}

fn reference_pair() -> Verdict {
    let (Ok(p1), Ok(p2)) = (
        std::env::var("ELASTIC_FIG1_F1"),
        std::env::var("ELASTIC_FIG1_F2"),
    ) else {
        return Verdict::Skip(
            "optional; set ELASTIC_FIG1_F1 and ELASTIC_FIG1_F2 to the two downloaded point files"
                .into(),
        );
    };
    let load = |p: &str| -> Result<SampledFunction, String> {
        let mut pts = read_points(p)?;
        if let Some(last) = pts.last_mut() {
            last.0 = 1.0;
        }
        SampledFunction::from_points(&pts).map_err(|e| e.to_string())
    };
    match (load(&p1), load(&p2)) {
        (Ok(f1), Ok(f2)) => {
            let res = shape_distance(&f1, &f2, &DpConfig::new(256).with_band(24)).unwrap();
            check(
                (res.distance - 0.1436).abs() <= 0.01,
                format!("distance {:.4} (target 0.1436 ± 0.01)", res.distance),
            )
        }
        (Err(e), _) | (_, Err(e)) => Verdict::Fail(e),
    }
}

fn mesh_convergence() -> Verdict {
    let grid = Grid::uniform(2049).unwrap();
    let f1 =
        SampledFunction::from_fn(grid.clone(), |t| (2.0 * std::f64::consts::PI * t).sin()).unwrap();
    let f2 = SampledFunction::from_fn(grid, |t| {
        let s = t.powf(1.6);
        (2.0 * std::f64::consts::PI * s).sin()
    })
    .unwrap();
    let (q1, q2) = (srsf_of(&f1), srsf_of(&f2));
    let d: Vec<f64> = [16, 32, 64, 128]
        .iter()
        .map(|&m| {
            elastic_distance(&q1, &q2, &DpConfig::new(m))
                .unwrap()
                .distance
        })
        .collect();
    let dec: Vec<f64> = d.windows(2).map(|w| w[0] - w[1]).collect();
    let ok = dec.iter().all(|&x| x >= 0.0) && dec.windows(2).all(|w| w[1] < w[0]);
    check(
        ok,
        format!("distances {d:.6?} at M = 16, 32, 64, 128; decrements {dec:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Verdict); 10] = [
        (1, "SRSF round trip", srsf_round_trip),
        (2, "DP equals brute-force enumeration", dp_oracle),
        (3, "known-warp recovery", known_warp_recovery),
        (4, "norm and distance preservation", norm_preservation),
        (
            5,
            "scalar invariance of the optimal path",
            scalar_invariance,
        ),
        (6, "pushforward identity and isometry", pushforward_identity),
        (7, "Cantor golden values", cantor_golden),
        (8, "Riemann/Lebesgue agreement", riemann_lebesgue),
        (9, "reference pair distance", reference_pair),
        (
            10,
            "mesh convergence of the elastic distance",
            mesh_convergence,
        ),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("{tag} criterion {id:>2} {name} [{secs:.2}s]: {detail}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
