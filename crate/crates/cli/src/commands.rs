use std::path::{Path, PathBuf};

use elastic_core::measurelab::{
    cantor_function, cantor_level, in_cantor_set, ternary_expansion, MAX_BINARY_DIGITS,
    MAX_TERNARY_DIGITS,
};
use elastic_core::{
    constant_convention, constant_speed, elastic_distance_total, fisher_rao_distance,
    geodesic_path, reconstruct, shape_distance, srsf_of, AlignmentResult, DpConfig, Error, Srsf,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::io::{
    print_json, read_cells, read_function, write_csv, write_function, write_json, CliError,
    CliResult,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const CONSTANT_CONVENTION: &str =
    "an input has zero length; distance is the unwarped L2 distance between SRSFs and the warp is the identity";

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub grid_size: usize,
    pub slope_set: Vec<[u32; 2]>,
    pub band_width: Option<usize>,
    pub normalized: bool,
    pub rescale: bool,
    pub inputs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AlignReport {
    pub schema_version: u32,
    pub distance: f64,
    pub cost: f64,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<&'static str>,
    pub nodes_expanded: u64,
    pub passes: usize,
    pub warp: Vec<[f64; 2]>,
    pub path: Vec<[usize; 2]>,
    pub config: ConfigEcho,
}

impl AlignReport {
    fn new(res: &AlignmentResult, config: ConfigEcho) -> Self {
        AlignReport {
            schema_version: SCHEMA_VERSION,
            distance: res.distance,
            cost: res.cost,
            degenerate: res.degenerate,
            convention: res.degenerate.then_some(CONSTANT_CONVENTION),
            nodes_expanded: res.nodes_expanded,
            passes: res.passes,
            warp: res.warp_points().into_iter().map(|(t, g)| [t, g]).collect(),
            path: res.path.points().iter().map(|&(i, j)| [i, j]).collect(),
            config,
        }
    }
}

pub struct AlignOptions {
    pub cfg: DpConfig,
    pub normalized: bool,
    pub rescale: bool,
}

fn echo(opts: &AlignOptions, inputs: &[&Path]) -> ConfigEcho {
    ConfigEcho {
        grid_size: opts.cfg.grid_size,
        slope_set: opts.cfg.slope_set.iter().map(|&(a, b)| [a, b]).collect(),
        band_width: opts.cfg.band_width,
        normalized: opts.normalized,
        rescale: opts.rescale,
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
    }
}

/// Writes `result.json`, `aligned.csv` and `warp.csv` into `out`. Returns
/// the report; zero-length input is reported and then surfaces as a
/// domain error.
pub fn align(
    f1_path: &Path,
    f2_path: &Path,
    out: &Path,
    opts: &AlignOptions,
) -> CliResult<AlignReport> {
    opts.cfg.validate()?;
    let f1 = read_function(f1_path, opts.rescale)?;
    let f2 = read_function(f2_path, opts.rescale)?;
    let (q1, q2) = (srsf_of(&f1), srsf_of(&f2));
    let res = if opts.normalized {
        match shape_distance(&f1, &f2, &opts.cfg) {
            Err(Error::ZeroLength) => constant_convention(&q1, &q2, &opts.cfg)?,
            other => other?,
        }
    } else {
        elastic_distance_total(&q1, &q2, &opts.cfg)?
    };
    let report = AlignReport::new(&res, echo(opts, &[f1_path, f2_path]));
    write_json(&out.join("result.json"), &report)?;
    let aligned = f1
        .grid()
        .nodes()
        .iter()
        .map(|&t| (t, f2.eval(res.warp.eval(t))));
    write_csv(&out.join("aligned.csv"), ["t", "value"], aligned)?;
    write_csv(&out.join("warp.csv"), ["t", "gamma"], res.warp_points())?;
    if res.degenerate {
        return Err(CliError::Domain(CONSTANT_CONVENTION.into()));
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
struct PairEntry {
    index: usize,
    f1: String,
    f2: String,
    output: String,
    distance: Option<f64>,
    error: Option<String>,
    exit_code: u8,
}

#[derive(Debug, Serialize)]
struct PairsReport {
    schema_version: u32,
    pairs: Vec<PairEntry>,
}

/// Aligns every `f1 f2` line of `list` concurrently; relative paths are
/// resolved against the list's directory. Each pair gets its own output
/// directory, and `pairs.json` summarizes them in list order.
pub fn align_pairs(list: &Path, out: &Path, opts: &AlignOptions) -> CliResult<u8> {
    let text = std::fs::read_to_string(list)
        .map_err(|e| CliError::Input(format!("{}: {e}", list.display())))?;
    let base = list.parent().unwrap_or(Path::new("."));
    let mut pairs: Vec<(PathBuf, PathBuf)> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CliError::Input(format!(
                "{}:{}: expected two paths",
                list.display(),
                k + 1
            )));
        }
        pairs.push((base.join(fields[0]), base.join(fields[1])));
    }
    let entries: Vec<PairEntry> = pairs
        .par_iter()
        .enumerate()
        .map(|(index, (a, b))| {
            let dir = out.join(format!("pair_{:04}", index + 1));
            let (distance, error, exit_code) = match align(a, b, &dir, opts) {
                Ok(r) => (Some(r.distance), None, 0),
                Err(e) => (None, Some(e.to_string()), e.exit_code()),
            };
            PairEntry {
                index: index + 1,
                f1: a.display().to_string(),
                f2: b.display().to_string(),
                output: dir.display().to_string(),
                distance,
                error,
                exit_code,
            }
        })
        .collect();
    let code = entries.iter().map(|e| e.exit_code).max().unwrap_or(0);
    write_json(
        &out.join("pairs.json"),
        &PairsReport {
            schema_version: SCHEMA_VERSION,
            pairs: entries,
        },
    )?;
    Ok(code)
}

pub fn srsf(input: &Path, out: &Path, rescale: bool) -> CliResult<()> {
    let f = read_function(input, rescale)?;
    let q = srsf_of(&f);
    let grid = q.grid();
    let rows = (0..grid.num_cells()).map(|k| (grid.midpoint(k), q.q().cells()[k]));
    write_csv(out, ["midpoint", "q"], rows)
}

pub fn reconstruct_cmd(input: &Path, out: &Path, f0: f64) -> CliResult<()> {
    let q = Srsf::new(read_cells(input)?);
    write_function(out, &reconstruct(&q, f0))
}

#[derive(Debug, Serialize)]
struct DistanceReport {
    schema_version: u32,
    distance: f64,
}

pub fn fisher_rao(a: &Path, b: &Path, rescale: bool) -> CliResult<()> {
    let f1 = read_function(a, rescale)?;
    let f2 = read_function(b, rescale)?;
    print_json(&DistanceReport {
        schema_version: SCHEMA_VERSION,
        distance: fisher_rao_distance(&f1, &f2),
    });
    Ok(())
}

/// One CSV per step, `geodesic_00.csv` first.
pub fn geodesic(
    a: &Path,
    b: &Path,
    out: &Path,
    steps: usize,
    aligned: bool,
    cfg: &DpConfig,
    rescale: bool,
) -> CliResult<()> {
    cfg.validate()?;
    let f1 = read_function(a, rescale)?;
    let f2 = read_function(b, rescale)?;
    let path = geodesic_path(&f1, &f2, steps, aligned, cfg)?;
    let width = (steps - 1).to_string().len().max(2);
    for (k, f) in path.iter().enumerate() {
        write_function(&out.join(format!("geodesic_{k:0width$}.csv")), f)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SpeedReport {
    schema_version: u32,
    length: f64,
}

/// Writes `h.csv` and `gamma.csv` with `f = h∘γ`.
pub fn constant_speed_cmd(input: &Path, out: &Path, rescale: bool) -> CliResult<()> {
    let f = read_function(input, rescale)?;
    let cs = constant_speed(&f)?;
    write_function(&out.join("h.csv"), &cs.h)?;
    write_function(&out.join("gamma.csv"), cs.gamma.gamma())?;
    print_json(&SpeedReport {
        schema_version: SCHEMA_VERSION,
        length: cs.length,
    });
    Ok(())
}

#[derive(Debug, Serialize)]
struct CantorEval {
    x: f64,
    value: f64,
    ternary: String,
    in_cantor_set: bool,
}

#[derive(Debug, Serialize)]
struct CantorLevelReport {
    level: u32,
    measure: String,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<[String; 2]>>,
}

/// Levels with more intervals than this report only their count.
pub const MAX_LISTED_INTERVALS: u64 = 1 << 12;

pub fn cantor(eval: &[f64], level: Option<u32>, digits: u32) -> CliResult<()> {
    let digits = digits.min(MAX_TERNARY_DIGITS);
    for &x in eval {
        if !(0.0..=1.0).contains(&x) {
            return Err(CliError::Domain(format!("{x} is outside [0, 1]")));
        }
        let d = ternary_expansion(x, digits).expect("x lies in [0, 1]");
        let ternary: String = d.iter().map(|c| char::from(b'0' + c)).collect();
        print_json(&CantorEval {
            x,
            value: cantor_function(x, MAX_BINARY_DIGITS),
            ternary: format!("0.{ternary}"),
            in_cantor_set: in_cantor_set(x, digits),
        });
    }
    if let Some(m) = level {
        let c = cantor_level(m)?;
        let den = c.denominator();
        let intervals = (c.count() <= MAX_LISTED_INTERVALS).then(|| {
            c.intervals_exact()
                .map(|(a, b)| [format!("{a}/{den}"), format!("{b}/{den}")])
                .collect()
        });
        print_json(&CantorLevelReport {
            level: m,
            measure: c.measure().to_string(),
            count: c.count(),
            intervals,
        });
    }
    Ok(())
}
