//! `elastic`: alignment, geodesics and diagnostics for sampled functions.

mod commands;
mod io;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elastic_core::{DpConfig, DEFAULT_SLOPES};

use crate::io::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "elastic",
    version,
    about = "Elastic alignment of functions on [0,1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DpArgs {
    /// Lattice intervals per axis.
    #[arg(long, default_value_t = 64)]
    grid_size: usize,
    /// Allowed steps as `a:b` pairs, comma separated.
    #[arg(long, value_parser = parse_slopes)]
    slopes: Option<Slopes>,
    /// Restrict the search to a band of this half-width around the diagonal.
    #[arg(long)]
    band: Option<usize>,
}

impl DpArgs {
    fn config(&self) -> DpConfig {
        let mut cfg = DpConfig::new(self.grid_size)
            .with_slopes(self.slopes.as_ref().map_or(&DEFAULT_SLOPES[..], |s| &s.0));
        if let Some(w) = self.band {
            cfg = cfg.with_band(w);
        }
        cfg
    }
}

#[derive(Args, Clone, Copy)]
struct Rescale {
    /// Map abscissae affinely from [first, last] onto [0, 1].
    #[arg(long)]
    rescale: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write the SRSF of a function as `midpoint,q` rows.
    Srsf {
        input: PathBuf,
        #[arg(short, long, default_value = "q.csv")]
        out: PathBuf,
        #[command(flatten)]
        rescale: Rescale,
    },
    /// Rebuild a function from SRSF rows written by `srsf`.
    Reconstruct {
        input: PathBuf,
        /// Value at t = 0.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        f0: f64,
        #[arg(short, long, default_value = "f.csv")]
        out: PathBuf,
    },
    /// Align f2 to f1; writes result.json, aligned.csv and warp.csv.
    Align {
        #[arg(required_unless_present = "pairs")]
        f1: Option<PathBuf>,
        #[arg(required_unless_present = "pairs")]
        f2: Option<PathBuf>,
        /// File of `f1 f2` lines to align concurrently.
        #[arg(long, conflicts_with_all = ["f1", "f2"])]
        pairs: Option<PathBuf>,
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
        /// Compare raw SRSFs instead of unit-normalized ones.
        #[arg(long)]
        unnormalized: bool,
        #[command(flatten)]
        dp: DpArgs,
        #[command(flatten)]
        rescale: Rescale,
    },
    /// Unwarped distance between SRSFs.
    FisherRao {
        f1: PathBuf,
        f2: PathBuf,
        #[command(flatten)]
        rescale: Rescale,
    },
    /// Functions along the SRSF segment from f1 to f2, one CSV per step.
    Geodesic {
        f1: PathBuf,
        f2: PathBuf,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Align f2 to f1 first.
        #[arg(long)]
        aligned: bool,
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
        #[command(flatten)]
        dp: DpArgs,
        #[command(flatten)]
        rescale: Rescale,
    },
    /// Split f into a constant-speed function and a warp; writes h.csv and gamma.csv.
    ConstantSpeed {
        input: PathBuf,
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
        #[command(flatten)]
        rescale: Rescale,
    },
    /// Evaluate the Cantor function or list a construction level.
    Cantor {
        #[arg(long)]
        eval: Vec<f64>,
        #[arg(long)]
        level: Option<u32>,
        /// Ternary digits to print.
        #[arg(long, default_value_t = 20)]
        digits: u32,
    },
    /// Run seeded self-checks; one JSON line per invariant.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these suites.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        suite: Vec<String>,
        /// Lattice size as `M=<n>`; the brute-force oracle runs when n ≤ 10.
        #[arg(long, default_value = "M=8", value_parser = parse_scale)]
        scale: usize,
    },
}

#[derive(Clone)]
struct Slopes(Vec<(u32, u32)>);

fn parse_slopes(s: &str) -> Result<Slopes, String> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("`{pair}` is not of the form a:b"))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("`{pair}`: {e}"))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect::<Result<_, _>>()
        .map(Slopes)
}

fn parse_scale(s: &str) -> Result<usize, String> {
    let n = s
        .strip_prefix("M=")
        .ok_or_else(|| format!("`{s}` is not of the form M=<n>"))?;
    n.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Srsf {
            input,
            out,
            rescale,
        } => commands::srsf(&input, &out, rescale.rescale)?,
        Command::Reconstruct { input, f0, out } => commands::reconstruct_cmd(&input, &out, f0)?,
        Command::Align {
            f1,
            f2,
            pairs,
            out,
            unnormalized,
            dp,
            rescale,
        } => {
            let opts = commands::AlignOptions {
                cfg: dp.config(),
                normalized: !unnormalized,
                rescale: rescale.rescale,
            };
            if let Some(list) = pairs {
                opts.cfg.validate()?;
                return commands::align_pairs(&list, &out, &opts);
            }
            let (f1, f2) = (f1.expect("required"), f2.expect("required"));
            let report = commands::align(&f1, &f2, &out, &opts)?;
            println!("{}", report.distance);
        }
        Command::FisherRao { f1, f2, rescale } => commands::fisher_rao(&f1, &f2, rescale.rescale)?,
        Command::Geodesic {
            f1,
            f2,
            steps,
            aligned,
            out,
            dp,
            rescale,
        } => commands::geodesic(
            &f1,
            &f2,
            &out,
            steps,
            aligned,
            &dp.config(),
            rescale.rescale,
        )?,
        Command::ConstantSpeed {
            input,
            out,
            rescale,
        } => commands::constant_speed_cmd(&input, &out, rescale.rescale)?,
        Command::Cantor {
            eval,
            level,
            digits,
        } => {
            if eval.is_empty() && level.is_none() {
                return Err(CliError::Input("pass --eval or --level".into()));
            }
            commands::cantor(&eval, level, digits)?
        }
        Command::Verify { seed, suite, scale } => {
            if scale < 2 {
                return Err(CliError::Input("scale must be at least M=2".into()));
            }
            let checks = verify::run(seed, &suite, scale);
            for c in &checks {
                println!(
                    "{}",
                    serde_json::to_string(c).expect("plain data serializes")
                );
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            println!(
                "{}",
                serde_json::json!({
                    "schema_version": commands::SCHEMA_VERSION,
                    "seed": seed,
                    "scale": scale,
                    "checks": checks.len(),
                    "failed": failed,
                })
            );
            if failed > 0 {
                return Err(CliError::Verify(format!(
                    "{failed} of {} checks",
                    checks.len()
                )));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("elastic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
