//! CSV ingestion, atomic output and exit-code mapping.

use std::fmt;
use std::io::Write;
use std::path::Path;

use elastic_core::{CellFunction, Error, SampledFunction};
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGrid(_)
            | Error::LengthMismatch { .. }
            | Error::NonFinite(_)
            | Error::DecreasingAbscissa { .. }
            | Error::InvalidConfig(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads a two-column `t,value` file. A first row that does not parse is
/// taken as a header; `#` starts a comment.
pub fn read_points(path: &Path) -> CliResult<(Vec<(f64, f64)>, Vec<u64>)> {
    let shown = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{shown}:{line}: expected 2 columns, found {}",
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(t), Ok(v)) => {
                points.push((t, v));
                lines.push(line);
            }
            _ if k == 0 => continue,
            _ => {
                return Err(CliError::Input(format!(
                    "{shown}:{line}: cannot parse `{},{}` as numbers",
                    &record[0], &record[1]
                )))
            }
        }
    }
    Ok((points, lines))
}

/// A sampled function on `[0,1]`. With `rescale`, the abscissae are first
/// mapped affinely from `[t_first, t_last]`.
pub fn read_function(path: &Path, rescale: bool) -> CliResult<SampledFunction> {
    let shown = path.display();
    let (mut points, lines) = read_points(path)?;
    if points.len() < 2 {
        return Err(CliError::Input(format!("{shown}: need at least two rows")));
    }
    let (a, b) = (points[0].0, points[points.len() - 1].0);
    if rescale && a < b {
        for p in points.iter_mut() {
            p.0 = (p.0 - a) / (b - a);
        }
        let last = points.len() - 1;
        points[last].0 = 1.0;
    } else if !rescale && a < b && (a != 0.0 || b != 1.0) {
        return Err(CliError::Input(format!(
            "{shown}: abscissae span [{a}, {b}], not [0, 1]; pass --rescale"
        )));
    }
    SampledFunction::from_points(&points).map_err(|e| match e {
        Error::DecreasingAbscissa { row } => {
            CliError::Input(format!("{shown}:{}: abscissa decreases", lines[row]))
        }
        Error::NonFinite(row) => {
            CliError::Input(format!("{shown}:{}: non-finite value", lines[row]))
        }
        other => CliError::Input(format!("{shown}: {other}")),
    })
}

/// Step values keyed by cell midpoint. The grid is recovered from
/// `t₀ = 0` and `t_{k+1} = 2 mₖ − tₖ`.
pub fn read_cells(path: &Path) -> CliResult<CellFunction> {
    let shown = path.display();
    let (points, lines) = read_points(path)?;
    if points.is_empty() {
        return Err(CliError::Input(format!("{shown}: no rows")));
    }
    let mut nodes = vec![0.0];
    for (k, &(m, _)) in points.iter().enumerate() {
        let next = 2.0 * m - nodes[k];
        if !(next > nodes[k]) {
            return Err(CliError::Input(format!(
                "{shown}:{}: midpoint does not lie right of the previous cell",
                lines[k]
            )));
        }
        nodes.push(next);
    }
    let end = *nodes.last().unwrap();
    if (end - 1.0).abs() > 1e-9 {
        return Err(CliError::Input(format!(
            "{shown}: cells end at {end}, not at 1"
        )));
    }
    *nodes.last_mut().unwrap() = 1.0;
    let grid =
        elastic_core::Grid::new(nodes).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    CellFunction::new(grid, points.iter().map(|p| p.1).collect())
        .map_err(|e| CliError::Input(format!("{shown}: {e}")))
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn write_csv(
    path: &Path,
    header: [&str; 2],
    rows: impl IntoIterator<Item = (f64, f64)>,
) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| CliError::Input(format!("{}: {e}", path.display()));
    w.write_record(header).map_err(to_err)?;
    for (a, b) in rows {
        w.write_record([a.to_string(), b.to_string()])
            .map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    write_atomic(path, &bytes)
}

pub fn write_function(path: &Path, f: &SampledFunction) -> CliResult<()> {
    let rows = f
        .grid()
        .nodes()
        .iter()
        .copied()
        .zip(f.values().iter().copied());
    write_csv(path, ["t", "value"], rows)
}

pub fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("plain data serializes")
    );
}
