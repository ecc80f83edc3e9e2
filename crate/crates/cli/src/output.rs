use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use zitter_core::dynamics::{Sample, Trajectory};
use zitter_core::spinor::rotor_decompose;

/// Trajectory columns, in file order.
pub const TRAJECTORY_COLUMNS: [&str; 41] = [
    "tau", "x0", "x1", "x2", "x3", "pi0", "pi1", "pi2", "pi3", "v0", "v1", "v2", "v3", "psi0",
    "psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "psi7", "H", "p2", "S12", "S13", "S23", "S01",
    "S02", "S03", "J01", "J02", "J03", "J12", "J13", "J23", "zbarz", "rho", "beta", "dH", "dp2",
    "dJ",
];

/// Number of leading columns that make up the trajectory file proper; the rest
/// go to the diagnostics file.
const TRAJECTORY_WIDTH: usize = 35;

pub const DIAGNOSTIC_COLUMNS: [&str; 9] =
    ["tau", "H", "p2", "zbarz", "rho", "beta", "dH", "dp2", "dJ"];

/// Round-trip-exact decimal form of a double.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

const TENSOR_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 3), (0, 1), (0, 2), (0, 3)];
const J_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn sample_row(s: &Sample, first: &Sample) -> Vec<f64> {
    let mut row = Vec::with_capacity(TRAJECTORY_COLUMNS.len());
    row.push(s.state.tau);
    row.extend(s.state.x.vector_components());
    row.extend(s.state.pi.vector_components());
    row.extend(s.velocity.vector_components());
    row.extend(s.state.psi.components());
    row.push(s.conserved.h);
    row.push(s.conserved.p2);
    let st = s.spin.tensor();
    row.extend(TENSOR_PAIRS.iter().map(|&(a, b)| st[a][b]));
    row.extend(J_PAIRS.iter().map(|&(a, b)| s.conserved.j[a][b]));
    row.push(s.conserved.zbarz);
    let (rho, beta) = rotor_decompose(&s.state.psi)
        .map(|p| (p.rho, p.beta))
        .unwrap_or((0.0, f64::NAN));
    row.push(rho);
    row.push(beta);
    row.push(s.conserved.h - first.conserved.h);
    row.push(s.conserved.p2 - first.conserved.p2);
    let dj = J_PAIRS
        .iter()
        .map(|&(a, b)| (s.conserved.j[a][b] - first.conserved.j[a][b]).abs())
        .fold(0.0, f64::max);
    row.push(dj);
    row
}

/// Full rows (trajectory and diagnostic columns) for every `every`-th sample.
/// The final sample is always included.
pub fn rows(traj: &Trajectory, every: usize) -> Vec<Vec<f64>> {
    let Some(first) = traj.samples.first() else {
        return Vec::new();
    };
    let every = every.max(1);
    let last = traj.samples.len() - 1;
    traj.samples
        .iter()
        .enumerate()
        .filter(|(k, _)| k % every == 0 || *k == last)
        .map(|(_, s)| sample_row(s, first))
        .collect()
}

fn write_csv(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|x| fmt_num(*x)))?;
    }
    w.flush()
}

#[derive(Serialize)]
struct Table<'a> {
    columns: &'a [&'a str],
    rows: Vec<Vec<f64>>,
}

fn write_json(path: &Path, header: &[&str], rows: Vec<Vec<f64>>) -> io::Result<()> {
    let text = serde_json::to_string(&Table {
        columns: header,
        rows,
    })
    .map_err(io::Error::other)?;
    fs::write(path, text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn with_extension(self, name: &str) -> String {
        let stem = Path::new(name)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| name.to_string());
        match self {
            Format::Csv => format!("{stem}.csv"),
            Format::Json => format!("{stem}.json"),
        }
    }
}

/// Write the trajectory and diagnostics files; returns their paths.
pub fn write_trajectory(
    traj: &Trajectory,
    out_dir: &Path,
    trajectory_name: &str,
    diagnostics_name: &str,
    every: usize,
    format: Format,
) -> io::Result<Vec<PathBuf>> {
    let all = rows(traj, every);
    let traj_rows = all.iter().map(|r| r[..TRAJECTORY_WIDTH].to_vec());
    let diag_rows = all.iter().map(|r| {
        let mut d = vec![r[0], r[21], r[22]];
        d.extend_from_slice(&r[TRAJECTORY_WIDTH..]);
        d
    });
    let tp = out_dir.join(format.with_extension(trajectory_name));
    let dp = out_dir.join(format.with_extension(diagnostics_name));
    match format {
        Format::Csv => {
            write_csv(&tp, &TRAJECTORY_COLUMNS[..TRAJECTORY_WIDTH], traj_rows)?;
            write_csv(&dp, &DIAGNOSTIC_COLUMNS, diag_rows)?;
        }
        Format::Json => {
            write_json(&tp, &TRAJECTORY_COLUMNS[..TRAJECTORY_WIDTH], traj_rows.collect())?;
            write_json(&dp, &DIAGNOSTIC_COLUMNS, diag_rows.collect())?;
        }
    }
    Ok(vec![tp, dp])
}

/// Generic table writer for derived series.
pub fn write_table(path: &Path, header: &[&str], rows: Vec<Vec<f64>>, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(path, header, rows.into_iter()),
        Format::Json => write_json(path, header, rows),
    }
}

/// Record of one CLI run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub scenario: String,
    pub command: String,
    pub config: Option<serde_json::Value>,
    pub versions: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunManifest {
    pub fn new(scenario: impl Into<String>, command: impl Into<String>) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("zitter-cli".into(), env!("CARGO_PKG_VERSION").into());
        versions.insert("zitter-core".into(), zitter_core::VERSION.into());
        RunManifest {
            scenario: scenario.into(),
            command: command.into(),
            config: None,
            versions,
            outputs: Vec::new(),
            wall_clock_seconds: 0.0,
            status: "ok".into(),
            error: None,
        }
    }

    pub fn write(&mut self, path: &Path) -> io::Result<()> {
        self.outputs.push(path.display().to_string());
        let text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        fs::write(path, text)
    }
}
