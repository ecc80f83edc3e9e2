//! Argument parsing and subcommand dispatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use zitter_core::clifford::table::PRODUCT_TABLE;
use zitter_core::dynamics::Trajectory;
use zitter_core::frenet::{curvatures_from_frame, darboux_relation_residual, darboux_series};
use zitter_core::ScenarioConfig;

use crate::output::{write_table, write_trajectory, Format, RunManifest};
use crate::suites::{first_failure, run_suite, tangent_frames, Suite, SuiteOptions};
use crate::table::{build, Which};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "zitter", version, about = "Classical zitterbewegung simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a scenario and write trajectory, diagnostics and manifest.
    Simulate(RunArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Print a summary table for a scenario.
    Table(TableArgs),
    /// Write curvature and Darboux series for a scenario.
    Frenet(RunArgs),
}

#[derive(Debug, Args)]
pub struct Overrides {
    /// Override the integration step.
    #[arg(long)]
    pub step: Option<f64>,
    /// Override the final proper time.
    #[arg(long = "tau-end")]
    pub tau_end: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = "zitter-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum, conflicts_with = "suite_flag")]
    pub suite: Option<Suite>,
    #[arg(long = "suite", value_enum)]
    pub suite_flag: Option<Suite>,
    #[arg(long, default_value = "zitter-out")]
    pub out: PathBuf,
    /// Integration step for the trajectory suites.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Negate the product-table entry for blade pair I,J (negative control).
    #[arg(long = "flip-sign", hide = true, value_parser = parse_pair)]
    pub flip_sign: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: Which,
    #[arg(long)]
    pub config: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected I,J")?;
    let parse = |t: &str| -> Result<usize, String> {
        let k: usize = t.trim().parse().map_err(|e| format!("{e}"))?;
        if k < 16 {
            Ok(k)
        } else {
            Err(format!("blade index {k} out of range 0..16"))
        }
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => simulate(&a),
        Command::Verify(a) => verify(&a),
        Command::Table(a) => {
            let cfg = load_config(&a.config, &a.overrides)?;
            let traj = cfg.run()?;
            print!("{}", build(a.which, &traj)?.render());
            Ok(())
        }
        Command::Frenet(a) => frenet(&a),
    }
}

/// Read, parse, apply overrides and validate a scenario file.
pub fn load_config(path: &Path, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = ScenarioConfig::from_json_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if overrides.step.is_some() {
        cfg.step = overrides.step;
    }
    if overrides.tau_end.is_some() {
        cfg.tau_end = overrides.tau_end;
    }
    cfg.validate()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(cfg)
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn simulate(a: &RunArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = load_config(&a.config, &a.overrides)?;
    create_dir(&a.out)?;
    let (traj, failure) = cfg.run_partial()?;
    let outputs = write_trajectory(
        &traj,
        &a.out,
        &cfg.outputs.trajectory,
        &cfg.outputs.diagnostics,
        cfg.outputs.every,
        a.format,
    )?;
    let mut manifest = RunManifest::new(&cfg.name, command_line());
    manifest.config = serde_json::to_value(&cfg).ok();
    manifest.outputs = outputs.iter().map(|p| p.display().to_string()).collect();
    if let Some(e) = &failure {
        manifest.status = "failed".into();
        manifest.error = Some(e.to_string());
    }
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    manifest.write(&a.out.join(&cfg.outputs.manifest))?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let suite = a.suite.or(a.suite_flag).unwrap_or(Suite::All);
    let mut opts = SuiteOptions {
        step: a.step,
        ..SuiteOptions::default()
    };
    if let Some((i, j)) = a.flip_sign {
        opts.table = PRODUCT_TABLE.with_flipped_sign(i, j);
    }
    if !(opts.step > 0.0 && opts.step.is_finite()) {
        return Err(CliError::Usage(format!("--step must be positive, got {}", opts.step)));
    }
    create_dir(&a.out)?;
    let checks = run_suite(suite, &opts);
    for c in &checks {
        let mark = match (c.passed, c.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "INFO",
        };
        println!(
            "{mark} {}/{}: {:.3e} (tol {:.3e}){}",
            c.suite,
            c.name,
            c.value,
            c.tolerance,
            if c.detail.is_empty() { String::new() } else { format!("  {}", c.detail) }
        );
    }
    let report = a.out.join("report.json");
    let text = serde_json::to_string_pretty(&checks).map_err(|e| CliError::Usage(e.to_string()))?;
    fs::write(&report, text)?;

    let failed = first_failure(&checks);
    let mut manifest = RunManifest::new(format!("verify-{}", suite.name()), command_line());
    manifest.outputs.push(report.display().to_string());
    if let Some(c) = failed {
        manifest.status = "failed".into();
        manifest.error = Some(format!("{}/{}", c.suite, c.name));
    }
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    manifest.write(&a.out.join("manifest.json"))?;
    match failed {
        Some(c) => Err(CliError::Check(format!(
            "{}/{} (value {:.3e}, tolerance {:.3e})",
            c.suite, c.name, c.value, c.tolerance
        ))),
        None => Ok(()),
    }
}

/// Columns of the curvature file.
pub const FRENET_COLUMNS: [&str; 13] = [
    "tau", "K1", "K2", "K3", "invariant", "Omega01", "Omega02", "Omega03", "Omega12", "Omega13",
    "Omega23", "extrinsic", "relation",
];

/// Curvature, invariant and Darboux rows for a trajectory.
pub fn frenet_rows(traj: &Trajectory) -> Result<Vec<Vec<f64>>, CliError> {
    let h = traj.step;
    let c = curvatures_from_frame(&tangent_frames(traj), h)?;
    let inv = c.invariants();
    let (omega, relation) = if c.frames.is_empty() {
        (vec![[0.0; 6]; c.len()], vec![0.0; c.len()])
    } else {
        let o = darboux_series(&c.frames, h)?.iter().map(|b| b.components()).collect();
        (o, darboux_relation_residual(&c.frames, h)?)
    };
    Ok((0..c.len())
        .map(|k| {
            let mut row = vec![c.tau[k], c.k1[k], c.k2[k], c.k3[k], inv[k].value];
            row.extend(omega[k]);
            row.push(inv[k].extrinsic);
            row.push(relation[k]);
            row
        })
        .collect())
}

fn frenet(a: &RunArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = load_config(&a.config, &a.overrides)?;
    create_dir(&a.out)?;
    let traj = cfg.run()?;
    let every = cfg.outputs.every.max(1);
    let rows = frenet_rows(&traj)?;
    let last = rows.len().saturating_sub(1);
    let rows = rows
        .into_iter()
        .enumerate()
        .filter(|(k, _)| k % every == 0 || *k == last)
        .map(|(_, r)| r)
        .collect();
    let path = a.out.join(a.format.with_extension("frenet"));
    write_table(&path, &FRENET_COLUMNS, rows, a.format)?;
    let mut manifest = RunManifest::new(&cfg.name, command_line());
    manifest.config = serde_json::to_value(&cfg).ok();
    manifest.outputs.push(path.display().to_string());
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    manifest.write(&a.out.join("frenet_manifest.json"))?;
    Ok(())
}
