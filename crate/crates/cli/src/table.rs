//! Human-readable summary tables for `zitter table`.

use std::fmt::Write;

use zitter_core::dynamics::{canonical_momentum, eom_derivatives, zbw_frequency, Trajectory};
use zitter_core::frenet::curvatures_from_frame;
use zitter_core::verify::{spin_mass_pointwise, IDENTITY_TOL};
use zitter_core::Error;

use crate::suites::{mean_std, tangent_frames};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Frequencies,
    Identities,
    Curvatures,
}

/// One table row: label followed by pre-formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            widths[0] = widths[0].max(r.label.len());
            for (k, c) in r.cells.iter().enumerate() {
                widths[k + 1] = widths[k + 1].max(c.len());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(self.header.clone(), &mut out);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(rule.iter().map(String::as_str).collect(), &mut out);
        for r in &self.rows {
            let mut cells = vec![r.label.as_str()];
            cells.extend(r.cells.iter().map(String::as_str));
            line(cells, &mut out);
        }
        out
    }
}

fn status(ok: bool) -> String {
    if ok { "ok" } else { "FAIL" }.into()
}

pub fn build(which: Which, traj: &Trajectory) -> Result<Table, CliError> {
    match which {
        Which::Frequencies => frequencies(traj),
        Which::Identities => identities(traj),
        Which::Curvatures => curvatures(traj),
    }
}

fn frequencies(traj: &Trajectory) -> Result<Table, CliError> {
    let expected = 2.0 * traj.m;
    let tol = 1e-3 * expected;
    let cells = match zbw_frequency(traj) {
        Ok(w) => vec![
            format!("{w:.6}"),
            format!("{expected:.6}"),
            format!("{tol:.3e}"),
            status((w - expected).abs() <= tol),
        ],
        Err(Error::NoOscillation { .. }) => vec![
            "n/a".into(),
            format!("{expected:.6}"),
            format!("{tol:.3e}"),
            "no oscillation".into(),
        ],
        Err(e) => return Err(e.into()),
    };
    Ok(Table {
        header: vec!["quantity", "measured", "expected", "tolerance", "status"],
        rows: vec![Row {
            label: "zbw frequency".into(),
            cells,
        }],
    })
}

fn identities(traj: &Trajectory) -> Result<Table, CliError> {
    let m = traj.m;
    let (mut pv, mut os) = (Vec::new(), Vec::new());
    for s in &traj.samples {
        let d = eom_derivatives(&s.state, &traj.field);
        let p = canonical_momentum(&s.state, &traj.field);
        let (a, b) = spin_mass_pointwise(&s.state.psi, &d.dpsi, &p, m, s.state.tau)?;
        pv.push(a);
        os.push(b);
    }
    let row = |label: &str, dev: &[f64]| {
        let worst = dev.iter().cloned().fold(0.0, f64::max);
        Row {
            label: label.into(),
            cells: vec![
                format!("{m:.9}"),
                format!("{worst:.3e}"),
                format!("{IDENTITY_TOL:.1e}"),
                status(worst <= IDENTITY_TOL),
            ],
        }
    };
    Ok(Table {
        header: vec!["quantity", "expected", "max |deviation|", "tolerance", "status"],
        rows: vec![row("<p v>_0", &pv), row("<Omega S>_0", &os)],
    })
}

fn curvatures(traj: &Trajectory) -> Result<Table, CliError> {
    let c = curvatures_from_frame(&tangent_frames(traj), traj.step)?;
    let rows = [("K1", &c.k1), ("K2", &c.k2), ("K3", &c.k3)]
        .into_iter()
        .map(|(label, k)| {
            let (mean, std) = mean_std(k);
            let min = k.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            Row {
                label: label.into(),
                cells: [mean, std, min, max].iter().map(|x| format!("{x:.9}")).collect(),
            }
        })
        .collect();
    Ok(Table {
        header: vec!["curvature", "mean", "std", "min", "max"],
        rows,
    })
}
