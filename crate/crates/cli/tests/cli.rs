use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn zitter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zitter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .display()
        .to_string()
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("scenario.cfg");
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn out_dir(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const HEADER: &str = "tau,x0,x1,x2,x3,pi0,pi1,pi2,pi3,v0,v1,v2,v3,psi0,psi1,psi2,psi3,psi4,psi5,psi6,psi7,H,p2,S12,S13,S23,S01,S02,S03,J01,J02,J03,J12,J13,J23";

#[test]
fn free_helix_golden_header_and_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "run");
    let o = zitter(&["simulate", "--config", &scenario("free_helix.cfg"), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first.len(), 35);
    // tau, x and pi of the initial state; H = p2 = 1 for p = γ0, m = 1.
    assert_eq!(&first[..9], &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    assert!((first[21] - 1.0).abs() < 1e-12);
    assert!((first[22] - 1.0).abs() < 1e-15);
    // 10π at h = 1e-3 rounds to 31416 steps.
    assert_eq!(text.lines().count(), 1 + 31417);

    let diag = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert_eq!(diag.lines().next(), Some("tau,H,p2,zbarz,rho,beta,dH,dp2,dJ"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["status"], "ok");
    for p in manifest["outputs"].as_array().unwrap() {
        assert!(Path::new(p.as_str().unwrap()).exists(), "{p}");
    }
}

#[test]
fn numbers_round_trip_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "run");
    let o = zitter(&[
        "simulate", "--config", &scenario("circular_helix.cfg"), "--out", out.to_str().unwrap(),
        "--tau-end", "0.01",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    for cell in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let x: f64 = cell.parse().unwrap();
        assert_eq!(format!("{x:.16e}"), cell);
    }
}

#[test]
fn missing_mass_is_a_config_error_naming_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), r#"{"name": "x", "init": {"kind": "rotor", "values": {}}}"#);
    let o = zitter(&["simulate", "--config", &cfg, "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`m`"), "{}", stderr(&o));
}

#[test]
fn unreadable_config_exits_2() {
    let o = zitter(&["simulate", "--config", "/nonexistent/zz.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_tau_end_gives_one_row() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "run");
    let o = zitter(&[
        "simulate", "--config", &scenario("free_helix.cfg"), "--out", out.to_str().unwrap(),
        "--tau-end", "0",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn identical_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = out_dir(tmp.path(), name);
        let o = zitter(&[
            "simulate", "--config", &scenario("magnetic.cfg"), "--out", out.to_str().unwrap(),
            "--tau-end", "3",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        (
            fs::read(out.join("trajectory.csv")).unwrap(),
            fs::read(out.join("diagnostics.csv")).unwrap(),
        )
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn json_format_writes_columns_and_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "run");
    let o = zitter(&[
        "simulate", "--config", &scenario("trivial.cfg"), "--out", out.to_str().unwrap(),
        "--format", "json", "--tau-end", "0.005",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("trajectory.json")).unwrap()).unwrap();
    assert_eq!(v["columns"].as_array().unwrap().len(), 35);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn runaway_run_still_writes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"name": "runaway", "m": 1.0, "e": 1.0,
            "field": {"kind": "constant", "params": {"f": [50.0, 0, 0, 0, 0, 0]}},
            "init": {"kind": "rotor", "values": {}}, "tau_end": 40.0, "step": 0.01}"#,
    );
    let out = out_dir(tmp.path(), "run");
    let o = zitter(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("tau"));
    let rows = fs::read_to_string(out.join("trajectory.csv")).unwrap().lines().count();
    assert!(rows > 2);
    assert!(out.join("diagnostics.csv").exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["status"], "failed");
}

#[test]
fn verify_algebra_passes_and_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "v");
    let o = zitter(&["verify", "algebra", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let oracle = report
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "product_table_oracle")
        .unwrap();
    assert_eq!(oracle["passed"], true);
    assert!(oracle["detail"].as_str().unwrap().starts_with("256 pairs"));
}

#[test]
fn suite_flag_matches_positional() {
    let tmp = tempfile::tempdir().unwrap();
    let o = zitter(&["verify", "--suite", "algebra", "--out", tmp.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn flipped_sign_fails_verify_all() {
    let tmp = tempfile::tempdir().unwrap();
    let o = zitter(&["verify", "all", "--flip-sign", "3,4", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("product_table_oracle"), "{}", stderr(&o));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["status"], "failed");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = zitter(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

fn table(which: &str, cfg: &str) -> String {
    let o = zitter(&["table", which, "--config", &scenario(cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn trivial_curvature_rows_are_zero() {
    let text = table("curvatures", "trivial.cfg");
    for k in ["K1", "K2", "K3"] {
        let row = text.lines().find(|l| l.starts_with(k)).unwrap();
        for cell in row.split_whitespace().skip(1) {
            assert_eq!(cell.parse::<f64>().unwrap(), 0.0, "{row}");
        }
    }
}

#[test]
fn free_run_frequency_and_identity_rows() {
    let f = table("frequencies", "free_helix.cfg");
    let row = f.lines().find(|l| l.starts_with("zbw")).unwrap();
    let w: f64 = row.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((w - 2.0).abs() <= 2e-3, "{row}");

    let t = table("identities", "free_helix.cfg");
    for label in ["<p v>_0", "<Omega S>_0"] {
        let row = t.lines().find(|l| l.starts_with(label)).unwrap();
        assert!(row.ends_with("ok"), "{row}");
    }
}

#[test]
fn frenet_writes_curvature_series() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(tmp.path(), "f");
    let o = zitter(&[
        "frenet", "--config", &scenario("circular_helix.cfg"), "--out", out.to_str().unwrap(),
        "--tau-end", "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("frenet.csv")).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    assert_eq!(&header[..4], &["tau", "K1", "K2", "K3"]);
    let row: Vec<f64> = text.lines().nth(10).unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    let w: f64 = 0.3;
    assert!((row[1] - 2.0 * w.sinh()).abs() < 1e-5);
    assert!((row[2] - 2.0 * w.cosh()).abs() < 1e-5);
    assert_eq!(text.lines().count(), 1 + 1001);
}
