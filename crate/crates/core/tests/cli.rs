//! End-to-end runs of the `lambrecon` binary: files written, exit statuses,
//! config precedence.

use std::path::Path;
use std::process::{Command, Output};

use lambrecon::cli::{family_table, read_curve_csv, read_curve_json};

fn lambrecon(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambrecon"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("LAMBRECON_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reconstruct_writes_one_row_per_node() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["reconstruct", "--family", "gaussian", "--C", "0.04", "--x-lo", "-2.5", "--x-hi", "2.5", "--n", "2001"];
    let o = lambrecon(&args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = dir.path().join("gaussian_C0.04.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2002);
    assert!(text.starts_with("x,R,S,V,re_psi,im_psi,rho\n"));
    let curve = read_curve_csv(&path).unwrap();
    // the C²/2R⁴ term dominates where the gaussian is small
    assert!(curve.v[0] < 0.0 && curve.v[2000] < 0.0);
    assert_eq!(curve.x[0], -2.5);
    assert_eq!(curve.x[2000], 2.5);
}

#[test]
fn sweep_writes_curves_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = lambrecon(&["sweep", "--family", "well", "--C-list", "0,0.25,0.5"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for c in ["0", "0.25", "0.5"] {
        assert!(dir.path().join(format!("well_C{c}.csv")).is_file(), "C = {c}");
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("well_sweep_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["all_passed"], serde_json::Value::Bool(true));
    assert_eq!(summary["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn expression_with_a_node_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["reconstruct", "--family", "expr", "--expr", "sin(pi*x)", "--x-lo", "0", "--x-hi", "2"];
    let o = lambrecon(&args, dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("node"), "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lambrecon(&["reconstruct", "--C", "1"], dir.path()).status.code(), Some(1));
    assert_eq!(lambrecon(&["reconstruct", "--family", "well", "--bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(lambrecon(&["sweep", "--family", "well", "--C", "1"], dir.path()).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_lambrecon"))
        .args(["sweep", "--family", "well", "--C-list", "0,1", "--out-dir"])
        .arg(dir.path())
        .env("LAMBRECON_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("LAMBRECON_THREADS"));
}

#[test]
fn numeric_failure_exits_two() {
    // without clipping, 1/r²R² overflows far out in the hydrogen tail
    let dir = tempfile::tempdir().unwrap();
    let args = ["reconstruct", "--family", "hydrogen", "--C", "0.1", "--clip", "0", "--x-lo", "0.01", "--x-hi", "400", "--n", "101"];
    let o = lambrecon(&args, dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn failed_check_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["propagate", "--family", "well", "--C", "0.2", "--steps", "200", "--dt", "1e-5", "--min-fidelity", "0.9999999"];
    let o = lambrecon(&args, dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(dir.path().join("well_C0.2_propagation.json").is_file());
}

#[test]
fn flags_override_config_and_meta_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"family": "well", "C": 0.1, "n": 101, "format": "json"}"#).unwrap();
    let out = dir.path().join("out");
    let o = lambrecon(&["reconstruct", "--config", cfg.to_str().unwrap(), "--C", "0.3"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file = read_curve_json(&out.join("well_C0.3.json")).unwrap();
    assert_eq!(file.data.x.len(), 101);
    let meta = serde_json::to_value(&file.meta).unwrap();
    assert_eq!(meta["C"], serde_json::json!(0.3));
    assert_eq!(meta["n"], serde_json::json!(101));
    assert_eq!(meta["family"], serde_json::json!("well"));

    std::fs::write(&cfg, r#"{"family": "well", "colour": 1}"#).unwrap();
    let o = lambrecon(&["reconstruct", "--config", cfg.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn families_lists_the_builtin_table() {
    let o = Command::new(env!("CARGO_BIN_EXE_lambrecon")).args(["families", "--format", "json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let listed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let listed = listed.as_array().unwrap();
    let table = family_table();
    assert_eq!(listed.len(), table.len());
    let bound = |b: f64| if b.is_finite() { serde_json::json!(b) } else { serde_json::json!(format!("{b}")) };
    for (row, info) in listed.iter().zip(&table) {
        assert_eq!(row["name"], serde_json::json!(info.name));
        assert_eq!(row["geometry"], serde_json::to_value(info.geometry).unwrap());
        assert_eq!(row["domain"], serde_json::json!([bound(info.domain_lo), bound(info.domain_hi)]));
        assert_eq!(row["default_E"], serde_json::json!(info.default_e));
        assert_eq!(row["default_x0"], serde_json::json!(info.default_x0));
    }
    let names: Vec<_> = table.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names, ["free", "gaussian", "well", "hydrogen"]);
}
