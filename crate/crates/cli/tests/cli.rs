use std::path::Path;
use std::process::{Command, Output};

fn ctsb(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctsb"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("CTSB_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn report(dir: &Path, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn su2_isometry_default_grid_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctsb(&["su2-isometry", "--n", "2..5", "--grid", "default", "--seed", "7", "--mc-paths", "0"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "su2-isometry");
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["pass"], true);
    for m in r["metrics"].as_array().unwrap() {
        assert!(m["value"].as_f64().unwrap() < 1e-10);
        assert_eq!(m["tolerance"].as_f64().unwrap(), 1e-10);
    }
    let csv = std::fs::read_to_string(dir.path().join("su2-isometry.csv")).unwrap();
    // header plus 4 dimensions × 20 grid points
    assert_eq!(csv.lines().count(), 81);
}

#[test]
fn su2_isometry_with_monte_carlo() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctsb(&["su2-isometry", "--n", "2", "--mc-paths", "4000", "--mc-steps", "200"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path(), "su2-isometry");
    assert!(r["metrics"].as_array().unwrap().iter().any(|m| m["name"] == "mc_max_z_score"));
}

#[test]
fn large_s_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctsb(&["large-s", "--s", "2..8"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "large-s");
    let rate = r["metrics"].as_array().unwrap().iter().find(|m| m["name"] == "fitted_rate").unwrap();
    assert_eq!(rate["target"], 0.75);
    assert!((rate["value"].as_f64().unwrap() - 0.75).abs() < 0.0375);
}

#[test]
fn tolerance_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctsb(&["large-s", "--s", "0.2,0.4,0.6"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(dir.path(), "large-s")["pass"], false);
}

#[test]
fn boundary_point_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctsb(&["params-roundtrip", "--grid", "1,2,0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("α ≤ 0") && err.contains("outside"), "{err}");
    assert!(!dir.path().join("params-roundtrip.json").exists());
}

#[test]
fn malformed_flag_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ctsb(&["euclid-isometry", "--grid", "1,x,0"], dir.path()).status.code(), Some(2));
    assert_eq!(ctsb(&["nu-invariance", "--variants", "1:0", "--paths", "1"], dir.path()).status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "states = 3\nseed = 5\norder = 32\n").unwrap();
    let cfg_arg = cfg.to_str().unwrap();
    let out = ctsb(&["uncertainty", "--config", cfg_arg], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "uncertainty");
    assert_eq!(r["inputs"]["n_states"], 3);
    assert_eq!(r["inputs"]["seed"], 5);
    assert_eq!(r["inputs"]["quad"]["order"], 32);
    let out = ctsb(&["uncertainty", "--config", cfg_arg, "--states", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(dir.path(), "uncertainty")["inputs"]["n_states"], 4);

    std::fs::write(&cfg, "states = \"many\"\n").unwrap();
    assert_eq!(ctsb(&["uncertainty", "--config", cfg_arg], dir.path()).status.code(), Some(2));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ctsb"))
        .args(["uncertainty", "--states", "2"])
        .env("CTSB_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("uncertainty.json").exists());
    assert!(dir.path().join("uncertainty.csv").exists());
}

#[test]
fn reports_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["nu-invariance", "--paths", "600", "--steps", "20", "--seed", "3"];
    assert_eq!(ctsb(&args, a.path()).status.code(), Some(0));
    assert_eq!(ctsb(&args, b.path()).status.code(), Some(0));
    for f in ["nu-invariance.json", "nu-invariance.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
}

#[test]
fn every_subcommand_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["euclid-isometry", "--polys", "1"],
        &["euclid-ratio"],
        &["transform-equiv", "--n", "1,2", "--points", "2", "--order", "24"],
        &["heatk-properties", "--trend-order", "96"],
        &["params-roundtrip", "--triples", "5"],
        &["uncertainty"],
    ];
    for args in runs {
        let out = ctsb(args, dir.path());
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let r = report(dir.path(), args[0]);
        assert_eq!(r["experiment"], args[0]);
        for m in r["metrics"].as_array().unwrap() {
            assert!(m["tolerance"].is_number() && m["pass"].is_boolean());
        }
    }
}
