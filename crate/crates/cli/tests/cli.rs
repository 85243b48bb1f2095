use std::path::Path;
use std::process::{Command, Output};

use nls_lab::io::RunManifest;

fn nls_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nls-lab"))
        .args(args)
        .env_remove("NLS_LAB_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Re-runs a command from the parameters recorded in its manifest, writing
/// to `out` instead.
fn replay(manifest: &Path, out: &Path) -> Output {
    let m = RunManifest::read(manifest).unwrap();
    let mut args = vec![m.command.clone()];
    for (k, v) in &m.parameters {
        match k.as_str() {
            "out" => continue,
            "log" => args.push("--log".into()),
            _ => {
                args.push(format!("--{k}"));
                args.push(v.clone());
            }
        }
    }
    args.push("--out".into());
    args.push(out.display().to_string());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    nls_lab(&refs)
}

#[test]
fn slope_stable_family_is_positive() {
    let out = nls_lab(&[
        "slope", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega-min", "0.1",
        "--omega-max", "10", "--points", "50",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,phi0,C,F,J"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    for r in rows {
        let j: f64 = r.rsplit(',').next().unwrap().parse().unwrap();
        assert!(j > 0.0, "{r}");
    }
}

#[test]
fn slope_single_point() {
    let out = nls_lab(&[
        "slope", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega-min", "0.5",
        "--omega-max", "2", "--points", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
    assert!(stdout(&out).lines().nth(1).unwrap().starts_with("0.5,"));
}

#[test]
fn slope_beyond_turning_frequency_is_a_domain_error() {
    // ω* = 2/9 for this model
    let out = nls_lab(&[
        "slope", "--ap", "1", "--aq", "-1", "--p", "2", "--q", "3", "--omega-min", "0.1",
        "--omega-max", "0.3", "--points", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim().lines().count(), 1);
}

#[test]
fn classify_outputs() {
    let out = nls_lab(&["classify", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "US");
    assert!(v["omega_c"].as_f64().unwrap() > 0.0);
    assert_eq!(v["j0_label"], "negative");
    assert!(v["jstar_label"].is_string());

    let out = nls_lab(&["classify", "--ap", "1", "--aq", "1", "--p", "3", "--q", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "S");
    assert!(v.get("omega_c").is_none());
}

#[test]
fn classify_without_waves_exits_2() {
    let out = nls_lab(&["classify", "--ap", "-1", "--aq", "-1", "--p", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no standing waves"));
}

#[test]
fn missing_omega_exits_2() {
    let out = nls_lab(&["simulate", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nls_lab(&["profile", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_is_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let grid = "1.1:4.9:0.4,1.1:4.9:0.4";
    let mut files = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("surface{jobs}.csv"));
        let out = nls_lab(&[
            "surface", "--ap", "-1", "--aq", "1", "--grid", grid, "--tol", "1e-6", "--jobs", jobs,
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files[0].clone()).unwrap();
    assert!(text.starts_with("p,q,status,omega_c\n"));
    assert_eq!(text.lines().count(), 1 + 10 * 10);
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nls-lab"))
        .args(["surface", "--ap", "-1", "--aq", "1", "--grid", "1.5:2.5:1,2.5:4.5:1"])
        .env("NLS_LAB_JOBS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 2 * 3);
}

#[test]
fn manifests_replay_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "slope.csv",
            vec![
                "slope", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "4", "--omega-min", "0.01",
                "--omega-max", "100", "--points", "7", "--log",
            ],
        ),
        ("classify.json", vec!["classify", "--ap", "1", "--aq", "-1", "--p", "6", "--q", "7"]),
        (
            "surface.csv",
            vec!["surface", "--ap", "-1", "--aq", "2", "--grid", "1.2:3.2:0.5,1.5:4.5:0.5"],
        ),
        (
            "profile.csv",
            vec!["profile", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega", "1", "--L", "30"],
        ),
        (
            "simulate.csv",
            vec![
                "simulate", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega", "1",
                "--perturb", "tanh_tilt:0.05", "--L", "20", "--dx", "0.1", "--dt", "0.01", "--T", "0.5",
            ],
        ),
    ];
    for (name, args) in cases {
        let path = dir.path().join(name);
        let mut full = args.clone();
        let p = path.to_str().unwrap();
        full.extend(["--out", p]);
        let first = nls_lab(&full);
        assert!(first.status.success(), "{name}: {}", String::from_utf8_lossy(&first.stderr));
        let manifest = RunManifest::path_for(&path);
        assert!(manifest.exists(), "{name}");
        let m = RunManifest::read(&manifest).unwrap();
        assert_eq!(m.command, args[0]);
        assert!(m.wall_time_seconds >= 0.0);

        let again = dir.path().join(format!("again-{name}"));
        let second = replay(&manifest, &again);
        assert!(second.status.success(), "{name}: {}", String::from_utf8_lossy(&second.stderr));
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap(), "{name}");
    }
}

#[test]
fn simulate_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps.csv");
    let out = nls_lab(&[
        "simulate", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega", "1", "--perturb",
        "scale:0.01", "--L", "20", "--dx", "0.1", "--dt", "0.01", "--T", "0.2", "--snapshots",
        snaps.to_str().unwrap(), "--snapshot-interval", "0.1",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&snaps).unwrap();
    assert!(text.starts_with("t,x,re_u,im_u\n"));
    // 3 snapshot times, 399 interior nodes
    assert_eq!(text.lines().count(), 1 + 3 * 399);
    let series = stdout(&out);
    assert!(series.starts_with("t,mass,energy,sup_norm,mod_distance\n"));
}

#[test]
fn bad_perturbation_exits_2() {
    let out = nls_lab(&[
        "simulate", "--ap", "-1", "--aq", "1", "--p", "2", "--q", "3", "--omega", "1", "--perturb",
        "scale:1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
