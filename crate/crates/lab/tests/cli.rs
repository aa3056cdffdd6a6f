use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nsklab(root: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsklab"))
        .args(args)
        .env("NSK_LAB_OUTPUT_ROOT", root)
        .output()
        .expect("binary runs")
}

fn config(dir: &str, extra_solver: &str) -> String {
    format!(
        "[grid]\ndim = 2\nn = 32\nbox_length = 8\nfar_field_density = 1\n\n[preset]\nname = gaussian-bump\namplitude = 0.3\nwidth = 1\n\n[solver]\ngamma = 2\ndt = 0.01\nt_end = 0.05\n{extra_solver}\n[probes]\nnames = energy.total, mass\n\n[audits]\nnames = energy_decay, mass, bd_identity\n\n[output]\ndirectory = {dir}\n"
    )
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_writes_outputs_and_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("a.ini");
    fs::write(&cfg, config("a", "")).unwrap();
    let out = nsklab(tmp.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dir = tmp.path().join("a");
    for f in [
        "config.ini",
        "series.csv",
        "audits.csv",
        "manifest.ini",
        "snapshots/final.nskf",
    ] {
        assert!(dir.join(f).is_file(), "{f}");
    }
    let series = fs::read_to_string(dir.join("series.csv")).unwrap();
    assert!(series.starts_with("time,min_density,"));
    assert_eq!(series.lines().count(), 7);
    let manifest = fs::read_to_string(dir.join("manifest.ini")).unwrap();
    assert!(manifest.contains("status = completed"));
}

#[test]
fn parse_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.ini");
    fs::write(
        &cfg,
        config("bad", "").replace("energy.total", "energy.totl"),
    )
    .unwrap();
    let out = nsklab(tmp.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("line 18") && err.contains("energy.total"),
        "{err}"
    );
    assert!(!tmp.path().join("bad").exists());

    fs::write(&cfg, config("bad", "").replace("gamma = 2\n", "")).unwrap();
    let out = nsklab(tmp.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gamma"));

    assert_eq!(
        nsklab(tmp.path(), &["run", "/nonexistent.ini"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nsklab(tmp.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solver_abort_exits_with_three() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("abort.ini");
    fs::write(
        &cfg,
        config("abort", "").replace("dt = 0.01\nt_end = 0.05", "dt = 5\nt_end = 10"),
    )
    .unwrap();
    let out = nsklab(tmp.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let manifest = fs::read_to_string(tmp.path().join("abort/manifest.ini")).unwrap();
    assert!(manifest.contains("status = solver_abort"));
    assert!(manifest.contains("failure = time step"));
}

#[test]
fn sweep_rejects_duplicate_outputs_before_running() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("configs");
    fs::create_dir(&dir).unwrap();
    fs::write(dir.join("one.ini"), config("same", "")).unwrap();
    fs::write(dir.join("two.ini"), config("./same", "")).unwrap();
    let out = nsklab(tmp.path(), &["sweep", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("same"));
    assert!(!tmp.path().join("same").exists());
}

#[test]
fn sweep_then_report() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("configs");
    fs::create_dir(&dir).unwrap();
    for g in ["1.1", "1.5", "2.0", "2.5"] {
        let text = config(&format!("g{g}"), "").replace("gamma = 2\n", &format!("gamma = {g}\n"));
        fs::write(dir.join(format!("g{g}.ini")), text).unwrap();
    }
    let out = nsklab(tmp.path(), &["sweep", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let runs: Vec<String> = ["1.1", "1.5", "2.0", "2.5"]
        .iter()
        .map(|g| {
            tmp.path()
                .join(format!("g{g}"))
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    let mut args = vec!["report", "--out"];
    let rep = tmp.path().join("rep");
    args.push(rep.to_str().unwrap());
    args.extend(runs.iter().map(String::as_str));
    let out = nsklab(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary = fs::read_to_string(rep.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5);
    assert!(rep.join("growth_law.dat").is_file());
    assert!(String::from_utf8_lossy(&out.stdout).contains("4 runs"));
}

#[test]
fn audit_and_selftest_verbs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("a.ini");
    fs::write(&cfg, config("a", "")).unwrap();
    assert_eq!(
        nsklab(tmp.path(), &["run", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let snap = tmp.path().join("a/snapshots/final.nskf");
    let out = nsklab(
        tmp.path(),
        &["audit", snap.to_str().unwrap(), "--gamma", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("bd.identity") && text.contains("pi.large_density"));
    assert!(!text.contains("FAIL"));
    let out = nsklab(tmp.path(), &["audit", cfg.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));

    let out = nsklab(tmp.path(), &["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
