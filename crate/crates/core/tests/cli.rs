use std::path::Path;
use std::process::{Command, Output};

fn skill_ecm(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skill-ecm"))
        .args(args)
        .env("SKILL_ECM_OUT", out)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn ok(out: &Path, args: &[&str]) -> String {
    let o = skill_ecm(out, args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn fails(out: &Path, args: &[&str]) -> String {
    let o = skill_ecm(out, args);
    assert!(!o.status.success(), "{args:?} unexpectedly succeeded");
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "not a single line: {err:?}");
    assert!(err.starts_with("error: "));
    err
}

fn read(p: impl AsRef<Path>) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn gen_data_writes_the_expected_dataset_deterministically() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["gen-data", "--scenario", "book", "--samples", "5", "--seed", "7"];
    ok(a.path(), &args);
    ok(b.path(), &args);
    let data = read(a.path().join("dataset.csv"));
    assert_eq!(data, read(b.path().join("dataset.csv")));
    let text = String::from_utf8(data).unwrap();
    let ids: std::collections::BTreeSet<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids.len(), 3 * 4 * 5);
    assert!(a.path().join("gen-data.config.toml").exists());
    assert_eq!(read(a.path().join("gen-data.manifest.json")), read(b.path().join("gen-data.manifest.json")));
    fails(a.path(), &["gen-data", "--samples", "0"]);
}

#[test]
fn full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen-data", "--samples", "30", "--seed", "3"]);
    let report = ok(d, &["train", "--seed", "3"]);
    assert!(report.contains("dominant sensing action: slide"), "{report}");

    let flat = ok(d, &["train", "--seed", "3", "--alpha", "0"]);
    let csv = String::from_utf8(read(d.join("discrimination.csv"))).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",1")), "{flat}\n{csv}");
    ok(d, &["train", "--seed", "3"]);

    let one = ok(d, &["play", "--skill", "tabletop-grasp", "--max-rollouts", "1", "--seed", "3"]);
    assert!(one.contains("status learning"), "{one}");
    let more = ok(d, &["play", "--skill", "tabletop-grasp", "--seed", "3"]);
    assert!(more.contains("total"), "{more}");
    let log = String::from_utf8(read(d.join("rollouts-tabletop-grasp.csv"))).unwrap();
    assert_eq!(log.lines().next(), Some("rollout,sensing,state,prep,success,reward,confidence"));
    // Resumed session continues the roll-out numbering.
    assert!(log.lines().nth(1).unwrap().starts_with("1,"));

    let shown = ok(d, &["registry", "show"]);
    assert!(shown.contains("tabletop-grasp"));
    if more.contains("status confident") {
        ok(d, &["registry", "register", "--skill", "tabletop-grasp", "--into", "drop-into-box"]);
        let shown = ok(d, &["registry", "show"]);
        assert!(shown.contains("uses [tabletop-grasp]"), "{shown}");
        fails(d, &["registry", "register", "--skill", "drop-into-box", "--into", "tabletop-grasp"]);
    }

    let trace = ok(d, &["exec", "--skill", "tabletop-grasp", "--world", "orientation=open"]);
    assert!(trace.contains("orientation=open"), "{trace}");
    assert!(trace.contains("sensing:") && trace.contains("prep:"), "{trace}");
    fails(d, &["exec", "--skill", "juggle"]);
    fails(d, &["exec", "--skill", "tabletop-grasp", "--world", "orientation=sideways"]);
}

#[test]
fn missing_inputs_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    fails(dir.path(), &["train"]);
    fails(dir.path(), &["play", "--skill", "tabletop-grasp"]);
    fails(dir.path(), &["exec", "--skill", "tabletop-grasp"]);
    fails(dir.path(), &["no-such-command"]);
    fails(dir.path(), &["converge", "--preps", "2"]);
}

#[test]
fn converge_outputs_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["converge", "--agents", "50", "--rollouts", "40", "--preps", "6,8,6", "--seed", "4"];
    let stdout = ok(a.path(), &args);
    ok(b.path(), &[&args[..], &["--jobs", "1"]].concat());
    for f in ["curve.csv", "curves.csv", "sweep.csv", "curve.svg"] {
        assert_eq!(read(a.path().join(f)), read(b.path().join(f)), "{f}");
    }
    let sweep = String::from_utf8(read(a.path().join("sweep.csv"))).unwrap();
    assert_eq!(sweep.lines().count(), 3, "{sweep}");
    assert!(stdout.contains("N_r"));

    let single = tempfile::tempdir().unwrap();
    ok(single.path(), &["converge", "--agents", "1", "--rollouts", "10", "--no-svg"]);
    let curve = String::from_utf8(read(single.path().join("curve.csv"))).unwrap();
    assert!(curve.lines().skip(1).all(|l| l.ends_with(",0") || l.ends_with(",1")));
    assert!(!single.path().join("curve.svg").exists());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 99\n[converge]\nagents = 5\nrollouts = 7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    ok(dir.path(), &["converge", "--config", cfg, "--rollouts", "9", "--no-svg"]);
    let effective = String::from_utf8(read(dir.path().join("converge.config.toml"))).unwrap();
    assert!(effective.contains("seed = 99"), "{effective}");
    assert!(effective.contains("agents = 5"));
    assert!(effective.contains("rollouts = 9"));
    let curve = String::from_utf8(read(dir.path().join("curve.csv"))).unwrap();
    assert_eq!(curve.lines().count(), 10);
}

#[test]
fn help_and_version_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let help = ok(dir.path(), &["--help"]);
    for cmd in ["gen-data", "train", "play", "exec", "converge", "registry"] {
        assert!(help.contains(cmd), "{cmd} missing from help");
    }
    assert!(ok(dir.path(), &["--version"]).contains(env!("CARGO_PKG_VERSION")));
}
