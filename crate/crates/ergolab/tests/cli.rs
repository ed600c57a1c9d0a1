use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use ergolab::config::canonical_theorem1;
use ergolab::{execute, validate, ExperimentConfig, RunReport};

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> ExperimentConfig {
    let text = fs::read_to_string(configs_dir().join(name)).unwrap();
    ExperimentConfig::from_json(&text).unwrap()
}

fn strip_timing(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn shipped_configs_validate() {
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ExperimentConfig::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
        let v = validate(&cfg);
        assert!(v.is_valid(), "{}: {:?}", path.display(), v.violations);
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = canonical_theorem1(8, 7, 2000.0);
    execute(&cfg, Some(&dir.path().join("a"))).unwrap();
    execute(&cfg, Some(&dir.path().join("b"))).unwrap();
    let a = strip_timing(&dir.path().join("a/report.json"));
    let b = strip_timing(&dir.path().join("b/report.json"));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(
        fs::read(dir.path().join("a/zeros.csv")).unwrap(),
        fs::read(dir.path().join("b/zeros.csv")).unwrap()
    );
    let mut other = cfg.clone();
    other.sampling.as_mut().unwrap().seed = 8;
    let (r, _) = ergolab::run(&other).unwrap();
    let (s, _) = ergolab::run(&cfg).unwrap();
    assert_ne!(r.results, s.results);
}

#[test]
fn config_echo_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = load("shneiberg.json");
    let mut small = cfg.clone();
    small.params.n = Some(2000);
    small.sampling.as_mut().unwrap().count = 3;
    execute(&small, Some(dir.path())).unwrap();
    let report: RunReport =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.config, small);
    assert_eq!(report.alpha_form.as_deref(), Some("named golden-conjugate"));
}

#[test]
fn phi_trace_is_a_sawtooth() {
    let dir = tempfile::tempdir().unwrap();
    execute(&load("phi_trace.json"), Some(dir.path())).unwrap();
    let text = fs::read_to_string(dir.path().join("phi_trace.csv")).unwrap();
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,phi"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (t, v) = l.split_once(',').unwrap();
            (t.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    let expected = [0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0];
    assert_eq!(rows.len(), expected.len());
    for (k, ((t, v), e)) in rows.iter().zip(expected).enumerate() {
        assert_eq!(*t, 0.5 * k as f64);
        assert!((v - e).abs() < 1e-15, "t = {t}: {v}");
    }
}

#[test]
fn period_two_zeros_are_even() {
    let dir = tempfile::tempdir().unwrap();
    execute(&load("period_two.json"), Some(dir.path())).unwrap();
    let text = fs::read_to_string(dir.path().join("zeros.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sample_id,t_k,in_target,residual"));
    let times: Vec<u64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(times, (1..=10).map(|k| 2 * k).collect::<Vec<u64>>());
    let sums = fs::read_to_string(dir.path().join("sums.csv")).unwrap();
    assert!(sums.starts_with("n,S\n1,1\n2,0\n"));
}

#[test]
fn invalid_config_lists_every_violation() {
    let mut cfg = canonical_theorem1(5, 1, 100.0);
    cfg.roof.as_mut().unwrap().values[0] = ergolab::config::RealSpec::Number(0.0);
    cfg.params.horizon = Some(-1.0);
    cfg.sampling = None;
    let err = ergolab::run(&cfg).unwrap_err().to_string();
    assert!(err.contains("roof must be positive"), "{err}");
    assert!(err.contains("horizon"), "{err}");
    assert!(err.contains("sampling"), "{err}");
}

#[test]
fn binary_run_and_validate() {
    let exe = env!("CARGO_BIN_EXE_ergolab");
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(exe)
        .args([
            "run",
            configs_dir().join("induced.json").to_str().unwrap(),
            "--output-dir",
        ])
        .arg(dir.path())
        .args(["--seed", "99"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: RunReport =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.config.sampling.unwrap().seed, 99);
    assert_eq!(report.summary.successes, 20);

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"experiment":"theorem1","system":{"rotation":{"alpha":"golden"}},
            "roof":{"values":[0]},"observable":{"preset":"height"},
            "target":{"rects":[{"a_lo":0,"a_hi":0.5,"b_lo":0,"b_hi":2}]},"params":{"horizon":10}}"#,
    )
    .unwrap();
    let out = Command::new(exe)
        .args(["validate", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("roof must be positive"), "{text}");
    assert!(text.contains("sampling"), "{text}");

    let good = Command::new(exe)
        .args([
            "validate",
            configs_dir().join("theorem1.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(good.status.success());
    assert_eq!(String::from_utf8_lossy(&good.stdout).trim(), "valid");
}

#[test]
fn induced_horizon_exhaustion_is_partial() {
    let mut cfg = load("induced.json");
    cfg.params.base_set = Some(vec![(0.0, 1e-6)]);
    cfg.params.step_horizon = Some(10);
    cfg.sampling.as_mut().unwrap().count = 3;
    let (report, _) = ergolab::run(&cfg).unwrap();
    assert_eq!(report.summary.complete, 0);
    assert_eq!(report.summary.successes, 0);
}
