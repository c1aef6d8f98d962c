use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use forcedosc::interface::write_series;
use forcedosc::kinematics::{schedule, FlightCondition, Mode, OscillationSpec};
use forcedosc::plants::{simulate, Plant, QuasiSteadyParams};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forcedosc"))
}

fn run(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().unwrap()
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

const CASE: &str = r#"{
  "condition": { "chord": 0.2299, "freestream_speed": 100.0 },
  "oscillation": { "mean_deg": 3.16, "amplitude_deg": 4.59, "k": 0.0811, "cycles": 3 },
  "plant": { "kind": "quasi_steady", "cl_alpha": 5.0, "cl_q": 6.0, "cl_alphadot": 4.0, "cm_alpha": -0.8, "cm_q": -3.0, "cm_alphadot": -1.5 },
  "scenarios": "builtin"
}
"#;

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["validate"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn missing_config_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["sweep", "missing.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.cfg"));
}

#[test]
fn bad_arguments_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["identify", "x.csv", "--k", "0.1"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(run(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn invalid_config_names_key() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), CASE.replace("0.2299", "-1")).unwrap();
    let o = run(&["sweep", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("condition.chord") && err.contains("line 2"), "{err}");
}

#[test]
fn identify_synthetic_quasi_steady_file() {
    let dir = tempfile::tempdir().unwrap();
    let params = QuasiSteadyParams {
        cl_alpha: 5.0,
        cl_q: 6.0,
        cl_alphadot: 4.0,
        cm_q: -3.0,
        ..Default::default()
    };
    let spec = OscillationSpec::from_degrees(Mode::Alpha, 3.16, 4.59, 0.0811, 3, 720).unwrap();
    let sched = schedule(&spec, &FlightCondition::sdm(100.0)).unwrap();
    let series = simulate(&Plant::QuasiSteady(params), &sched).unwrap();
    std::fs::write(dir.path().join("loops.csv"), write_series(&series)).unwrap();

    let o = run(
        &["identify", "loops.csv", "--k", "0.0811", "--mode", "alpha", "--amplitude-deg", "4.59"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("static_slope") && out.contains("damping_sum"), "{out}");
    for line in out.lines().filter(|l| ["CL", "CD", "CM"].iter().any(|c| l.starts_with(c))) {
        let parsed: Vec<f64> = line.split_whitespace().skip(1).filter_map(|f| f.parse().ok()).collect();
        assert_eq!(parsed.len(), 6, "{line}");
    }
    let cl = out.lines().find(|l| l.starts_with("CL")).unwrap();
    let fields: Vec<f64> = cl.split_whitespace().skip(1).map(|f| f.parse().unwrap()).collect();
    assert!((fields[1] - 5.0).abs() < 1e-9, "{cl}");
    assert!((fields[2] - 10.0).abs() < 1e-9, "{cl}");

    let omega = sched.omega.to_string();
    let o = run(
        &["identify", "loops.csv", "--k", "0.0811", "--mode", "alpha", "--amplitude-deg", "4.59", "--skip", "0", "--omega", &omega],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = run(
        &["identify", "loops.csv", "--k", "0.0811", "--mode", "alpha", "--amplitude-deg", "4.59", "--speed", "100", "--chord", "0.2299"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("from k, speed and chord"));
}

#[test]
fn identify_reports_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("dup.csv"), "t,CL\n0,1\n1,2\n1,3\n").unwrap();
    let o = run(&["identify", "dup.csv", "--k", "0.1", "--mode", "q", "--amplitude-deg", "1", "--omega", "1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("row 4"), "{}", stderr(&o));
}

#[test]
fn simulate_writes_series_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("case.json"), CASE).unwrap();
    let o = run(&["simulate", "case.json", "--out", "alpha.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("alpha.csv")).unwrap();
    assert!(text.starts_with("t,CL,CD,CM\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 720);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("alpha.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["mode"], "alpha");
    assert!((meta["omega"].as_f64().unwrap() - 70.5524).abs() < 1e-3);

    let o = run(&["simulate", "case.json", "--scenario", "transition-beginning"], dir.path());
    assert_eq!(o.status.code(), Some(1), "hover has no time scale");
    let o = run(&["simulate", "case.json", "--scenario", "nowhere"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["simulate", "case.json", "--scenario", "mid-transition", "--mode", "q"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("t,CL,CD,CM\n"));
}

#[test]
fn sweep_writes_report_pair_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("case.json"), CASE).unwrap();
    for out in ["a", "b"] {
        let o = run(&["sweep", "case.json", "--out-dir", out], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let a = std::fs::read(dir.path().join("a/report.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b/report.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with("STATIC_ONLY"));
    assert!(dir.path().join("a/report.txt").exists());
    assert!(dir.path().join("a/mid-transition-loop.csv").exists());
    assert!(!dir.path().join("a/transition-beginning-loop.csv").exists());
}

#[test]
fn shipped_configs_run() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["transition_quasi_steady.json", "transition_indicial.json"] {
        let path = configs_dir().join(name);
        let o = bin()
            .args(["sweep", path.to_str().unwrap(), "--out-dir", "out"])
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn schema_lists_every_config_key() {
    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(configs_dir().join("../schema/case.schema.json")).unwrap(),
    )
    .unwrap();
    let props = &schema["properties"];
    for block in ["condition", "oscillation", "plant", "scenarios", "monitor_aliases"] {
        assert!(props.get(block).is_some(), "{block}");
    }
    for key in ["freestream_speed", "sound_speed", "density", "chord", "span", "area", "speed_basis"] {
        assert!(props["condition"]["properties"].get(key).is_some(), "{key}");
    }
    for key in ["modes", "mean_deg", "amplitude_deg", "k", "cycles", "samples_per_cycle", "skip_cycles"] {
        assert!(props["oscillation"]["properties"].get(key).is_some(), "{key}");
    }
}
