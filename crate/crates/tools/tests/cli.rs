use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pulsecorr_core::measures::measure_trajectory;
use pulsecorr_core::{CorrelationSample, InitialStateKind, Trajectory};
use pulsecorr_tools::csv::{read_trajectory_csv, render, write_trajectory_csv, HEADER};
use pulsecorr_tools::summary::ScenarioSummary;

fn pulsecorr(args: &[&str], out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pulsecorr"));
    cmd.args(args);
    if let Some(dir) = out {
        cmd.arg("--out").arg(dir);
    }
    cmd.output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn constant_samples(kind: InitialStateKind, n: usize) -> Vec<CorrelationSample> {
    let mut traj = Trajectory::default();
    for i in 0..n {
        traj.push(i as f64 * 0.01, kind.density_matrix());
    }
    measure_trajectory(&traj).unwrap()
}

const SHORT_CONFIG: &str = r#"{
    "epsilon0": 0.1, "epsilon1": 0.1, "j_zz": 1.0, "j_xx": 1.0,
    "a_pulse": 1.0, "beta_pulse": 1.0, "t0": 1.0,
    "gamma_amp": 0.1, "gamma_deph": 0.01, "g_pulse": 0.01,
    "t_max": 2.0, "dt": 0.001, "sample_stride": 100,
    "initial_state": "bell"
}"#;

#[test]
fn list_prints_sixteen_names() {
    let o = pulsecorr(&["list"], None);
    assert!(o.status.success());
    let names: Vec<_> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    assert_eq!(names.len(), 16);
    assert_eq!(names[0], "fig1_top");
    assert_eq!(names[15], "fig8_bottom");
}

#[test]
fn unknown_scenario_exits_2_with_names() {
    let dir = tempfile::tempdir().unwrap();
    let o = pulsecorr(&["run", "--scenario", "nonexistent"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("nonexistent") && err.contains("fig4_bottom"),
        "{err}"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["run"],
        vec!["frobnicate"],
        vec!["run", "--scenario", "fig1_top", "--qd-scale", "triple"],
        vec!["run", "--scenario", "fig1_top", "--dt", "0.0007"],
        vec![
            "sweep",
            "--scenario",
            "fig4_top",
            "--axis",
            "mass",
            "--values",
            "1",
        ],
    ] {
        let dir = tempfile::tempdir().unwrap();
        let o = pulsecorr(&args, Some(dir.path()));
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        SHORT_CONFIG.replace("\"t0\"", "\"unknown\": 3, \"t0\""),
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    for path in [&bad, &missing] {
        let o = pulsecorr(
            &["run", "--config", path.to_str().unwrap()],
            Some(dir.path()),
        );
        assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let o = pulsecorr(
        &["run", "--scenario", "fig1_top"],
        Some(&blocker.join("sub")),
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn config_run_writes_selected_state_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("short.json");
    fs::write(&cfg, SHORT_CONFIG).unwrap();
    let out = dir.path().join("out");
    let o = pulsecorr(
        &[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--stride",
            "50",
            "--no-exact-eur",
        ],
        Some(&out),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!out.join("short_separable.csv").exists());
    let samples = read_trajectory_csv(&out.join("short_bell.csv")).unwrap();
    assert_eq!(samples.len(), 41);
    assert!(samples.iter().all(|s| s.u_exact.is_nan()));
    assert_eq!(samples[0].ng, 0.5);

    let summary: ScenarioSummary =
        serde_json::from_str(&fs::read_to_string(out.join("short_summary.json")).unwrap()).unwrap();
    assert_eq!(summary.scenario, "short");
    assert_eq!(summary.runs.len(), 1);
    assert_eq!(summary.parameters.sample_stride, 50);
    assert_eq!(summary.runs[0].summary.ng_initial, 0.5);
}

#[test]
fn sweep_writes_one_file_set_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("base.json");
    fs::write(&cfg, SHORT_CONFIG.replace("\"bell\"", "\"both\"")).unwrap();
    let o = pulsecorr(
        &[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--axis",
            "gamma_amp",
            "--values",
            "0.01,0.1",
            "--qd-scale",
            "doubled",
            "--jobs",
            "2",
        ],
        Some(dir.path()),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    for v in ["0.01", "0.1"] {
        for kind in ["bell", "separable"] {
            assert!(dir
                .path()
                .join(format!("base_gamma_amp_{v}_{kind}.csv"))
                .exists());
        }
        let text = fs::read_to_string(dir.path().join(format!("base_gamma_amp_{v}_summary.json")))
            .unwrap();
        let s: ScenarioSummary = serde_json::from_str(&text).unwrap();
        assert_eq!(s.parameters.gamma_amp, v.parse::<f64>().unwrap());
        let bell = &s.runs[0].summary;
        assert!((bell.qd_initial - 1.0).abs() < 1e-12, "doubled scale");
    }
}

#[test]
fn csv_round_trip_and_bell_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.csv");
    let samples = constant_samples(InitialStateKind::Bell, 5);
    write_trajectory_csv(&samples, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    assert_eq!(lines.next(), Some("0,0.5,0.5,1,0,0,1,0"));
    let back = read_trajectory_csv(&path).unwrap();
    assert_eq!(back.len(), samples.len());
    for (a, b) in samples.iter().zip(&back) {
        for (x, y) in [
            (a.t, b.t),
            (a.ng, b.ng),
            (a.qd, b.qd),
            (a.u_exact, b.u_exact),
            (a.purity, b.purity),
        ] {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }
}

#[test]
fn csv_of_maximally_mixed_state() {
    let mut traj = Trajectory::default();
    traj.push(
        0.0,
        pulsecorr_core::ComplexMatrix::identity(4).scale_real(0.25),
    );
    let samples = measure_trajectory(&traj).unwrap();
    let text = render(&samples);
    assert_eq!(text.lines().nth(1), Some("0,0,0,0,2,2,0.25,0"));
}

#[test]
fn empty_samples_create_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    assert!(write_trajectory_csv(&[], &path).is_err());
    assert!(!path.exists());
}

#[test]
fn summary_fixtures_on_builtin_scenarios() {
    use pulsecorr_core::scenarios::find_scenario;
    use pulsecorr_tools::summary::summarize;
    use pulsecorr_tools::QdScale;

    let constant = constant_samples(InitialStateKind::Bell, 10);
    assert_eq!(
        summarize(&constant, 0.0, QdScale::Raw).sudden_death_time,
        None
    );

    let fig4 = find_scenario("fig4_bottom").unwrap();
    let bell = fig4
        .run_initial(InitialStateKind::Bell, Default::default())
        .unwrap();
    let tc = summarize(&bell.samples, fig4.pulse.t0, QdScale::Raw)
        .sudden_death_time
        .unwrap();
    assert!((4.0..=9.0).contains(&tc), "t_c = {tc}");
}
