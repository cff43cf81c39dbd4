//! Black-box tests of the `ptcavity` binary: exit codes, file schemas,
//! preset content and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ptcavity")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ptcavity-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("missing {name}: {e}"))
}

/// Parse a units-commented CSV into (header, rows of optional f64).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .expect("header row")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|cell| {
                    if cell.is_empty() {
                        None
                    } else {
                        cell.parse::<f64>().ok()
                    }
                })
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn invalid_configs_exit_with_code_2() {
    let dir = tmp_dir("badcfg");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.json");
    std::fs::write(&cfg, r#"{"params": {"kappa": -1.0}}"#).unwrap();
    let out = run(&["branch-sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let cfg2 = dir.join("bad2.json");
    std::fs::write(&cfg2, r#"{"hysteresis": {"samples": 1}}"#).unwrap();
    let out = run(&[
        "hysteresis",
        "--config",
        cfg2.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["hysteresis", "--preset", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors also surface as 2
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn branch_sweep_outputs_threshold_and_antisymmetry() {
    let dir = tmp_dir("branch");
    let out = run(&[
        "branch-sweep",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "csv,json",
    ]);
    assert!(out.status.success());

    let (header, rows) = parse_csv(&read(&dir, "branch_sweep.csv"));
    assert_eq!(header, ["G_MHz", "x_upper", "x_lower", "rho"]);
    assert_eq!(rows.len(), 701);
    // populated rows carry exactly antisymmetric branches
    let mut first_populated = None;
    for row in &rows {
        if let (Some(g), Some(xu), Some(xl)) = (row[0], row[1], row[2]) {
            if first_populated.is_none() {
                first_populated = Some(g);
            }
            assert_eq!(xu, -xl);
            assert!(xu > 0.0);
        }
    }
    // branching switches on within one log step of 204 MHz
    let g_first = first_populated.expect("supercritical rows exist");
    let log_step = (1e7_f64.sqrt().ln()) / 700.0;
    assert!(
        (g_first.ln() - 204.0_f64.ln()).abs() < 2.0 * log_step,
        "first populated G = {g_first}"
    );

    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir, "branch_sweep_summary.json")).unwrap();
    let saddle = summary["saddle_g"].as_f64().unwrap();
    assert!((saddle - 268.43).abs() < 0.05, "saddle {saddle}");
    let threshold = summary["threshold_g"].as_f64().unwrap();
    assert!((threshold - 203.96).abs() < 0.05);
    // at the threshold coupling the phase curves meet at +/- the detuning
    let meet = summary["meeting_delta"].as_array().unwrap();
    assert!((meet[1].as_f64().unwrap() - 32_000.0).abs() < 1.0);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn phase_match_curves_coincide_at_the_meeting_detunings() {
    let dir = tmp_dir("phase");
    let out = run(&["phase-match", "--out", dir.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&read(&dir, "phase_match.csv"));
    assert_eq!(header, ["delta_MHz", "phi0_upper", "phi0_lower"]);

    // G = 204: meeting detunings at +/- 32012.3 MHz
    let meeting = 32_012.3_f64;
    let grid_step = 70_000.0 / 700.0;
    for target in [-meeting, meeting] {
        let nearest = rows
            .iter()
            .filter(|r| r[1].is_some())
            .min_by(|a, b| {
                let da = (a[0].unwrap() - target).abs();
                let db = (b[0].unwrap() - target).abs();
                da.partial_cmp(&db).unwrap()
            })
            .expect("populated rows near the meeting point");
        assert!((nearest[0].unwrap() - target).abs() <= grid_step);
        let gap = (nearest[1].unwrap() - nearest[2].unwrap()).abs();
        // the curves close up within the grid resolution of the sweep
        assert!(gap < 0.05, "phase gap {gap} at delta {}", nearest[0].unwrap());
    }

    // interior rows keep the two branches apart
    let mid = rows.iter().find(|r| r[0] == Some(0.0)).unwrap();
    assert!((mid[1].unwrap() - mid[2].unwrap()).abs() > 0.1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn gain_map_fig4b_has_resonant_gain_inside_a_closed_region() {
    let dir = tmp_dir("gainmap");
    let out = run(&[
        "gain-map",
        "--preset",
        "fig4b",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "csv,json",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&read(&dir, "gain_map.csv"));
    assert_eq!(header, ["delta_MHz", "phi_rad", "margin_MHz4", "classification"]);
    assert_eq!(rows.len(), 201 * 201);

    let text = read(&dir, "gain_map.csv");
    let mut gain_at_resonance = 0usize;
    let mut gain_at_edges = 0usize;
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        let delta: f64 = cells[0].parse().unwrap();
        let class = cells[3];
        if delta == 0.0 && class == "gain" {
            gain_at_resonance += 1;
        }
        if delta.abs() >= 1.0e6 && class == "gain" {
            gain_at_edges += 1;
        }
    }
    assert!(gain_at_resonance > 0, "no gain cells in the resonant column");
    assert_eq!(gain_at_edges, 0, "gain region not closed in detuning");

    let contour: serde_json::Value =
        serde_json::from_str(&read(&dir, "gain_map_contour.json")).unwrap();
    assert!(!contour["polylines"].as_array().unwrap().is_empty());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn hysteresis_single_detuning_reports_computed_folds() {
    let dir = tmp_dir("hyst");
    let out = run(&[
        "hysteresis",
        "--preset",
        "fig5",
        "--delta",
        "1.5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir, "hysteresis_summary.json")).unwrap();
    let curves = summary["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 2);
    // the balance-matched phases put the fold on the lower branch here
    for c in curves {
        let folded = !c["fold"].is_null();
        match c["branch"].as_str().unwrap() {
            "Upper" => assert!(!folded, "upper branch unexpectedly folded"),
            "Lower" => assert!(folded, "lower branch did not fold"),
            other => panic!("unexpected branch {other}"),
        }
    }
    assert_eq!(summary["folds_reported"].as_u64(), Some(1));

    // probes include the origin, where the count across branches is 3
    let probes = summary["count_probes"].as_array().unwrap();
    let origin = probes
        .iter()
        .find(|p| p[1].as_f64() == Some(0.0))
        .expect("origin probe");
    assert_eq!(origin[2].as_u64(), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn simulate_writes_trajectory_and_metadata() {
    let dir = tmp_dir("sim");
    let out = run(&["simulate", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&read(&dir, "trajectory.csv"));
    assert_eq!(header, ["t_us", "re_a", "im_a", "re_b", "im_b", "x", "v"]);
    assert_eq!(rows.len(), 1001);
    assert_eq!(rows[0][0], Some(0.0));
    // times strictly increase
    for w in rows.windows(2) {
        assert!(w[1][0].unwrap() > w[0][0].unwrap());
    }
    let meta: serde_json::Value =
        serde_json::from_str(&read(&dir, "trajectory_meta.json")).unwrap();
    assert_eq!(meta["termination"].as_str(), Some("MaxTime"));
    assert_eq!(meta["driven"].as_bool(), Some(false));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn driven_simulation_approaches_the_drive_ratio() {
    let dir = tmp_dir("driven");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    // weak drive, inert mirror: a(inf) = G sqrt(N) / kappa
    std::fs::write(
        &cfg,
        r#"{
            "params": {
                "kappa": 1.3, "gamma": 3.0, "gamma_m": 0.01, "delta": 0.0,
                "eta": 1e-12, "g": 0.2, "phi": 0.0, "g_single": 0.2,
                "n_atoms": 4, "beta": 1e-24, "omega_m": 1.0,
                "omega_abs": null, "omega0_abs": null
            },
            "simulate": {"a_re": 0.0, "dt": 0.001, "t_max": 40.0, "stride": 1000, "driven": true}
        }"#,
    )
    .unwrap();
    let out = run(&[
        "simulate",
        "--driven",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = parse_csv(&read(&dir, "trajectory.csv"));
    let last = rows.last().unwrap();
    let expect = 0.2 * 2.0 / 1.3; // G sqrt(N) / kappa
    assert!((last[1].unwrap() - expect).abs() < 1e-5 * expect);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dirs = [tmp_dir("det-a"), tmp_dir("det-b")];
    for dir in &dirs {
        let out = run(&[
            "branch-sweep",
            "--out",
            dir.to_str().unwrap(),
            "--format",
            "csv,json,svg",
        ]);
        assert!(out.status.success());
    }
    for name in ["branch_sweep.csv", "branch_sweep_summary.json", "branch_sweep.svg"] {
        let a = std::fs::read(dirs[0].join(name)).unwrap();
        let b = std::fs::read(dirs[1].join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
    for dir in &dirs {
        let _ = std::fs::remove_dir_all(dir);
    }
}

#[test]
fn verify_succeeds_and_respects_the_out_variable() {
    let dir = tmp_dir("verify-env");
    let out = Command::new(bin())
        .args(["verify", "--seed", "7"])
        .env("PTCAVITY_OUT", dir.to_str().unwrap())
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&read(&dir, "verify_report.json")).unwrap();
    assert_eq!(report["seed"].as_u64(), Some(7));
    assert_eq!(report["passed"].as_bool(), Some(true));
    let _ = std::fs::remove_dir_all(&dir);
}
