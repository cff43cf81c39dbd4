//! `ptcavity` — steady-state, spectral-gain, hysteresis and time-domain
//! analysis of an atom-driven optomechanical cavity.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical failure.

mod config;
mod contour;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex;
use serde::Serialize;

use ptcavity_core::dynamics::{self, ModeState};
use ptcavity_core::hysteresis as hyst;
use ptcavity_core::params::Branch;
use ptcavity_core::spectral::{self, AxisSpec, Classification, Spacing, SweepAxis};
use ptcavity_core::steady;
use ptcavity_core::verify;
use ptcavity_core::SystemParams64 as Params;

use config::{GainMapPreset, OutputFormat, RunConfig, UNITS_NOTE};
use output::{num, render_json, write_atomic, CsvTable, Scale, Series, SvgPlot};

#[derive(Parser)]
#[command(
    name = "ptcavity",
    version,
    about = "Steady states, phase matching, gain maps, hysteresis and dynamics of an atom-driven optomechanical cavity"
)]
struct Cli {
    /// JSON configuration file; omitted fields use the reference defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides config and the PTCAVITY_OUT variable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated output formats: csv,json,svg,ascii.
    #[arg(long, global = true, value_delimiter = ',')]
    format: Option<Vec<OutputFormat>>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mirror equilibrium branches against the collective coupling.
    BranchSweep,
    /// Matching phase of both branches against the detuning.
    PhaseMatch {
        /// Coupling at which the phases are traced, MHz.
        #[arg(long)]
        g: Option<f64>,
    },
    /// Net-gain inequality over a two-axis grid.
    GainMap {
        #[arg(long, value_enum)]
        preset: Option<GainMapPreset>,
    },
    /// Quadrature hysteresis curves per branch and detuning.
    Hysteresis {
        /// Named bundle of detunings (fig5 = 0, -1.5, +1.5 MHz at G = 345 MHz).
        #[arg(long)]
        preset: Option<String>,
        /// Trace a single detuning, MHz (overrides the preset list).
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        /// Coupling, MHz.
        #[arg(long)]
        g: Option<f64>,
    },
    /// Integrate the equations of motion from a configured initial state.
    Simulate {
        /// Freeze the atoms at sqrt(N) and drive the cavity with G sqrt(N).
        #[arg(long)]
        driven: bool,
    },
    /// Run the randomized invariant suites and write a JSON report.
    Verify,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(String),
    Numerical(String),
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ptcavity: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(CliError::Config)?,
        None => RunConfig::default(),
    };
    if let Ok(dir) = std::env::var("PTCAVITY_OUT") {
        cfg.out_dir = PathBuf::from(dir);
    }
    if let Some(dir) = cli.out {
        cfg.out_dir = dir;
    }
    if let Some(formats) = cli.format {
        cfg.formats = formats;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    match cli.command {
        Command::BranchSweep => cmd_branch_sweep(&cfg),
        Command::PhaseMatch { g } => {
            if let Some(g) = g {
                cfg.phase_match.g = g;
            }
            cmd_phase_match(&cfg)
        }
        Command::GainMap { preset } => {
            if preset.is_some() {
                cfg.gain_map.preset = preset;
            }
            cmd_gain_map(&cfg)
        }
        Command::Hysteresis { preset, delta, g } => {
            if let Some(name) = preset {
                if name != "fig5" {
                    return Err(CliError::Config(format!(
                        "unknown hysteresis preset '{name}' (available: fig5)"
                    )));
                }
                cfg.hysteresis = config::HysteresisCfg::default();
            }
            if let Some(g) = g {
                cfg.hysteresis.g = g;
            }
            if let Some(d) = delta {
                cfg.hysteresis.deltas = vec![d];
            }
            cmd_hysteresis(&cfg)
        }
        Command::Simulate { driven } => {
            if driven {
                cfg.simulate.driven = true;
            }
            cmd_simulate(&cfg)
        }
        Command::Verify => cmd_verify(&cfg),
    }
}

fn wants(cfg: &RunConfig, f: OutputFormat) -> bool {
    cfg.formats.contains(&f)
}

#[derive(Serialize)]
struct BranchSummary {
    units: &'static str,
    /// Smallest coupling with rho >= 1, MHz.
    threshold_g: f64,
    /// Inflection of the branch curve, MHz.
    saddle_g: f64,
    /// Detunings where the matching-phase curves meet at the threshold
    /// coupling, MHz.
    meeting_delta: Option<(f64, f64)>,
}

fn cmd_branch_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.params;
    let bs = &cfg.branch_sweep;
    if bs.count < 2 {
        return Err(CliError::Config("branch_sweep.count must be >= 2".into()));
    }
    let g_min = bs.g_min.unwrap_or(p.g_single);
    let g_max = bs.g_max.unwrap_or(p.g_single * 1e7_f64.sqrt());
    if !(g_min > 0.0 && g_max > g_min) {
        return Err(CliError::Config(
            "branch sweep needs 0 < g_min < g_max".into(),
        ));
    }

    let mut table = CsvTable::new(&["G_MHz", "x_upper", "x_lower", "rho"]);
    let mut upper_pts = Vec::new();
    let mut lower_pts = Vec::new();
    for i in 0..bs.count {
        let t = i as f64 / (bs.count - 1) as f64;
        let g = (g_min.ln() + (g_max.ln() - g_min.ln()) * t).exp();
        let q = p.with_g(g);
        let rho = steady::compute_rho(&q);
        if !rho.is_finite() {
            return Err(CliError::Numerical(format!("rho not finite at G = {g}")));
        }
        let sols = steady::steady_states(&q, bs.k);
        if sols.len() == 3 {
            let (xu, xl) = (sols[1].x_ss, sols[2].x_ss);
            upper_pts.push((g, xu));
            lower_pts.push((g, xl));
            table.push_row(vec![num(g), num(xu), num(xl), num(rho)]);
        } else {
            table.push_row(vec![num(g), None, None, num(rho)]);
        }
    }

    let threshold_g = (p.kappa * p.kappa * (p.gamma * p.gamma + p.delta * p.delta)).powf(0.25);
    let summary = BranchSummary {
        units: UNITS_NOTE,
        threshold_g,
        saddle_g: steady::saddle_g(&p),
        meeting_delta: steady::meeting_delta(&p.with_g(threshold_g)).ok(),
    };

    if wants(cfg, OutputFormat::Csv) {
        write_atomic(&cfg.out_dir, "branch_sweep.csv", &table.render())?;
    }
    if wants(cfg, OutputFormat::Json) {
        write_atomic(&cfg.out_dir, "branch_sweep_summary.json", &render_json(&summary))?;
    }
    if wants(cfg, OutputFormat::Svg) {
        let y_max = upper_pts.iter().map(|&(_, x)| x).fold(1e-12, f64::max);
        let plot = SvgPlot {
            title: "Mirror equilibrium branches".into(),
            x_label: "G (MHz, log)".into(),
            y_label: "x (displacement units)".into(),
            x_range: (g_min, g_max),
            y_range: (-y_max, y_max),
            x_scale: Scale::Log,
            y_scale: Scale::Linear,
            series: vec![
                Series {
                    label: "upper".into(),
                    color: "#1f77b4",
                    points: upper_pts,
                },
                Series {
                    label: "lower".into(),
                    color: "#ff7f0e",
                    points: lower_pts,
                },
            ],
        };
        write_atomic(&cfg.out_dir, "branch_sweep.svg", &plot.render())?;
    }
    println!(
        "branch-sweep: {} rows, threshold {:.4} MHz, saddle {:.4} MHz",
        bs.count, summary.threshold_g, summary.saddle_g
    );
    Ok(())
}

fn cmd_phase_match(cfg: &RunConfig) -> Result<(), CliError> {
    let pm = &cfg.phase_match;
    if pm.count < 2 {
        return Err(CliError::Config("phase_match.count must be >= 2".into()));
    }
    if pm.delta_max <= pm.delta_min {
        return Err(CliError::Config("phase_match delta range is empty".into()));
    }
    let p = cfg.params.with_g(pm.g);

    let mut table = CsvTable::new(&["delta_MHz", "phi0_upper", "phi0_lower"]);
    let mut upper_pts = Vec::new();
    let mut lower_pts = Vec::new();
    for i in 0..pm.count {
        let t = i as f64 / (pm.count - 1) as f64;
        let delta = pm.delta_min + (pm.delta_max - pm.delta_min) * t;
        let q = p.with_delta(delta);
        let rho = steady::compute_rho(&q);
        if rho >= 1.0 {
            let x = q.kappa / q.eta * (rho - 1.0).max(0.0).sqrt();
            let up = steady::phi_matching(&q, x, pm.k)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            let lo = steady::phi_matching(&q, -x, pm.k)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            upper_pts.push((delta, up));
            lower_pts.push((delta, lo));
            table.push_row(vec![num(delta), num(up), num(lo)]);
        } else {
            table.push_row(vec![num(delta), None, None]);
        }
    }

    if wants(cfg, OutputFormat::Csv) {
        write_atomic(&cfg.out_dir, "phase_match.csv", &table.render())?;
    }
    if wants(cfg, OutputFormat::Svg) {
        let all: Vec<f64> = upper_pts.iter().chain(&lower_pts).map(|&(_, v)| v).collect();
        let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let plot = SvgPlot {
            title: format!("Matching phase at G = {} MHz", pm.g),
            x_label: "delta (MHz)".into(),
            y_label: "phi0 (rad)".into(),
            x_range: (pm.delta_min, pm.delta_max),
            y_range: (lo - 0.1, hi + 0.1),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
            series: vec![
                Series {
                    label: "upper".into(),
                    color: "#1f77b4",
                    points: upper_pts,
                },
                Series {
                    label: "lower".into(),
                    color: "#ff7f0e",
                    points: lower_pts,
                },
            ],
        };
        write_atomic(&cfg.out_dir, "phase_match.svg", &plot.render())?;
    }
    println!("phase-match: {} rows at G = {} MHz", pm.count, pm.g);
    Ok(())
}

#[derive(Serialize)]
struct ContourDoc {
    units: &'static str,
    rows_axis: SweepAxis,
    cols_axis: SweepAxis,
    x: f64,
    /// Zero-level polylines of the margin, as (row value, col value) pairs.
    polylines: Vec<Vec<(f64, f64)>>,
}

fn resolve_gain_axes(cfg: &RunConfig) -> Result<(AxisSpec<f64>, AxisSpec<f64>), CliError> {
    let gm = &cfg.gain_map;
    let n = gm.resolution.max(2);
    let phi_axis = AxisSpec {
        axis: SweepAxis::Phi,
        min: -std::f64::consts::FRAC_PI_2,
        max: std::f64::consts::FRAC_PI_2,
        count: n,
        spacing: Spacing::Linear,
    };
    match (gm.rows, gm.cols) {
        (Some(rows), Some(cols)) => Ok((rows, cols)),
        (None, None) => match gm.preset {
            Some(GainMapPreset::Fig4a) | None => Ok((
                AxisSpec {
                    axis: SweepAxis::G,
                    min: cfg.params.g_single,
                    max: cfg.params.g_single * 1e7_f64.sqrt(),
                    count: n,
                    spacing: Spacing::Log,
                },
                phi_axis,
            )),
            Some(GainMapPreset::Fig4b) => Ok((
                AxisSpec {
                    axis: SweepAxis::Delta,
                    min: -1.0e6,
                    max: 1.0e6,
                    count: n,
                    spacing: Spacing::Linear,
                },
                phi_axis,
            )),
        },
        _ => Err(CliError::Config(
            "gain_map.rows and gain_map.cols must be set together".into(),
        )),
    }
}

fn cmd_gain_map(cfg: &RunConfig) -> Result<(), CliError> {
    let (rows, cols) = resolve_gain_axes(cfg)?;
    let mut p = cfg.params;
    if cfg.gain_map.preset == Some(GainMapPreset::Fig4a) {
        p.delta = 0.0;
    }
    if cfg.gain_map.preset == Some(GainMapPreset::Fig4b) {
        p.g = 1000.0;
    }
    let map = spectral::gain_map(&p, rows, cols, cfg.gain_map.x)
        .map_err(|e| CliError::Config(e.to_string()))?;
    if map.samples.iter().any(|s| !s.margin.is_finite()) {
        return Err(CliError::Numerical("margin not finite on the grid".into()));
    }

    let axis_name = |a: SweepAxis| match a {
        SweepAxis::Delta => "delta_MHz",
        SweepAxis::G => "G_MHz",
        SweepAxis::Phi => "phi_rad",
    };
    if wants(cfg, OutputFormat::Csv) {
        let mut table = CsvTable::new(&[
            axis_name(rows.axis),
            axis_name(cols.axis),
            "margin_MHz4",
            "classification",
        ]);
        for r in 0..rows.count {
            for c in 0..cols.count {
                let s = map.at(r, c);
                let class = match s.classification {
                    Classification::NetGain => "gain",
                    Classification::NetLoss => "loss",
                    Classification::Balanced => "balanced",
                };
                table.push_row(vec![
                    num(rows.value(r)),
                    num(cols.value(c)),
                    num(s.margin),
                    Some(class.to_string()),
                ]);
            }
        }
        write_atomic(&cfg.out_dir, "gain_map.csv", &table.render())?;
    }

    let row_coords = rows.values();
    let col_coords = cols.values();
    let margins: Vec<f64> = map.samples.iter().map(|s| s.margin).collect();
    let polylines = contour::zero_contour(&row_coords, &col_coords, &margins);
    if wants(cfg, OutputFormat::Json) {
        let doc = ContourDoc {
            units: UNITS_NOTE,
            rows_axis: rows.axis,
            cols_axis: cols.axis,
            x: cfg.gain_map.x,
            polylines: polylines.clone(),
        };
        write_atomic(&cfg.out_dir, "gain_map_contour.json", &render_json(&doc))?;
    }
    if wants(cfg, OutputFormat::Svg) {
        let series = polylines
            .into_iter()
            .enumerate()
            .map(|(i, line)| Series {
                label: format!("zero level {i}"),
                color: "#cc0000",
                // plot col value on x, row value on y
                points: line.into_iter().map(|(r, c)| (c, r)).collect(),
            })
            .collect();
        let plot = SvgPlot {
            title: "Net-gain boundary".into(),
            x_label: axis_name(cols.axis).into(),
            y_label: format!(
                "{}{}",
                axis_name(rows.axis),
                if rows.spacing == Spacing::Log { " (log)" } else { "" }
            ),
            x_range: (cols.min, cols.max),
            y_range: (rows.min, rows.max),
            x_scale: Scale::Linear,
            y_scale: if rows.spacing == Spacing::Log {
                Scale::Log
            } else {
                Scale::Linear
            },
            series,
        };
        write_atomic(&cfg.out_dir, "gain_map.svg", &plot.render())?;
    }
    if wants(cfg, OutputFormat::Ascii) {
        let grid = output::ascii_grid(
            rows.count,
            cols.count,
            |r, c| match map.at(r, c).classification {
                Classification::NetGain => '#',
                Classification::NetLoss => '.',
                Classification::Balanced => 'o',
            },
            72,
            36,
        );
        write_atomic(&cfg.out_dir, "gain_map.txt", &grid)?;
    }
    let gain_cells = map
        .samples
        .iter()
        .filter(|s| s.classification == Classification::NetGain)
        .count();
    println!(
        "gain-map: {}x{} grid, {gain_cells} net-gain cells",
        rows.count, cols.count
    );
    Ok(())
}

#[derive(Serialize)]
struct CurveSummary {
    branch: Branch,
    delta: f64,
    k: i32,
    phi0: f64,
    c3: f64,
    c1: f64,
    fold: Option<(f64, f64)>,
}

#[derive(Serialize)]
struct HysteresisSummary {
    units: &'static str,
    g: f64,
    curves: Vec<CurveSummary>,
    /// Distinct cavity-quadrature values across both branches at probe
    /// inputs: (delta, X_b, count).
    count_probes: Vec<(f64, f64, usize)>,
    folds_reported: usize,
}

fn delta_tag(delta: f64) -> String {
    let sign = if delta < 0.0 { "m" } else { "p" };
    format!("{sign}{}", delta.abs())
}

fn cmd_hysteresis(cfg: &RunConfig) -> Result<(), CliError> {
    let hc = &cfg.hysteresis;
    if hc.samples < 2 {
        return Err(CliError::Config("hysteresis.samples must be >= 2".into()));
    }
    if hc.deltas.is_empty() {
        return Err(CliError::Config("hysteresis.deltas is empty".into()));
    }
    let mut curves = Vec::new();
    let mut probes = Vec::new();
    let mut svg_series = Vec::new();
    for &delta in &hc.deltas {
        let p = cfg.params.with_g(hc.g).with_delta(delta);
        for branch in [Branch::Upper, Branch::Lower] {
            let curve = hyst::trace_curve(&p, branch, hc.k, hc.x_a_min, hc.x_a_max, hc.samples)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let mut table = CsvTable::new(&["X_a", "X_b"]);
            for &(xa, xb) in &curve.samples {
                table.push_row(vec![num(xa), num(xb)]);
            }
            if wants(cfg, OutputFormat::Csv) {
                let name = format!(
                    "hysteresis_{}_{}.csv",
                    if branch == Branch::Upper { "upper" } else { "lower" },
                    delta_tag(delta)
                );
                write_atomic(&cfg.out_dir, &name, &table.render())?;
            }
            if wants(cfg, OutputFormat::Svg) {
                svg_series.push(Series {
                    label: format!("{branch:?} delta={delta}"),
                    color: if branch == Branch::Upper { "#1f77b4" } else { "#ff7f0e" },
                    // input X_b horizontal, output X_a vertical
                    points: curve.samples.iter().map(|&(xa, xb)| (xb, xa)).collect(),
                });
            }
            curves.push(CurveSummary {
                branch,
                delta,
                k: hc.k,
                phi0: curve.phi0,
                c3: curve.c3,
                c1: curve.c1,
                fold: curve.fold,
            });
        }
        // probe the combined count at the origin and inside/outside folds
        let widest_fold = curves
            .iter()
            .filter(|c| c.delta == delta)
            .filter_map(|c| c.fold.map(|(_, hi)| hi))
            .fold(0.0_f64, f64::max);
        let mut probe_points = vec![0.0];
        if widest_fold > 0.0 {
            probe_points.push(0.5 * widest_fold);
            probe_points.push(2.0 * widest_fold);
        }
        for x_b in probe_points {
            let n = hyst::multistability_count(&p.with_g(hc.g), hc.k, x_b)
                .map_err(|e| CliError::Config(e.to_string()))?;
            probes.push((delta, x_b, n.total));
        }
    }

    let folds_reported = curves.iter().filter(|c| c.fold.is_some()).count();
    let summary = HysteresisSummary {
        units: UNITS_NOTE,
        g: hc.g,
        curves,
        count_probes: probes,
        folds_reported,
    };
    if wants(cfg, OutputFormat::Json) {
        write_atomic(&cfg.out_dir, "hysteresis_summary.json", &render_json(&summary))?;
    }
    if wants(cfg, OutputFormat::Svg) {
        let xb_max = svg_series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0.abs()))
            .fold(1e-12, f64::max);
        let plot = SvgPlot {
            title: format!("Quadrature hysteresis at G = {} MHz", hc.g),
            x_label: "X_b (input quadrature)".into(),
            y_label: "X_a (output quadrature)".into(),
            x_range: (-xb_max, xb_max),
            y_range: (hc.x_a_min, hc.x_a_max),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
            series: svg_series,
        };
        write_atomic(&cfg.out_dir, "hysteresis.svg", &plot.render())?;
    }
    println!(
        "hysteresis: {} curves at G = {} MHz, {} folds reported",
        summary.curves.len(),
        hc.g,
        folds_reported
    );
    Ok(())
}

#[derive(Serialize)]
struct TrajectoryMeta {
    units: &'static str,
    params: Params,
    driven: bool,
    dt: f64,
    stride: usize,
    termination: dynamics::Termination,
    final_time: f64,
    decay_threshold_rel: f64,
    diverge_threshold_rel: f64,
}

fn cmd_simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let sc = &cfg.simulate;
    let s0 = ModeState {
        a: Complex::new(sc.a_re, sc.a_im),
        b: Complex::new(sc.b_re, sc.b_im),
        x: sc.x,
        v: sc.v,
    };
    let run = if sc.driven {
        dynamics::driven_mode(&cfg.params, s0, sc.dt, sc.t_max, sc.stride)
    } else {
        dynamics::integrate(&cfg.params, s0, sc.dt, sc.t_max, sc.stride)
    };
    let traj = run.map_err(|e| match e {
        dynamics::DynamicsError::BadStep => CliError::Config(e.to_string()),
        dynamics::DynamicsError::NonFiniteState { .. } => CliError::Numerical(e.to_string()),
    })?;

    if wants(cfg, OutputFormat::Csv) {
        let mut table = CsvTable::new(&["t_us", "re_a", "im_a", "re_b", "im_b", "x", "v"]);
        for (t, s) in traj.times.iter().zip(&traj.states) {
            table.push_row(vec![
                num(*t),
                num(s.a.re),
                num(s.a.im),
                num(s.b.re),
                num(s.b.im),
                num(s.x),
                num(s.v),
            ]);
        }
        write_atomic(&cfg.out_dir, "trajectory.csv", &table.render())?;
    }
    if wants(cfg, OutputFormat::Json) {
        let meta = TrajectoryMeta {
            units: UNITS_NOTE,
            params: cfg.params,
            driven: sc.driven,
            dt: traj.dt,
            stride: traj.stride,
            termination: traj.termination,
            final_time: traj.final_time(),
            decay_threshold_rel: 1e-12,
            diverge_threshold_rel: 1e12,
        };
        write_atomic(&cfg.out_dir, "trajectory_meta.json", &render_json(&meta))?;
    }
    println!(
        "simulate: {} samples, ended {:?} at t = {} us",
        traj.states.len(),
        traj.termination,
        traj.final_time()
    );
    Ok(())
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let report = verify::run_all(cfg.seed);
    write_atomic(&cfg.out_dir, "verify_report.json", &render_json(&report))?;
    for suite in &report.suites {
        println!(
            "{:32} {:5} cases  {:3} failures",
            suite.suite, suite.cases, suite.failures
        );
    }
    if report.passed {
        println!("verify: all suites passed (seed {})", report.seed);
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
