//! Command-line driver: configuration ingestion, sweep orchestration, and
//! result serialization.
//!
//! Exit codes: 0 success, 2 configuration/validation error, 3 numerical
//! error, 4 capacity error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rydsqueeze::correlator::correlators_heaviside_1d;
use rydsqueeze::ensemble::{
    geometry_sweep, run_ensemble, ClockSpec, EnsembleMode, GeometryCase, GeometryFill,
};
use rydsqueeze::error::Error;
use rydsqueeze::fits::{tau_fit, theta_fit, xi2_fit, FitInputs};
use rydsqueeze::geometry::{build_lattice, fill_full, tweezer_block, LatticeSpec};
use rydsqueeze::interaction::defects::{forster_defect, QuantumDefectTable};
use rydsqueeze::interaction::{derived_params, Potential};
use rydsqueeze::oracle::{simulate_sequence_full, SequenceSpec, MAX_ORACLE_ATOMS};
use rydsqueeze::squeezing::{optimize_tau, xi2_min_of, golden_section, TauScanSpec};

use config::RunConfig;
use output::{provenance, Cell, Csv, Sink};

#[derive(Parser)]
#[command(
    name = "rydsqueeze",
    version,
    about = "Spin squeezing via Rydberg dressing on fully and fractionally filled optical lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV/JSON path (stdout when absent; CSV outputs get a
    /// `.summary.json` sidecar).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enable long-running sweep points.
    #[arg(long, global = true)]
    slow: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize the squeezing of the fully filled configured lattice.
    Squeeze,
    /// Monte Carlo over random fillings of the configured lattice.
    Ensemble,
    /// Sweep one axis and emit a CSV table.
    Scan {
        #[arg(long, value_enum)]
        axis: ScanAxis,
    },
    /// Compare geometries and emit a clock-stability table.
    Stability,
    /// Foerster defect channels from quantum-defect data.
    Forster {
        /// Principal quantum number (defaults to dressing.n_principal).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Evaluate the empirical 1D fitting functions.
    FitEval {
        /// Interaction radius in lattice constants.
        #[arg(long)]
        rc: f64,
        /// Filling fraction N/M.
        #[arg(long, default_value_t = 0.5)]
        x: f64,
    },
    /// Debug: state-vector oracle vs the analytic correlators (N <= 12).
    Oracle {
        /// Squeezing time in seconds (defaults to the fit estimate).
        #[arg(long)]
        tau_s: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanAxis {
    PFill,
    Detuning,
    Rc,
    Dimension,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Data(_) | Error::UnsupportedModel(_) | Error::Domain(_) => 2,
        Error::NumericalBranch { .. } | Error::DegenerateState => 3,
        Error::Capacity(_) => 4,
    }
}

struct Ctx {
    config: RunConfig,
    config_text: String,
    sink: Sink,
    seed: Option<u64>,
    slow: bool,
}

fn run(cli: &Cli) -> Result<(), Error> {
    let (config, config_text) = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            (RunConfig::from_json(&text)?, text)
        }
        None => match &cli.command {
            Command::FitEval { .. } => (
                RunConfig::from_json(FALLBACK_CONFIG)?,
                FALLBACK_CONFIG.to_string(),
            ),
            _ => return Err(Error::Config("--config <path> is required".into())),
        },
    };
    let workers = if cli.workers > 0 {
        cli.workers
    } else {
        config.workers.unwrap_or(0)
    };
    if workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Error::Config(format!("cannot configure {workers} workers: {e}")))?;
    }
    let ctx = Ctx {
        sink: Sink {
            out_path: cli.out.clone().or_else(|| config.output_path.clone()),
        },
        config,
        config_text,
        seed: cli.seed,
        slow: cli.slow,
    };
    match &cli.command {
        Command::Squeeze => cmd_squeeze(&ctx),
        Command::Ensemble => cmd_ensemble(&ctx),
        Command::Scan { axis } => cmd_scan(&ctx, *axis),
        Command::Stability => cmd_stability(&ctx),
        Command::Forster { n } => cmd_forster(&ctx, *n),
        Command::FitEval { rc, x } => cmd_fit_eval(&ctx, *rc, *x),
        Command::Oracle { tau_s } => cmd_oracle(&ctx, *tau_s),
    }
}

/// Minimal stand-in when fit-eval runs without a config file.
const FALLBACK_CONFIG: &str = r#"{
  "dressing": {"rabi_hz": 1.6e6, "detuning_hz": -16e6, "rc_over_a": 9.0, "rydberg_lifetime_s": 23e-6},
  "lattice": {"dimension": 1, "extents": [1000], "lattice_constant_m": 406.5e-9}
}"#;

fn correlator_json(c: &rydsqueeze::Correlators64) -> serde_json::Value {
    json!({
        "jz": c.jz,
        "jx2": c.jx2,
        "jy2": c.jy2,
        "jxjy_sym": c.jxjy_sym,
        "n_atoms": c.n_atoms,
    })
}

fn cmd_squeeze(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let lattice = ctx.config.lattice_spec()?;
    let cfg = fill_full(&build_lattice(&lattice)?);
    let scan = match ctx.config.tau_scan()? {
        Some(s) => s,
        None => TauScanSpec::auto_for(&cfg, model, &p)?,
    };
    let r = optimize_tau(&cfg, model, &p, &scan)?;
    let record = json!({
        "provenance": provenance("squeeze", &ctx.config_text, ctx.seed),
        "n_atoms": cfg.n_atoms(),
        "xi2_min": r.xi2_min,
        "theta_min_rad": r.theta_min_rad,
        "tau_opt_s": r.tau_opt_s,
        "xi2_bar": r.xi2_bar,
        "merit": r.merit,
        "edge_warning": r.edge_warning,
        "correlators_at_opt": correlator_json(&r.correlators_at_opt),
    });
    ctx.sink.write_record(&record)
}

fn cmd_ensemble(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let spec = ctx.config.ensemble_spec(ctx.seed)?;
    let stats = run_ensemble(&spec, model, &p)?;

    let mut csv = Csv::new(
        &[],
        &["trial", "n_atoms", "xi2_min", "tau_opt_s", "theta_rad", "xi2_bar"],
    );
    for r in &stats.records {
        csv.row(&[
            Cell::UInt(r.trial_index),
            Cell::UInt(r.n_atoms),
            Cell::Float(r.xi2_min),
            Cell::Float(r.tau_s),
            Cell::Float(r.theta_rad),
            Cell::Float(r.xi2_bar),
        ]);
    }
    ctx.sink.write_csv(csv)?;
    let summary = json!({
        "provenance": provenance("ensemble", &ctx.config_text, Some(spec.master_seed)),
        "n_trials": stats.records.len(),
        "mean_n_atoms": stats.mean_n_atoms,
        "mean_tau_s": stats.mean_tau_s,
        "xi2": aggregate_json(&stats.xi2),
        "xi2_bar": aggregate_json(&stats.xi2_bar),
        "binned_by_n": stats.binned.iter().map(|b| json!({
            "n_lo": b.n_lo, "n_hi": b.n_hi, "count": b.count, "mean_xi2": b.mean_xi2,
        })).collect::<Vec<_>>(),
    });
    ctx.sink.write_summary(&summary)
}

fn aggregate_json(a: &rydsqueeze::ensemble::Aggregate<f64>) -> serde_json::Value {
    json!({"mean": a.mean, "std": a.std, "min": a.min, "max": a.max})
}

fn cmd_scan(ctx: &Ctx, axis: ScanAxis) -> Result<(), Error> {
    match axis {
        ScanAxis::PFill => scan_p_fill(ctx),
        ScanAxis::Detuning => scan_detuning(ctx),
        ScanAxis::Rc => scan_rc(ctx),
        ScanAxis::Dimension => scan_dimension(ctx),
    }
}

fn scan_p_fill(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let base = ctx.config.ensemble_spec(ctx.seed)?;
    let sweep = ctx.config.sweep.as_ref();
    let grid = sweep
        .and_then(|s| s.p_fill_grid.clone())
        .unwrap_or_else(|| (1..=10).map(|k| k as f64 / 10.0).collect());
    let n_trials = sweep.and_then(|s| s.n_trials).unwrap_or(base.n_trials);
    let paired = matches!(base.mode, EnsembleMode::FixedParams { .. });

    let mut header = vec![
        "p_fill",
        "mean_n_atoms",
        "xi2_mean",
        "xi2_std",
        "xi2_min",
        "xi2_max",
        "xi2_bar_mean",
        "tau_mean_s",
    ];
    if paired {
        header.extend_from_slice(&["xi2_fixed_mean", "fixed_tau_s", "fixed_theta_rad"]);
    }
    let mut csv = Csv::new(&[], &header);
    for &p_fill in &grid {
        let mut spec = base.clone();
        spec.p_fill = p_fill;
        spec.n_trials = n_trials;
        spec.mode = EnsembleMode::PerTrialOptimized;
        let stats = run_ensemble(&spec, model, &p)?;
        let mut cells = vec![
            Cell::Float(p_fill),
            Cell::Float(stats.mean_n_atoms),
            Cell::Float(stats.xi2.mean),
            Cell::Float(stats.xi2.std),
            Cell::Float(stats.xi2.min),
            Cell::Float(stats.xi2.max),
            Cell::Float(stats.xi2_bar.mean),
            Cell::Float(stats.mean_tau_s),
        ];
        if paired {
            let mut fixed_spec = base.clone();
            fixed_spec.p_fill = p_fill;
            fixed_spec.n_trials = n_trials;
            let EnsembleMode::FixedParams { tau_s, theta_rad } = base.mode else {
                unreachable!()
            };
            let fixed_stats = run_ensemble(&fixed_spec, model, &p)?;
            cells.push(Cell::Float(fixed_stats.xi2.mean));
            cells.push(Cell::Float(tau_s));
            cells.push(Cell::Float(theta_rad));
        }
        csv.row(&cells);
    }
    ctx.sink.write_csv(csv)?;
    ctx.sink.write_summary(&json!({
        "provenance": provenance("scan:p_fill", &ctx.config_text, ctx.seed),
        "grid": grid,
        "n_trials": n_trials,
        "paired_fixed_mode": paired,
    }))
}

fn scan_detuning(ctx: &Ctx) -> Result<(), Error> {
    let base = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let lattice = ctx.config.lattice_spec()?;
    let cfg = fill_full(&build_lattice(&lattice)?);
    let grid = ctx
        .config
        .sweep
        .as_ref()
        .and_then(|s| s.detuning_ratio_grid.clone())
        .unwrap_or_else(|| vec![20.0, 16.0, 12.0, 10.0, 8.0]);
    let sign = base.delta_rad.signum();

    let mut csv = Csv::new(
        &["detuning scan at fixed C6 and Omega_r".into()],
        &["abs_detuning_over_rabi", "xi2_min", "merit", "tau_opt_s", "rc_over_a"],
    );
    for &ratio in &grid {
        if !(ratio > 0.0) {
            return Err(Error::Config("detuning ratios must be > 0".into()));
        }
        let mut p = base;
        p.delta_rad = sign * ratio * p.omega_r_rad;
        let d = derived_params(&p)?;
        let scan = match ctx.config.tau_scan()? {
            Some(s) => s,
            None => TauScanSpec::auto_for(&cfg, model, &p)?,
        };
        let r = optimize_tau(&cfg, model, &p, &scan)?;
        csv.row(&[
            Cell::Float(ratio),
            Cell::Float(r.xi2_min),
            Cell::Float(d.tau_tilde_s / r.tau_opt_s),
            Cell::Float(r.tau_opt_s),
            Cell::Float(d.r_c_m / lattice.lattice_constant_m),
        ]);
    }
    ctx.sink.write_csv(csv)?;
    ctx.sink.write_summary(&json!({
        "provenance": provenance("scan:detuning", &ctx.config_text, ctx.seed),
        "grid": grid,
    }))
}

fn scan_rc(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let d = derived_params(&p)?;
    let sweep = ctx.config.sweep.as_ref();
    let grid: Vec<f64> = sweep
        .and_then(|s| s.rc_grid.clone())
        .unwrap_or_else(|| vec![2.0, 5.0, 9.0, 30.0]);
    let m = sweep.and_then(|s| s.heaviside_m).unwrap_or(1_000_000);

    let mut csv = Csv::new(
        &[format!(
            "Heaviside closed form on a fully filled chain of M = {m} sites"
        )],
        &["rc_over_a", "xi2_min", "phi0_opt", "tau_opt_s"],
    );
    for &rc in &grid {
        let r = rc.round();
        if r < 1.0 || (rc - r).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "Heaviside radius scan needs integer rc_over_a >= 1, got {rc}"
            )));
        }
        let r = r as u32;
        let f = |phi0: f64| xi2_min_of(&correlators_heaviside_1d(m, r, phi0).unwrap());
        let (phi_opt, xi2) = golden_section(f, 1e-7, 1.5, 1e-10);
        csv.row(&[
            Cell::Float(rc),
            Cell::Float(xi2),
            Cell::Float(phi_opt),
            Cell::Float(2.0 * phi_opt / d.v0_rad),
        ]);
    }
    ctx.sink.write_csv(csv)?;
    ctx.sink.write_summary(&json!({
        "provenance": provenance("scan:rc", &ctx.config_text, ctx.seed),
        "m_sites": m,
        "grid": grid,
    }))
}

fn scan_dimension(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let sweep = ctx.config.sweep.as_ref();
    let grid = sweep
        .and_then(|s| s.dimension_grid.clone())
        .unwrap_or_else(|| vec![1, 2, 3]);
    let n_atoms = sweep.and_then(|s| s.n_atoms).unwrap_or(64);
    let a = ctx.config.lattice.lattice_constant_m;

    let mut csv = Csv::new(
        &[format!("fully filled hypercubic arrays of {n_atoms} atoms")],
        &["dimension", "n_atoms", "m_sites", "xi2_min", "tau_opt_s"],
    );
    for &dim in &grid {
        let cfg = tweezer_block(dim, n_atoms, a)?;
        let scan = TauScanSpec::auto_for(&cfg, model, &p)?;
        let r = optimize_tau(&cfg, model, &p, &scan)?;
        csv.row(&[
            Cell::UInt(dim as u64),
            Cell::UInt(cfg.n_atoms() as u64),
            Cell::UInt(cfg.source.site_count()? as u64),
            Cell::Float(r.xi2_min),
            Cell::Float(r.tau_opt_s),
        ]);
    }
    ctx.sink.write_csv(csv)?;
    ctx.sink.write_summary(&json!({
        "provenance": provenance("scan:dimension", &ctx.config_text, ctx.seed),
        "grid": grid,
        "n_atoms": n_atoms,
    }))
}

fn cmd_stability(ctx: &Ctx) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let stab = ctx.config.stability.as_ref().cloned().unwrap_or_default();
    let clock = ClockSpec {
        nu_clock_hz: stab.nu_clock_hz,
        t_interrogation_s: stab.t_interrogation_s,
        tau_avg_s: stab.tau_avg_s,
        use_decay_corrected: stab.use_decay_corrected,
    };
    let n_trials = stab.n_trials.unwrap_or(8);
    let a = ctx.config.lattice.lattice_constant_m;

    let mut cases = ctx.config.geometry_cases()?;
    if cases.is_empty() {
        cases = default_geometries(a)?;
    }
    if ctx.slow {
        cases.push(GeometryCase {
            label: "1d-lattice-half-filled-m4000".into(),
            lattice: LatticeSpec::chain(4000, a)?,
            fill: GeometryFill::Random { p_fill: 0.5 },
        });
        cases.push(GeometryCase {
            label: "1d-tweezer-cap-n1000".into(),
            lattice: LatticeSpec::chain(1000, a)?,
            fill: GeometryFill::Compacted { n_atoms: 1000 },
        });
    }
    let seed = ctx.seed.unwrap_or(0x57AB);
    let rows = geometry_sweep(&cases, model, &p, n_trials, seed, &clock)?;

    let mut csv = Csv::new(
        &[
            format!("nu_clock_hz = {:e}", clock.nu_clock_hz),
            format!("t_interrogation_s = {:e}", clock.t_interrogation_s),
            format!("tau_avg_s = {:e}", clock.tau_avg_s),
            format!("sigma uses decay-corrected xi2: {}", clock.use_decay_corrected),
        ],
        &["geometry", "dimension", "m_sites", "mean_n_atoms", "xi2_mean", "xi2_bar_mean", "sigma"],
    );
    for r in &rows {
        csv.row(&[
            Cell::Text(r.label.clone()),
            Cell::UInt(r.dimension as u64),
            Cell::UInt(r.m_sites),
            Cell::Float(r.mean_n_atoms),
            Cell::Float(r.mean_xi2),
            Cell::Float(r.mean_xi2_bar),
            Cell::Float(r.sigma),
        ]);
    }
    ctx.sink.write_csv(csv)?;
    ctx.sink.write_summary(&json!({
        "provenance": provenance("stability", &ctx.config_text, Some(seed)),
        "n_trials": n_trials,
        "n_geometries": rows.len(),
        "slow": ctx.slow,
    }))
}

fn default_geometries(a: f64) -> Result<Vec<GeometryCase<f64>>, Error> {
    Ok(vec![
        GeometryCase {
            label: "1d-tweezer-full-n100".into(),
            lattice: LatticeSpec::chain(100, a)?,
            fill: GeometryFill::Full,
        },
        GeometryCase {
            label: "1d-lattice-half-filled-m200".into(),
            lattice: LatticeSpec::chain(200, a)?,
            fill: GeometryFill::Random { p_fill: 0.5 },
        },
        GeometryCase {
            label: "2d-tweezer-full-10x10".into(),
            lattice: LatticeSpec::new(2, vec![10, 10], a)?,
            fill: GeometryFill::Full,
        },
        GeometryCase {
            label: "2d-lattice-half-filled-14x14".into(),
            lattice: LatticeSpec::new(2, vec![14, 14], a)?,
            fill: GeometryFill::Random { p_fill: 0.5 },
        },
        GeometryCase {
            label: "3d-tweezer-full-5x5x5".into(),
            lattice: LatticeSpec::new(3, vec![5, 5, 5], a)?,
            fill: GeometryFill::Full,
        },
    ])
}

fn cmd_forster(ctx: &Ctx, n_flag: Option<u32>) -> Result<(), Error> {
    let n = n_flag
        .or(ctx.config.dressing.n_principal)
        .ok_or_else(|| Error::Config("give --n or dressing.n_principal".into()))?;
    let path = ctx
        .config
        .quantum_defects_path
        .clone()
        .unwrap_or_else(|| PathBuf::from("data/sr88_quantum_defects.txt"));
    let table = QuantumDefectTable::from_file(&path)?;
    let d = forster_defect(n, &table)?;
    let tau = std::f64::consts::TAU;
    let record = json!({
        "provenance": provenance("forster", &ctx.config_text, ctx.seed),
        "n_principal": n,
        "quantum_defects_path": path.display().to_string(),
        "delta_j": [
            {"j": 0, "delta_rad_s": d.delta_j_rad[0], "delta_hz": d.delta_j_rad[0] / tau},
            {"j": 1, "delta_rad_s": d.delta_j_rad[1], "delta_hz": d.delta_j_rad[1] / tau},
            {"j": 2, "delta_rad_s": d.delta_j_rad[2], "delta_hz": d.delta_j_rad[2] / tau},
        ],
        "delta_weighted_rad_s": d.delta_weighted_rad,
        "delta_weighted_hz": d.delta_weighted_rad / tau,
    });
    ctx.sink.write_record(&record)
}

fn cmd_fit_eval(ctx: &Ctx, rc: f64, x: f64) -> Result<(), Error> {
    let inputs = FitInputs {
        rc_over_a: rc,
        x,
        m_sites: ctx.config.lattice.extents.iter().product::<usize>() as u64,
    };
    let xi2 = xi2_fit(&inputs);
    let tau = tau_fit(&inputs)?;
    let theta = theta_fit(rc);
    let tau_s = ctx
        .config
        .dressing_params()
        .and_then(|p| derived_params(&p))
        .map(|d| tau.value / d.v0_rad)
        .ok();
    let record = json!({
        "provenance": provenance("fit-eval", &ctx.config_text, ctx.seed),
        "rc_over_a": rc,
        "x": x,
        "xi2_fit": xi2.value,
        "tau_fit_v0_tau": tau.value,
        "tau_s_at_configured_drive": tau_s,
        "theta_fit_rad": theta,
        "extrapolated": xi2.extrapolated || tau.extrapolated,
    });
    ctx.sink.write_record(&record)
}

fn cmd_oracle(ctx: &Ctx, tau_flag: Option<f64>) -> Result<(), Error> {
    let p = ctx.config.dressing_params()?;
    let model = ctx.config.potential_model()?;
    let lattice = ctx.config.lattice_spec()?;
    let cfg = fill_full(&build_lattice(&lattice)?);
    if cfg.n_atoms() > MAX_ORACLE_ATOMS {
        return Err(Error::Capacity(format!(
            "oracle handles at most {MAX_ORACLE_ATOMS} atoms, lattice has {}",
            cfg.n_atoms()
        )));
    }
    let tau_s = match tau_flag {
        Some(t) => t,
        None => TauScanSpec::auto_for(&cfg, model, &p)?.tau_hi_s / 4.0,
    };
    let pot = Potential::new(model, &p)?;
    let spec = SequenceSpec::from_configuration(&cfg, &pot, tau_s)?;
    let oracle = simulate_sequence_full(&spec)?;
    let analytic = rydsqueeze::correlator::correlators_exact(&cfg, model, &p, tau_s)?;
    let o = &oracle.correlators;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
    let max_rel = rel(o.jz, analytic.jz)
        .max(rel(o.jx2, analytic.jx2))
        .max(rel(o.jy2, analytic.jy2))
        .max(rel(o.jxjy_sym, analytic.jxjy_sym));
    let record = json!({
        "provenance": provenance("oracle", &ctx.config_text, ctx.seed),
        "n_atoms": cfg.n_atoms(),
        "tau_s": tau_s,
        "oracle": correlator_json(o),
        "analytic": correlator_json(&analytic),
        "max_rel_deviation": max_rel,
        "state_norm": oracle.norm,
        "jx_mean": oracle.jx_mean,
        "jy_mean": oracle.jy_mean,
    });
    ctx.sink.write_record(&record)
}
