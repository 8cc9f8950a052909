//! Monte Carlo over random filling realizations and geometry comparisons.
//!
//! Each trial draws an independent occupation pattern from the seeded
//! substream rule, evaluates the squeezing either with per-trial
//! optimization of `(tau, theta)` or at fixed values (clock operation,
//! where destructive readout forbids per-shot optimization), and the
//! records are merged in trial order, so results are identical for any
//! worker count.
//!
//! Empty and single-atom draws carry no interactions; they are recorded
//! with the coherent-state value `xi^2 = 1` and flagged.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    build_lattice, fill_compacted, fill_full, fill_random, rescaled_uniform, FillingSpec,
    LatticeSpec,
};
use crate::interaction::{derived_params, DressingParams, PotentialModel};
use crate::real::{real, real_of_count, Real};
use crate::squeezing::{optimize_tau, squeezing_at_fixed, stability, TauScanSpec};

/// Whether trials optimize `(tau, theta)` individually or share fixed
/// values.
#[derive(Clone, Copy, Debug)]
pub enum EnsembleMode<F> {
    PerTrialOptimized,
    FixedParams { tau_s: F, theta_rad: F },
}

/// Parameters of one random-filling ensemble.
#[derive(Clone, Debug)]
pub struct EnsembleSpec<F> {
    pub lattice: LatticeSpec<F>,
    pub p_fill: f64,
    pub n_trials: u64,
    pub mode: EnsembleMode<F>,
    pub master_seed: u64,
    /// Scan window shared by all trials; `None` derives one per trial.
    pub scan: Option<TauScanSpec<F>>,
    /// Width of the atom-number bins in the binned report.
    pub bin_width: u64,
}

impl<F: Real> EnsembleSpec<F> {
    pub fn new(lattice: LatticeSpec<F>, p_fill: f64, n_trials: u64, master_seed: u64) -> Self {
        Self {
            lattice,
            p_fill,
            n_trials,
            mode: EnsembleMode::PerTrialOptimized,
            master_seed,
            scan: None,
            bin_width: 25,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        if self.n_trials < 1 {
            return Err(Error::Config("ensemble needs at least one trial".into()));
        }
        if !(0.0..=1.0).contains(&self.p_fill) {
            return Err(Error::Config("p_fill outside [0, 1]".into()));
        }
        if self.bin_width == 0 {
            return Err(Error::Config("bin width must be >= 1".into()));
        }
        if let Some(scan) = &self.scan {
            scan.validate()?;
        }
        Ok(())
    }
}

/// One trial's outcome.
#[derive(Clone, Copy, Debug)]
pub struct TrialRecord<F> {
    pub trial_index: u64,
    pub n_atoms: u64,
    pub xi2_min: F,
    pub tau_s: F,
    pub theta_rad: F,
    pub xi2_bar: F,
    /// The scan minimized at a window edge.
    pub edge_warning: bool,
    /// Fewer than two atoms: coherent-state convention applied.
    pub degenerate: bool,
}

/// Mean / standard deviation / extrema of one quantity.
#[derive(Clone, Copy, Debug)]
pub struct Aggregate<F> {
    pub mean: F,
    pub std: F,
    pub min: F,
    pub max: F,
}

impl<F: Real> Aggregate<F> {
    fn over(values: impl Iterator<Item = F> + Clone) -> Self {
        let mut count = 0u64;
        let mut sum = F::zero();
        let mut min = F::infinity();
        let mut max = F::neg_infinity();
        for v in values.clone() {
            count += 1;
            sum = sum + v;
            min = min.min(v);
            max = max.max(v);
        }
        let n = real_of_count::<F>(count.max(1));
        let mean = sum / n;
        let mut var = F::zero();
        for v in values {
            var = var + (v - mean) * (v - mean);
        }
        Aggregate {
            mean,
            std: (var / n).sqrt(),
            min,
            max,
        }
    }
}

/// Squeezing statistics within one atom-number bin.
#[derive(Clone, Copy, Debug)]
pub struct BinStat<F> {
    pub n_lo: u64,
    pub n_hi: u64,
    pub count: u64,
    pub mean_xi2: F,
}

/// Ensemble outcome: per-trial records plus aggregates.
#[derive(Clone, Debug)]
pub struct EnsembleStats<F> {
    pub records: Vec<TrialRecord<F>>,
    pub xi2: Aggregate<F>,
    pub xi2_bar: Aggregate<F>,
    pub mean_n_atoms: F,
    pub mean_tau_s: F,
    /// Records grouped by atom number.
    pub binned: Vec<BinStat<F>>,
}

/// Run all trials of `spec`; bit-identical output for any worker count.
pub fn run_ensemble<F: Real>(
    spec: &EnsembleSpec<F>,
    model: PotentialModel,
    p: &DressingParams<F>,
) -> Result<EnsembleStats<F>> {
    spec.validate()?;
    p.validate()?;
    derived_params(p)?;
    let sites = build_lattice(&spec.lattice)?;

    let records: Vec<TrialRecord<F>> = (0..spec.n_trials)
        .into_par_iter()
        .map(|trial_index| -> Result<TrialRecord<F>> {
            let config = fill_random(
                &sites,
                &FillingSpec {
                    p_fill: spec.p_fill,
                    master_seed: spec.master_seed,
                    trial_index,
                },
            )?;
            let n_atoms = config.n_atoms() as u64;
            if n_atoms < 2 {
                return Ok(TrialRecord {
                    trial_index,
                    n_atoms,
                    xi2_min: F::one(),
                    tau_s: F::zero(),
                    theta_rad: F::zero(),
                    xi2_bar: F::one(),
                    edge_warning: false,
                    degenerate: true,
                });
            }
            let result = match spec.mode {
                EnsembleMode::PerTrialOptimized => {
                    let scan = match &spec.scan {
                        Some(s) => *s,
                        None => TauScanSpec::auto_for(&config, model, p)?,
                    };
                    optimize_tau(&config, model, p, &scan)?
                }
                EnsembleMode::FixedParams { tau_s, theta_rad } => {
                    squeezing_at_fixed(&config, model, p, tau_s, theta_rad)?
                }
            };
            Ok(TrialRecord {
                trial_index,
                n_atoms,
                xi2_min: result.xi2_min,
                tau_s: result.tau_opt_s,
                theta_rad: result.theta_min_rad,
                xi2_bar: result.xi2_bar,
                edge_warning: result.edge_warning,
                degenerate: false,
            })
        })
        .collect::<Result<_>>()?;

    Ok(summarize(records, spec.bin_width))
}

fn summarize<F: Real>(records: Vec<TrialRecord<F>>, bin_width: u64) -> EnsembleStats<F> {
    let xi2 = Aggregate::over(records.iter().map(|r| r.xi2_min));
    let xi2_bar = Aggregate::over(records.iter().map(|r| r.xi2_bar));
    let count = real_of_count::<F>(records.len().max(1) as u64);
    let mean_n_atoms =
        records.iter().map(|r| real_of_count::<F>(r.n_atoms)).sum::<F>() / count;
    let mean_tau_s = records.iter().map(|r| r.tau_s).sum::<F>() / count;

    let mut binned: Vec<BinStat<F>> = Vec::new();
    let mut by_bin: std::collections::BTreeMap<u64, (u64, F)> = std::collections::BTreeMap::new();
    for r in &records {
        let bin = r.n_atoms / bin_width;
        let e = by_bin.entry(bin).or_insert((0, F::zero()));
        e.0 += 1;
        e.1 = e.1 + r.xi2_min;
    }
    for (bin, (c, sum)) in by_bin {
        binned.push(BinStat {
            n_lo: bin * bin_width,
            n_hi: (bin + 1) * bin_width - 1,
            count: c,
            mean_xi2: sum / real_of_count::<F>(c),
        });
    }
    EnsembleStats {
        records,
        xi2,
        xi2_bar,
        mean_n_atoms,
        mean_tau_s,
        binned,
    }
}

/// How a comparison geometry is populated.
#[derive(Clone, Debug)]
pub enum GeometryFill {
    Full,
    Random { p_fill: f64 },
    Compacted { n_atoms: usize },
    Rescaled { n_atoms: usize },
}

/// One geometry in a stability comparison.
#[derive(Clone, Debug)]
pub struct GeometryCase<F> {
    pub label: String,
    pub lattice: LatticeSpec<F>,
    pub fill: GeometryFill,
}

/// Clock parameters entering the stability formula.
#[derive(Clone, Copy, Debug)]
pub struct ClockSpec<F> {
    pub nu_clock_hz: F,
    pub t_interrogation_s: F,
    pub tau_avg_s: F,
    /// Feed the decay-corrected squeezing into the stability.
    pub use_decay_corrected: bool,
}

impl<F: Real> Default for ClockSpec<F> {
    fn default() -> Self {
        Self {
            nu_clock_hz: real(429.228e12),
            t_interrogation_s: F::one(),
            tau_avg_s: F::one(),
            use_decay_corrected: true,
        }
    }
}

/// One row of the geometry comparison.
#[derive(Clone, Debug)]
pub struct StabilityRow<F> {
    pub label: String,
    pub dimension: usize,
    pub m_sites: u64,
    pub mean_n_atoms: F,
    pub mean_xi2: F,
    pub mean_xi2_bar: F,
    /// Fractional frequency instability in 1/sqrt(Hz).
    pub sigma: F,
}

/// Evaluate mean squeezing and clock stability for each geometry.
/// Deterministic fillings run once; random fillings run `n_trials`.
pub fn geometry_sweep<F: Real>(
    cases: &[GeometryCase<F>],
    model: PotentialModel,
    p: &DressingParams<F>,
    n_trials: u64,
    master_seed: u64,
    clock: &ClockSpec<F>,
) -> Result<Vec<StabilityRow<F>>> {
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let m_sites = case.lattice.site_count()? as u64;
        let (mean_n, mean_xi2, mean_xi2_bar) = match &case.fill {
            GeometryFill::Random { p_fill } => {
                let spec = EnsembleSpec {
                    lattice: case.lattice.clone(),
                    p_fill: *p_fill,
                    n_trials,
                    mode: EnsembleMode::PerTrialOptimized,
                    master_seed,
                    scan: None,
                    bin_width: 25,
                };
                let stats = run_ensemble(&spec, model, p)?;
                (stats.mean_n_atoms, stats.xi2.mean, stats.xi2_bar.mean)
            }
            deterministic => {
                let sites = build_lattice(&case.lattice)?;
                let config = match deterministic {
                    GeometryFill::Full => fill_full(&sites),
                    GeometryFill::Compacted { n_atoms } => fill_compacted(&sites, *n_atoms)?,
                    GeometryFill::Rescaled { n_atoms } => {
                        rescaled_uniform(&case.lattice, *n_atoms)?
                    }
                    GeometryFill::Random { .. } => unreachable!(),
                };
                let scan = TauScanSpec::auto_for(&config, model, p)?;
                let r = optimize_tau(&config, model, p, &scan)?;
                (
                    real_of_count::<F>(config.n_atoms() as u64),
                    r.xi2_min,
                    r.xi2_bar,
                )
            }
        };
        let xi2_for_sigma = if clock.use_decay_corrected {
            mean_xi2_bar
        } else {
            mean_xi2
        };
        let n_round = mean_n.to_f64().unwrap_or(1.0).round().max(1.0) as u64;
        let sigma = stability(
            xi2_for_sigma.sqrt(),
            n_round,
            clock.nu_clock_hz,
            clock.t_interrogation_s,
            clock.tau_avg_s,
        );
        rows.push(StabilityRow {
            label: case.label.clone(),
            dimension: case.lattice.dimension,
            m_sites,
            mean_n_atoms: mean_n,
            mean_xi2,
            mean_xi2_bar,
            sigma,
        });
    }
    Ok(rows)
}
