//! JSON run configuration.
//!
//! Unit conventions are explicit in the key names: `_hz` keys are cycle
//! frequencies converted to angular frequencies internally, `_m` meters,
//! `_s` seconds.  Unknown keys are rejected everywhere.

use std::path::PathBuf;

use serde::Deserialize;

use rydsqueeze::ensemble::{EnsembleMode, EnsembleSpec, GeometryCase, GeometryFill};
use rydsqueeze::error::Error;
use rydsqueeze::geometry::LatticeSpec;
use rydsqueeze::interaction::{derived_params, DressingParams, PotentialModel};
use rydsqueeze::squeezing::TauScanSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dressing: DressingConfig,
    pub lattice: LatticeConfig,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub ensemble: Option<EnsembleConfig>,
    #[serde(default)]
    pub scan: Option<ScanConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub geometries: Option<Vec<GeometryConfig>>,
    #[serde(default)]
    pub stability: Option<StabilityConfig>,
    #[serde(default)]
    pub quantum_defects_path: Option<PathBuf>,
    /// Worker threads (0 or absent = one per core); the --workers flag
    /// overrides.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Default output path; the --out flag overrides.
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

fn default_model() -> String {
    "softcore".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DressingConfig {
    /// Rydberg Rabi frequency Omega_r / 2 pi.
    pub rabi_hz: f64,
    /// Detuning Delta / 2 pi (signed).
    pub detuning_hz: f64,
    #[serde(default)]
    pub rc_over_a: Option<f64>,
    #[serde(default)]
    pub c6_j_m6: Option<f64>,
    /// Foerster defect delta / 2 pi (signed).
    #[serde(default)]
    pub forster_defect_hz: Option<f64>,
    #[serde(default)]
    pub x_c_m: Option<f64>,
    pub rydberg_lifetime_s: f64,
    #[serde(default)]
    pub n_principal: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub dimension: usize,
    pub extents: Vec<usize>,
    pub lattice_constant_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub p_fill: f64,
    pub n_trials: u64,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default)]
    pub fixed_tau_s: Option<f64>,
    #[serde(default)]
    pub fixed_theta_rad: Option<f64>,
    /// Derive the fixed (tau, theta) from the empirical fits.
    #[serde(default)]
    pub fixed_from_fits: bool,
    pub master_seed: u64,
    #[serde(default = "default_bin_width")]
    pub bin_width: u64,
}

fn default_mode() -> String {
    "per_trial_optimized".into()
}

fn default_bin_width() -> u64 {
    25
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(default)]
    pub tau_lo_s: Option<f64>,
    #[serde(default)]
    pub tau_hi_s: Option<f64>,
    #[serde(default = "default_coarse_points")]
    pub coarse_points: usize,
    #[serde(default)]
    pub refine_tol_s: Option<f64>,
}

fn default_coarse_points() -> usize {
    24
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub p_fill_grid: Option<Vec<f64>>,
    /// |Delta| / Omega_r ratios, scanned at fixed C6 and Omega_r.
    #[serde(default)]
    pub detuning_ratio_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub rc_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub dimension_grid: Option<Vec<usize>>,
    #[serde(default)]
    pub n_trials: Option<u64>,
    /// Lattice size for the Heaviside closed-form radius scan.
    #[serde(default)]
    pub heaviside_m: Option<u64>,
    /// Atom number target for the dimension scan.
    #[serde(default)]
    pub n_atoms: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityConfig {
    #[serde(default = "default_nu_clock")]
    pub nu_clock_hz: f64,
    #[serde(default = "default_one")]
    pub t_interrogation_s: f64,
    #[serde(default = "default_one")]
    pub tau_avg_s: f64,
    #[serde(default = "default_true")]
    pub use_decay_corrected: bool,
    #[serde(default)]
    pub n_trials: Option<u64>,
}

fn default_nu_clock() -> f64 {
    429.228e12
}

fn default_one() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            nu_clock_hz: default_nu_clock(),
            t_interrogation_s: 1.0,
            tau_avg_s: 1.0,
            use_decay_corrected: true,
            n_trials: None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub label: String,
    pub dimension: usize,
    pub extents: Vec<usize>,
    pub fill: String,
    #[serde(default)]
    pub p_fill: Option<f64>,
    #[serde(default)]
    pub n_atoms: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    pub fn lattice_spec(&self) -> Result<LatticeSpec<f64>> {
        LatticeSpec::new(
            self.lattice.dimension,
            self.lattice.extents.clone(),
            self.lattice.lattice_constant_m,
        )
    }

    pub fn potential_model(&self) -> Result<PotentialModel> {
        match self.model.as_str() {
            "softcore" => Ok(PotentialModel::SoftCoreVdW),
            "heaviside" => Ok(PotentialModel::Heaviside),
            "exact" => Ok(PotentialModel::ExactDipoleDipole),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected softcore | heaviside | exact)"
            ))),
        }
    }

    pub fn dressing_params(&self) -> Result<DressingParams<f64>> {
        let d = &self.dressing;
        let tau = std::f64::consts::TAU;
        let mut p = DressingParams::new(tau * d.rabi_hz, tau * d.detuning_hz, d.rydberg_lifetime_s);
        p.n_principal = d.n_principal;
        if let Some(c6) = d.c6_j_m6 {
            p.c6 = Some(c6);
        } else if let Some(rc) = d.rc_over_a {
            p = p.with_rc_over_a(rc, self.lattice.lattice_constant_m);
        }
        match (d.forster_defect_hz, d.x_c_m) {
            (Some(defect_hz), Some(x_c)) => {
                p = p.with_forster(tau * defect_hz, x_c);
            }
            (Some(defect_hz), None) => {
                p = p.with_forster_defect_keeping_c6(tau * defect_hz)?;
            }
            (None, Some(_)) => {
                return Err(Error::Config(
                    "x_c_m given without forster_defect_hz".into(),
                ));
            }
            (None, None) => {}
        }
        if p.c6.is_none() {
            return Err(Error::Config(
                "no interaction scale: give rc_over_a, c6_j_m6, or the Foerster pair".into(),
            ));
        }
        p.validate()?;
        Ok(p)
    }

    pub fn tau_scan(&self) -> Result<Option<TauScanSpec<f64>>> {
        let Some(s) = &self.scan else { return Ok(None) };
        match (s.tau_lo_s, s.tau_hi_s) {
            (Some(lo), Some(hi)) => {
                let spec = TauScanSpec {
                    tau_lo_s: lo,
                    tau_hi_s: hi,
                    coarse_points: s.coarse_points,
                    refine_tol_s: s.refine_tol_s,
                };
                spec.validate()?;
                Ok(Some(spec))
            }
            (None, None) => Ok(None),
            _ => Err(Error::Config(
                "scan needs both tau_lo_s and tau_hi_s (or neither)".into(),
            )),
        }
    }

    /// Ensemble spec plus the fixed-mode parameters resolved (possibly
    /// from the fits).
    pub fn ensemble_spec(&self, seed_override: Option<u64>) -> Result<EnsembleSpec<f64>> {
        let e = self
            .ensemble
            .as_ref()
            .ok_or_else(|| Error::Config("missing `ensemble` section".into()))?;
        let mode = match e.mode.as_str() {
            "per_trial_optimized" => {
                if e.fixed_tau_s.is_some() || e.fixed_theta_rad.is_some() || e.fixed_from_fits {
                    return Err(Error::Config(
                        "fixed_* fields are only valid with mode = fixed_params".into(),
                    ));
                }
                EnsembleMode::PerTrialOptimized
            }
            "fixed_params" => {
                let (tau_s, theta_rad) = self.resolve_fixed_params(e)?;
                EnsembleMode::FixedParams { tau_s, theta_rad }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown ensemble mode `{other}` (expected per_trial_optimized | fixed_params)"
                )))
            }
        };
        Ok(EnsembleSpec {
            lattice: self.lattice_spec()?,
            p_fill: e.p_fill,
            n_trials: e.n_trials,
            mode,
            master_seed: seed_override.unwrap_or(e.master_seed),
            scan: self.tau_scan()?,
            bin_width: e.bin_width,
        })
    }

    pub fn resolve_fixed_params(&self, e: &EnsembleConfig) -> Result<(f64, f64)> {
        match (e.fixed_tau_s, e.fixed_theta_rad, e.fixed_from_fits) {
            (Some(tau), Some(theta), false) => Ok((tau, theta)),
            (None, None, true) => {
                let p = self.dressing_params()?;
                let d = derived_params(&p)?;
                let rc = d.r_c_m / self.lattice.lattice_constant_m;
                let fixed = rydsqueeze::fits::fixed_params_from_fits(rc, d.v0_rad)?
                    .in_minimizer_convention();
                Ok((fixed.tau_s, fixed.theta_rad))
            }
            _ => Err(Error::Config(
                "fixed_params mode needs fixed_tau_s + fixed_theta_rad, or fixed_from_fits"
                    .into(),
            )),
        }
    }

    pub fn geometry_cases(&self) -> Result<Vec<GeometryCase<f64>>> {
        let Some(geoms) = &self.geometries else {
            return Ok(Vec::new());
        };
        geoms
            .iter()
            .map(|g| {
                let lattice = LatticeSpec::new(
                    g.dimension,
                    g.extents.clone(),
                    self.lattice.lattice_constant_m,
                )?;
                let fill = match g.fill.as_str() {
                    "full" => GeometryFill::Full,
                    "random" => GeometryFill::Random {
                        p_fill: g.p_fill.ok_or_else(|| {
                            Error::Config(format!("geometry `{}`: random fill needs p_fill", g.label))
                        })?,
                    },
                    "compacted" => GeometryFill::Compacted {
                        n_atoms: g.n_atoms.ok_or_else(|| {
                            Error::Config(format!(
                                "geometry `{}`: compacted fill needs n_atoms",
                                g.label
                            ))
                        })?,
                    },
                    "rescaled" => GeometryFill::Rescaled {
                        n_atoms: g.n_atoms.ok_or_else(|| {
                            Error::Config(format!(
                                "geometry `{}`: rescaled fill needs n_atoms",
                                g.label
                            ))
                        })?,
                    },
                    other => {
                        return Err(Error::Config(format!(
                            "geometry `{}`: unknown fill `{other}`",
                            g.label
                        )))
                    }
                };
                Ok(GeometryCase {
                    label: g.label.clone(),
                    lattice,
                    fill,
                })
            })
            .collect()
    }
}
