//! Squeezing metrics: transverse variance, optimal quadrature angle,
//! squeezing parameter, optimal squeezing time, decay correction, and
//! clock stability.
//!
//! The squeezing parameter compares the minimal transverse variance with
//! the coherent-state value, normalized by the mean spin length, which for
//! this sequence lies along z:
//!
//! ```text
//! xi^2(theta) = N <J_perp(theta)^2> / <Jz>^2,
//! J_perp(theta) = cos(theta) Jx + sin(theta) Jy.
//! ```
//!
//! The variance is a quadratic form in `(cos theta, sin theta)`, so the
//! minimizing angle has the closed form
//! `theta_min = atan2(-<{Jx,Jy}>, -(<Jx^2> - <Jy^2>)) / 2`.
//!
//! Rydberg decay during the squeezing pulse adds `tau_opt / tau_tilde` to
//! the optimized squeezing parameter, with `tau_tilde` the admixture-
//! enhanced lifetime; the ratio `tau_tilde / tau_opt` is the figure of
//! merit for neglecting decay.

use crate::correlator::{
    all_to_all_from_phase, correlators_from_phases, CorrelatorOptions, Correlators,
    InteractionGraph, PhaseMatrix,
};
use crate::error::{Error, Result};
use crate::fits;
use crate::geometry::{AtomConfiguration, FillMode};
use crate::interaction::{derived_params, DressingParams, Potential, PotentialModel};
use crate::real::{real, real_of_count, Real};

/// Variance of the transverse quadrature at angle `theta`.
pub fn variance_perp<F: Real>(c: &Correlators<F>, theta_rad: F) -> F {
    let (s, co) = (theta_rad.sin(), theta_rad.cos());
    co * co * c.jx2 + s * s * c.jy2 + s * co * c.jxjy_sym
}

/// Angle in `(-pi/2, pi/2]` minimizing [`variance_perp`]; ties resolve
/// to zero.
pub fn theta_min<F: Real>(c: &Correlators<F>) -> F {
    let a = c.jx2 - c.jy2;
    let b = c.jxjy_sym;
    if a == F::zero() && b == F::zero() {
        return F::zero();
    }
    // Signed zeros steer atan2 between +-pi; pin them to +0.
    let y = if b == F::zero() { F::zero() } else { -b };
    let x = if a == F::zero() { F::zero() } else { -a };
    y.atan2(x) / real(2.0)
}

/// Squeezing parameter `N <J_perp^2(theta)> / <Jz>^2`.
pub fn xi2<F: Real>(c: &Correlators<F>, theta_rad: F) -> Result<F> {
    if c.jz == F::zero() {
        return Err(Error::DegenerateState);
    }
    let n = real_of_count::<F>(c.n_atoms);
    Ok(n * variance_perp(c, theta_rad) / (c.jz * c.jz))
}

/// Squeezing parameter at the optimal angle, or `+inf` for an over-wound
/// (zero mean spin) state so minimizers simply avoid it.
pub fn xi2_min_of<F: Real>(c: &Correlators<F>) -> F {
    xi2(c, theta_min(c)).unwrap_or_else(|_| F::infinity())
}

/// Decay-corrected squeezing `xi^2 + tau_opt / tau_tilde`.
pub fn decay_correct<F: Real>(xi2: F, tau_tilde_s: F, tau_opt_s: F) -> F {
    xi2 + tau_opt_s / tau_tilde_s
}

/// Zero-dead-time fractional frequency instability
/// `xi / (2 pi nu_c sqrt(N) sqrt(tau_avg T))`.  Note the first argument is
/// the squeezing amplitude `xi`, not `xi^2`.
pub fn stability<F: Real>(
    xi_min: F,
    n_atoms: u64,
    nu_clock_hz: F,
    t_interrogation_s: F,
    tau_avg_s: F,
) -> F {
    let n = real_of_count::<F>(n_atoms);
    xi_min / (F::TAU() * nu_clock_hz * n.sqrt() * (tau_avg_s * t_interrogation_s).sqrt())
}

/// Search window and refinement control for the squeezing-time scan.
#[derive(Clone, Copy, Debug)]
pub struct TauScanSpec<F> {
    pub tau_lo_s: F,
    pub tau_hi_s: F,
    /// Coarse geometric grid size, at least 8.
    pub coarse_points: usize,
    /// Absolute bracket tolerance for the golden-section refinement;
    /// `None` refines to 1e-3 relative.
    pub refine_tol_s: Option<F>,
}

impl<F: Real> TauScanSpec<F> {
    pub fn validate(&self) -> Result<()> {
        if !(F::zero() <= self.tau_lo_s && self.tau_lo_s < self.tau_hi_s) {
            return Err(Error::Config(
                "tau scan requires 0 <= tau_lo < tau_hi".into(),
            ));
        }
        if self.coarse_points < 8 {
            return Err(Error::Config("tau scan needs at least 8 coarse points".into()));
        }
        Ok(())
    }

    /// Window from an explicit upper bound, three decades deep.
    pub fn up_to(tau_hi_s: F) -> Self {
        Self {
            tau_lo_s: tau_hi_s / real(1e3),
            tau_hi_s,
            coarse_points: 24,
            refine_tol_s: None,
        }
    }

    /// Automatic window for a configuration: four times the larger of the
    /// interaction-weighted all-to-all estimate and (for 1D lattices) the
    /// empirical-fit estimate.  The all-to-all optimum alone under-brackets
    /// badly for finite-range interactions, hence the coordination count.
    pub fn auto_for(
        config: &AtomConfiguration<F>,
        model: PotentialModel,
        p: &DressingParams<F>,
    ) -> Result<Self> {
        let n = config.n_atoms();
        if n < 2 {
            return Err(Error::Domain("tau scan needs at least two atoms".into()));
        }
        let d = derived_params(p)?;
        let pot = Potential::new(model, p)?;

        // Mean interaction-weighted coordination number.
        let mut coupling_sum = F::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                let r2 = crate::geometry::dist_sq(&config.positions[i], &config.positions[j]);
                coupling_sum = coupling_sum + pot.v_over_hbar(r2.sqrt())?.abs();
            }
        }
        let n_eff = (real::<F>(2.0) * coupling_sum / (real_of_count::<F>(n as u64) * d.v0_rad))
            .to_f64()
            .unwrap_or(1.0)
            .round() as u64;
        let n_eff = (n_eff + 1).clamp(2, n as u64);
        let (phi_opt, _) = all_to_all_optimum::<F>(n_eff);
        let mut tau_est = real::<F>(2.0) * phi_opt / d.v0_rad;

        // 1D lattices: the empirical fit predicts the optimum directly.
        if config.source.dimension == 1 {
            let m = config.source.site_count()? as f64;
            let (rc_eff, x) = match config.fill_mode {
                FillMode::Rescaled => {
                    let a_eff = config.source.lattice_constant_m * real::<F>(m)
                        / real_of_count::<F>(n as u64);
                    (d.r_c_m / a_eff, 1.0)
                }
                FillMode::Compacted => (d.r_c_m / config.source.lattice_constant_m, 1.0),
                _ => (
                    d.r_c_m / config.source.lattice_constant_m,
                    (n as f64 / m).max(0.02),
                ),
            };
            let rc_eff = rc_eff.to_f64().unwrap_or(1.0).clamp(0.5, 60.0);
            let inputs = fits::FitInputs {
                rc_over_a: rc_eff,
                x,
                m_sites: m as u64,
            };
            if let Ok(t) = fits::tau_fit(&inputs) {
                tau_est = tau_est.max(real::<F>(t.value) / d.v0_rad);
            }
        }
        Ok(Self::up_to(real::<F>(4.0) * tau_est))
    }
}

/// Outcome of the squeezing-time optimization.
#[derive(Clone, Copy, Debug)]
pub struct SqueezingResult<F> {
    pub xi2_min: F,
    pub theta_min_rad: F,
    pub tau_opt_s: F,
    /// Decay-corrected `xi^2 + tau_opt / tau_tilde`.
    pub xi2_bar: F,
    pub correlators_at_opt: Correlators<F>,
    /// Figure of merit `tau_tilde / tau_opt`.
    pub merit: F,
    /// The coarse scan minimized at a window edge; the window likely does
    /// not bracket the true optimum.
    pub edge_warning: bool,
}

/// Minimize `xi^2(theta_min(tau))` over the scan window: coarse geometric
/// grid, then golden-section refinement of the bracketing interval.
/// Grid ties resolve to the smallest time.
pub fn optimize_tau<F: Real>(
    config: &AtomConfiguration<F>,
    model: PotentialModel,
    p: &DressingParams<F>,
    scan: &TauScanSpec<F>,
) -> Result<SqueezingResult<F>> {
    if config.n_atoms() < 2 {
        return Err(Error::Domain(
            "squeezing-time optimization needs at least two atoms".into(),
        ));
    }
    scan.validate()?;
    let d = derived_params(p)?;
    let pot = Potential::new(model, p)?;
    let graph = InteractionGraph::build(config, &pot, scan.tau_hi_s, &CorrelatorOptions::default())?;

    let eval = |tau: F| -> Result<(F, Correlators<F>)> {
        let pm = PhaseMatrix::new(&graph, tau)?;
        let c = correlators_from_phases(&pm);
        Ok((xi2_min_of(&c), c))
    };

    // Coarse geometric grid.
    let points = scan.coarse_points;
    let ratio = (scan.tau_hi_s / scan.tau_lo_s.max(scan.tau_hi_s / real(1e6)))
        .powf(F::one() / real((points - 1) as f64));
    let mut grid = Vec::with_capacity(points);
    let mut t = scan.tau_lo_s.max(scan.tau_hi_s / real(1e6));
    for _ in 0..points {
        grid.push(t.min(scan.tau_hi_s));
        t = t * ratio;
    }
    let mut best_idx = 0usize;
    let mut best_val = F::infinity();
    for (k, &tau) in grid.iter().enumerate() {
        let (v, _) = eval(tau)?;
        if v < best_val {
            best_val = v;
            best_idx = k;
        }
    }
    let edge_warning = best_idx == 0 || best_idx + 1 == grid.len();

    // Golden-section refinement of the bracketing interval.
    let lo = if best_idx == 0 {
        F::zero()
    } else {
        grid[best_idx - 1]
    };
    let hi = if best_idx + 1 == grid.len() {
        grid[best_idx]
    } else {
        grid[best_idx + 1]
    };
    let tol = scan
        .refine_tol_s
        .unwrap_or(real::<F>(1e-3) * grid[best_idx]);
    let (mut tau_opt, mut xi2_opt) = golden_section(
        |tau| eval(tau).map(|(v, _)| v).unwrap_or_else(|_| F::infinity()),
        lo,
        hi,
        tol,
    );
    if best_val < xi2_opt {
        tau_opt = grid[best_idx];
        xi2_opt = best_val;
    }

    // A coherent state (tau -> 0) is always reachable; never report worse.
    if xi2_opt > F::one() {
        let tau0 = grid[0];
        let (v0, _) = eval(tau0)?;
        if v0 < xi2_opt {
            tau_opt = tau0;
            xi2_opt = v0;
        }
    }

    let (_, correlators_at_opt) = eval(tau_opt)?;
    let theta = theta_min(&correlators_at_opt);
    let xi2_bar = decay_correct(xi2_opt, d.tau_tilde_s, tau_opt);
    Ok(SqueezingResult {
        xi2_min: xi2_opt,
        theta_min_rad: theta,
        tau_opt_s: tau_opt,
        xi2_bar,
        correlators_at_opt,
        merit: d.tau_tilde_s / tau_opt,
        edge_warning,
    })
}

/// Squeezing of a configuration at a fixed time and angle (clock-operation
/// mode, no per-shot optimization).
pub fn squeezing_at_fixed<F: Real>(
    config: &AtomConfiguration<F>,
    model: PotentialModel,
    p: &DressingParams<F>,
    tau_s: F,
    theta_rad: F,
) -> Result<SqueezingResult<F>> {
    let d = derived_params(p)?;
    let c = crate::correlator::correlators_exact(config, model, p, tau_s)?;
    let xi2_fixed = xi2(&c, theta_rad)?;
    Ok(SqueezingResult {
        xi2_min: xi2_fixed,
        theta_min_rad: theta_rad,
        tau_opt_s: tau_s,
        xi2_bar: decay_correct(xi2_fixed, d.tau_tilde_s, tau_s),
        correlators_at_opt: c,
        merit: d.tau_tilde_s / tau_s,
        edge_warning: false,
    })
}

/// Optimal pair phase and squeezing for `n` all-to-all coupled atoms: the
/// geometry-independent bound of the twisting scheme.
pub fn all_to_all_optimum<F: Real>(n_atoms: u64) -> (F, F) {
    let f = |phi: F| xi2_min_of(&all_to_all_from_phase(n_atoms, phi));
    let hi = F::FRAC_PI_2() * real(0.999_999);
    let (phi, val) = golden_section(f, real(1e-9), hi, real(1e-9));
    (phi, val)
}

/// Golden-section minimization on `[a, b]` to absolute tolerance `tol`.
/// Returns the best sampled point.
pub fn golden_section<F: Real>(f: impl Fn(F) -> F, mut a: F, mut b: F, tol: F) -> (F, F) {
    let inv_phi = (real::<F>(5.0).sqrt() - F::one()) / real(2.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
