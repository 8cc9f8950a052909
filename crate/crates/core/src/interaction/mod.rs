//! Pairwise dressed interaction potentials and detuning-derived parameters.
//!
//! A far-off-resonance Rydberg laser (Rabi frequency `Omega_r`, detuning
//! `Delta`) admixes a Rydberg state into the excited clock state and
//! imprints a soft-core interaction between excited atoms,
//!
//! ```text
//! V(r)/hbar = (Omega_r^4 / 8|Delta|^3) * R_c^6 / (r^6 + R_c^6),
//! R_c = |C6 / (2 hbar |Delta|)|^(1/6).
//! ```
//!
//! Two companions are available: a Heaviside step of the same height and
//! radius (the basis of the closed-form correlators), and the exact dressed
//! pair shift obtained by diagonalizing the two-atom ladder with the full
//! dipole-dipole potential `V_dd(r)` (see [`exact`]), which keeps the
//! intermediate `1/r^3` regime that the van der Waals form discards.
//!
//! All frequencies are stored as angular quantities (rad/s); interfaces
//! that speak in cycle frequencies convert at the boundary.

pub mod defects;
pub mod exact;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::real::{real, Real};

/// Laser and interaction parameters of the dressing scheme.
#[derive(Clone, Copy, Debug)]
pub struct DressingParams<F> {
    /// Rydberg Rabi frequency `Omega_r`, rad/s, > 0.
    pub omega_r_rad: F,
    /// Detuning `Delta`, rad/s, signed, nonzero.
    pub delta_rad: F,
    /// Van der Waals coefficient `C6`, J m^6, signed.
    pub c6: Option<F>,
    /// Foerster defect `delta`, rad/s, signed.
    pub forster_delta_rad: Option<F>,
    /// Crossover length `x_c` from `1/r^3` to `1/r^6` scaling, m.
    pub x_c_m: Option<F>,
    /// Rydberg state lifetime, s.
    pub tau_rydberg_s: F,
    /// Principal quantum number of the dressed Rydberg state.
    pub n_principal: Option<u32>,
}

impl<F: Real> DressingParams<F> {
    pub fn new(omega_r_rad: F, delta_rad: F, tau_rydberg_s: F) -> Self {
        Self {
            omega_r_rad,
            delta_rad,
            c6: None,
            forster_delta_rad: None,
            x_c_m: None,
            tau_rydberg_s,
            n_principal: None,
        }
    }

    /// Representative strontium clock parameters used throughout the test
    /// and example configurations: `Omega_r/2pi = 1.6 MHz`,
    /// `Delta/2pi = -16 MHz`, 23 us Rydberg lifetime, n = 55.
    pub fn example_sr88() -> Self {
        let tau: F = real(23e-6);
        let mut p = Self::new(
            F::TAU() * real(1.6e6),
            -(F::TAU() * real(16.0e6)),
            tau,
        );
        p.n_principal = Some(55);
        p
    }

    /// Fix `C6` so that the interaction radius equals `rc_over_a` lattice
    /// constants: `C6 = 2 hbar |Delta| (rc_over_a * a)^6`.
    pub fn with_rc_over_a(mut self, rc_over_a: F, lattice_constant_m: F) -> Self {
        let rc = rc_over_a * lattice_constant_m;
        self.c6 = Some(real::<F>(2.0 * HBAR) * self.delta_rad.abs() * rc.powi(6));
        self
    }

    /// Supply the Foerster parameters; derives `C6 = -hbar delta x_c^6 / 4`
    /// unless `C6` was given explicitly.
    pub fn with_forster(mut self, forster_delta_rad: F, x_c_m: F) -> Self {
        self.forster_delta_rad = Some(forster_delta_rad);
        self.x_c_m = Some(x_c_m);
        if self.c6.is_none() {
            self.c6 = Some(c6_from_forster(forster_delta_rad, x_c_m));
        }
        self
    }

    /// Keep `C6` and set the Foerster defect, deriving the crossover length
    /// `x_c = (-4 C6 / (hbar delta))^(1/6)`.
    pub fn with_forster_defect_keeping_c6(mut self, forster_delta_rad: F) -> Result<Self> {
        let c6 = self
            .c6
            .ok_or_else(|| Error::Config("C6 required to derive x_c from the defect".into()))?;
        let arg = real::<F>(-4.0) * c6 / (real::<F>(HBAR) * forster_delta_rad);
        if !(arg > F::zero()) {
            return Err(Error::Config(
                "C6 and Foerster defect must have opposite signs".into(),
            ));
        }
        self.forster_delta_rad = Some(forster_delta_rad);
        self.x_c_m = Some(arg.powf(F::one() / real(6.0)));
        Ok(self)
    }

    /// Whether the drive is in the far-off-resonance regime
    /// `|Delta| >= 10 Omega_r`.  Recorded, never enforced: detuning scans
    /// deliberately step below it.
    pub fn far_off_resonance(&self) -> bool {
        self.delta_rad.abs() >= real::<F>(10.0) * self.omega_r_rad
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_r_rad > F::zero()) {
            return Err(Error::Config("Rabi frequency must be > 0".into()));
        }
        if self.delta_rad == F::zero() || !self.delta_rad.is_finite() {
            return Err(Error::Config("detuning must be finite and nonzero".into()));
        }
        if !(self.tau_rydberg_s > F::zero()) {
            return Err(Error::Config("Rydberg lifetime must be > 0".into()));
        }
        if let (Some(c6), Some(delta), Some(xc)) = (self.c6, self.forster_delta_rad, self.x_c_m) {
            let implied = c6_from_forster(delta, xc);
            let tol = real::<F>(1e-9).max(F::epsilon() * real(64.0));
            if (c6 - implied).abs() > tol * c6.abs().max(implied.abs()) {
                return Err(Error::Config(format!(
                    "inconsistent C6: supplied {c6:e}, Foerster parameters imply {implied:e}"
                )));
            }
        }
        Ok(())
    }
}

/// Quantities derived from the drive parameters.
#[derive(Clone, Copy, Debug)]
pub struct DerivedParams<F> {
    /// Plateau interaction `V0/hbar = Omega_r^4 / (8 |Delta|^3)`, rad/s.
    pub v0_rad: F,
    /// Interaction radius `R_c = |C6/(2 hbar |Delta|)|^(1/6)`, m.
    pub r_c_m: F,
    /// Enhanced dressed-state lifetime `(4 Delta^2 / Omega_r^2) tau_r`, s.
    pub tau_tilde_s: F,
    /// Rydberg admixture `Omega_r / (2 Delta)`, signed.
    pub epsilon: F,
}

/// Compute [`DerivedParams`]; errors when `C6` is absent.
pub fn derived_params<F: Real>(p: &DressingParams<F>) -> Result<DerivedParams<F>> {
    p.validate()?;
    let c6 = p
        .c6
        .ok_or_else(|| Error::Config("C6 is required to derive the interaction radius".into()))?;
    let abs_delta = p.delta_rad.abs();
    let v0_rad = p.omega_r_rad.powi(4) / (real::<F>(8.0) * abs_delta.powi(3));
    let r_c_m = (c6 / (real::<F>(2.0 * HBAR) * abs_delta))
        .abs()
        .powf(F::one() / real(6.0));
    let ratio = p.delta_rad / p.omega_r_rad;
    let tau_tilde_s = real::<F>(4.0) * ratio * ratio * p.tau_rydberg_s;
    let epsilon = p.omega_r_rad / (real::<F>(2.0) * p.delta_rad);
    Ok(DerivedParams {
        v0_rad,
        r_c_m,
        tau_tilde_s,
        epsilon,
    })
}

/// Which pair potential to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialModel {
    /// Soft-core van der Waals form.
    SoftCoreVdW,
    /// Step of height `V0` and radius `R_c`.
    Heaviside,
    /// Exact dressed dipole-dipole pair shift; requires the Foerster
    /// parameters.
    ExactDipoleDipole,
}

/// Soft-core dressed potential `V(r)/hbar` in rad/s.
pub fn v_softcore<F: Real>(r_m: F, p: &DressingParams<F>) -> Result<F> {
    let d = derived_params(p)?;
    let rc6 = d.r_c_m.powi(6);
    Ok(d.v0_rad * rc6 / (r_m.powi(6) + rc6))
}

/// Heaviside approximation: `V0/hbar` for `r <= R_c`, else zero.  The
/// boundary is inclusive, with a 1e-9 relative slack absorbing rounding in
/// distances derived from site coordinates.
pub fn v_heaviside<F: Real>(r_m: F, p: &DressingParams<F>) -> Result<F> {
    let d = derived_params(p)?;
    let slack = F::one() + real::<F>(1e-9).max(F::epsilon() * real(8.0));
    Ok(if r_m <= d.r_c_m * slack {
        d.v0_rad
    } else {
        F::zero()
    })
}

/// Exact dressed pair shift `V(r)/hbar` in rad/s; see [`exact`].
pub fn v_exact<F: Real>(r_m: F, p: &DressingParams<F>) -> Result<F> {
    exact::v_exact(r_m, p)
}

/// `C6 = -hbar delta x_c^6 / 4` in J m^6 from the Foerster parameters.
pub fn c6_from_forster<F: Real>(delta_rad: F, x_c_m: F) -> F {
    real::<F>(-HBAR / 4.0) * delta_rad * x_c_m.powi(6)
}

/// A pair potential bound to validated parameters, cheap to evaluate per
/// distance.  This is what the correlator graph consumes.
#[derive(Clone, Debug)]
pub struct Potential<F> {
    model: PotentialModel,
    v0_rad: F,
    r_c_m: F,
    params: DressingParams<F>,
}

impl<F: Real> Potential<F> {
    pub fn new(model: PotentialModel, p: &DressingParams<F>) -> Result<Self> {
        p.validate()?;
        let d = derived_params(p)?;
        if model == PotentialModel::ExactDipoleDipole
            && (p.forster_delta_rad.is_none() || p.x_c_m.is_none())
        {
            return Err(Error::Config(
                "exact dressed potential requires the Foerster defect and x_c".into(),
            ));
        }
        Ok(Self {
            model,
            v0_rad: d.v0_rad,
            r_c_m: d.r_c_m,
            params: *p,
        })
    }

    /// Potential over hbar at separation `r`, rad/s.
    pub fn v_over_hbar(&self, r_m: F) -> Result<F> {
        match self.model {
            PotentialModel::SoftCoreVdW => {
                let rc6 = self.r_c_m.powi(6);
                Ok(self.v0_rad * rc6 / (r_m.powi(6) + rc6))
            }
            PotentialModel::Heaviside => {
                let slack = F::one() + real::<F>(1e-9).max(F::epsilon() * real(8.0));
                Ok(if r_m <= self.r_c_m * slack {
                    self.v0_rad
                } else {
                    F::zero()
                })
            }
            PotentialModel::ExactDipoleDipole => exact::v_exact(r_m, &self.params),
        }
    }

    pub fn v0_rad(&self) -> F {
        self.v0_rad
    }

    pub fn r_c_m(&self) -> F {
        self.r_c_m
    }

    pub fn model(&self) -> PotentialModel {
        self.model
    }

    pub fn params(&self) -> &DressingParams<F> {
        &self.params
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU_F64: f64 = std::f64::consts::TAU;

    fn table_params() -> DressingParams<f64> {
        DressingParams::example_sr88().with_rc_over_a(9.0, 406.5e-9)
    }

    #[test]
    fn derived_values_for_example_drive() {
        let p = table_params();
        let d = derived_params(&p).unwrap();
        // V0/hbar = Omega^4 / (8 |Delta|^3) = 2 pi * 200 rad/s.
        assert!((d.v0_rad - TAU_F64 * 200.0).abs() < 1e-9 * TAU_F64 * 200.0);
        // tau_tilde = 4 (Delta/Omega)^2 tau_r = 9.2 ms.
        assert!((d.tau_tilde_s - 9.2e-3).abs() < 1e-12);
        // epsilon = Omega / (2 Delta) = -0.05.
        assert!((d.epsilon + 0.05).abs() < 1e-15);
        // R_c/a = 9 by construction.
        assert!((d.r_c_m - 9.0 * 406.5e-9).abs() < 1e-9 * d.r_c_m);
        assert!((d.r_c_m - 3.6585e-6).abs() < 1e-4 * 3.6585e-6);
        assert!(p.far_off_resonance());
    }

    #[test]
    fn softcore_plateau_half_maximum_and_tail() {
        let p = table_params();
        let d = derived_params(&p).unwrap();
        let v0 = d.v0_rad;
        assert_eq!(v_softcore(0.0, &p).unwrap(), v0);
        let half = v_softcore(d.r_c_m, &p).unwrap();
        assert!((half - v0 / 2.0).abs() < 1e-12 * v0);
        let r2 = v_softcore(2.0 * d.r_c_m, &p).unwrap();
        assert!((r2 - v0 / 65.0).abs() < 1e-12 * v0);
    }

    #[test]
    fn softcore_monotone_nonincreasing() {
        let p = table_params();
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let r = k as f64 * 0.05e-6;
            let v = v_softcore(r, &p).unwrap();
            assert!(v <= prev + 1e-18);
            prev = v;
        }
    }

    #[test]
    fn heaviside_boundary_inclusive() {
        let p = table_params();
        let d = derived_params(&p).unwrap();
        assert_eq!(v_heaviside(0.0, &p).unwrap(), d.v0_rad);
        assert_eq!(v_heaviside(d.r_c_m, &p).unwrap(), d.v0_rad);
        assert_eq!(v_heaviside(1.0001 * d.r_c_m, &p).unwrap(), 0.0);
    }

    #[test]
    fn heaviside_brackets_softcore() {
        let p = table_params();
        let d = derived_params(&p).unwrap();
        for k in 1..100 {
            let r = d.r_c_m * k as f64 / 50.0;
            let h = v_heaviside(r, &p).unwrap();
            let s = v_softcore(r, &p).unwrap();
            if r <= d.r_c_m {
                assert!(h >= s);
            } else {
                assert!(h <= s);
            }
        }
    }

    #[test]
    fn c6_foerster_relation() {
        assert_eq!(c6_from_forster(0.0, 1e-6), 0.0);
        let delta = -TAU_F64 * 1.26e9;
        let c6 = c6_from_forster(delta, 3e-6);
        assert!(c6 > 0.0);
        // Round trip through the radius formula.
        let mut p = DressingParams::example_sr88();
        p.c6 = Some(c6);
        let d = derived_params(&p).unwrap();
        let direct = (c6 / (2.0 * HBAR * p.delta_rad.abs())).abs().powf(1.0 / 6.0);
        assert!((d.r_c_m - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn c6_consistency_enforced() {
        let delta = -TAU_F64 * 1.26e9;
        let xc = 2.5e-6;
        let mut p = DressingParams::example_sr88().with_forster(delta, xc);
        assert!(p.validate().is_ok());
        p.c6 = Some(p.c6.unwrap() * (1.0 + 1e-6));
        assert!(matches!(p.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn missing_c6_is_a_config_error() {
        let p = DressingParams::<f64>::example_sr88();
        assert!(matches!(derived_params(&p), Err(Error::Config(_))));
    }

    #[test]
    fn scale_covariance_of_drive() {
        // Scaling Omega and Delta together by s scales V0/hbar by s and
        // leaves epsilon unchanged.
        let p = table_params();
        for s in [0.5, 2.0, 7.3] {
            let mut q = p;
            q.omega_r_rad *= s;
            q.delta_rad *= s;
            q.c6 = p.c6; // keep C6; R_c then shifts, V0 scales by s
            let dp = derived_params(&p).unwrap();
            let dq = derived_params(&q).unwrap();
            assert!((dq.v0_rad - s * dp.v0_rad).abs() < 1e-9 * dq.v0_rad.abs());
            assert!((dq.epsilon - dp.epsilon).abs() < 1e-15);
        }
    }

    #[test]
    fn generic_scalar_instantiates_at_f32() {
        let p = DressingParams::<f32>::example_sr88().with_rc_over_a(9.0, 406.5e-9);
        let d = derived_params(&p).unwrap();
        assert!((d.v0_rad - (TAU_F64 as f32) * 200.0).abs() < 0.05);
    }
}
