//! Post-sequence collective spin correlators.
//!
//! After the echoed twisting sequence the four quantities needed for the
//! squeezing analysis have exact pairwise expressions in the phases
//! `phi_ik = V_ik tau / (2 hbar)`:
//!
//! ```text
//! <Jz>        = -(1/2) sum_i prod_{k!=i} cos(phi_ik)
//! <Jx^2>      =  N/4 + (1/4) sum_{i<j} [ prod_{k!=i,j} cos(phi_ik - phi_jk)
//!                                      - prod_{k!=i,j} cos(phi_ik + phi_jk) ]
//! <Jy^2>      =  N/4
//! <{Jx,Jy}>   = -(1/2) sum_{i<j} sin(phi_ij) [ prod_{k!=i,j} cos(phi_ik)
//!                                            + prod_{k!=i,j} cos(phi_jk) ]
//! ```
//!
//! using the collective spin `J_a = sum_i sigma_a^(i) / 2`.  The cross
//! correlator is the i<->j symmetrized form; the state-vector oracle
//! certifies it against direct simulation for inhomogeneous couplings
//! (see `tests/` and the `oracle` module).
//!
//! Interactions involving empty lattice sites are identically zero, so a
//! random fractional filling enters purely through which pairs appear.
//! Pairs whose phase stays below a configurable threshold are treated as
//! exactly non-interacting (cosine factors of one); the induced error is
//! bounded by `N * eps_phase` per product.
//!
//! Closed forms are provided for the two tractable limits: all-to-all
//! coupling of uniform strength, and the Heaviside potential on a fully
//! filled 1D lattice ([`heaviside`]).

pub mod graph;
pub mod heaviside;

pub use graph::{correlators_from_phases, CorrelatorOptions, InteractionGraph, PhaseMatrix};
pub use heaviside::correlators_heaviside_1d;

use crate::error::{Error, Result};
use crate::geometry::AtomConfiguration;
use crate::interaction::{DressingParams, Potential, PotentialModel};
use crate::real::{real, real_of_count, Real};

/// The four post-sequence expectation values, in `J = sigma/2` units.
#[derive(Clone, Copy, Debug)]
pub struct Correlators<F> {
    /// `<Jz>`; `-N/2` for the coherent state.
    pub jz: F,
    /// `<Jx^2>`; grows as the anti-squeezed quadrature develops.
    pub jx2: F,
    /// `<Jy^2>`; identically `N/4`.
    pub jy2: F,
    /// `<Jx Jy + Jy Jx>`.
    pub jxjy_sym: F,
    pub n_atoms: u64,
}

impl<F: Real> Correlators<F> {
    /// Coherent-state values at zero twisting.
    pub fn coherent(n_atoms: u64) -> Self {
        let n = real_of_count::<F>(n_atoms);
        Self {
            jz: -n / real(2.0),
            jx2: n / real(4.0),
            jy2: n / real(4.0),
            jxjy_sym: F::zero(),
            n_atoms,
        }
    }

    /// Structural sanity: |jz| <= N/2, jy2 = N/4, jx2 >= 0.
    pub fn validate(&self) -> Result<()> {
        let n = real_of_count::<F>(self.n_atoms);
        let tol = F::epsilon() * real::<F>(64.0) * n.max(F::one());
        if self.jz.abs() > n / real::<F>(2.0) + tol {
            return Err(Error::Domain("correlators: |<Jz>| exceeds N/2".into()));
        }
        if (self.jy2 - n / real(4.0)).abs() > tol {
            return Err(Error::Domain("correlators: <Jy^2> != N/4".into()));
        }
        if self.jx2 < -tol {
            return Err(Error::Domain("correlators: <Jx^2> negative".into()));
        }
        Ok(())
    }
}

/// Exact correlators for an arbitrary configuration under the given pair
/// potential, twisting for `tau_s` seconds.
pub fn correlators_exact<F: Real>(
    config: &AtomConfiguration<F>,
    model: PotentialModel,
    p: &DressingParams<F>,
    tau_s: F,
) -> Result<Correlators<F>> {
    correlators_exact_with(config, model, p, tau_s, &CorrelatorOptions::default())
}

/// As [`correlators_exact`] with explicit cutoff options.
pub fn correlators_exact_with<F: Real>(
    config: &AtomConfiguration<F>,
    model: PotentialModel,
    p: &DressingParams<F>,
    tau_s: F,
    opts: &CorrelatorOptions<F>,
) -> Result<Correlators<F>> {
    if config.n_atoms() == 0 {
        return Err(Error::Domain("correlators need at least one atom".into()));
    }
    if !(tau_s >= F::zero()) {
        return Err(Error::Domain("squeezing time must be >= 0".into()));
    }
    let pot = Potential::new(model, p)?;
    let graph = InteractionGraph::build(config, &pot, tau_s, opts)?;
    let phases = PhaseMatrix::new(&graph, tau_s)?;
    Ok(correlators_from_phases(&phases))
}

/// Closed-form correlators for `n_atoms` all interacting at the uniform
/// strength `v0_rad`, with pair phase `phi = v0 tau / 2`.
pub fn correlators_all_to_all<F: Real>(n_atoms: u64, v0_rad: F, tau_s: F) -> Correlators<F> {
    all_to_all_from_phase(n_atoms, v0_rad * tau_s / real(2.0))
}

/// All-to-all closed form parameterized directly by the pair phase.
pub fn all_to_all_from_phase<F: Real>(n_atoms: u64, phi: F) -> Correlators<F> {
    let n = real_of_count::<F>(n_atoms);
    let quarter = n / real(4.0);
    if n_atoms < 2 {
        return Correlators::coherent(n_atoms);
    }
    let c = phi.cos();
    let s = phi.sin();
    let c2 = (phi + phi).cos();
    let nm1 = n_atoms as i32 - 1;
    let nm2 = n_atoms as i32 - 2;
    let pairs = n * (n - F::one());
    Correlators {
        jz: -(n / real(2.0)) * c.powi(nm1),
        jx2: quarter + pairs / real::<F>(8.0) * (F::one() - c2.powi(nm2)),
        jy2: quarter,
        jxjy_sym: -(pairs / real::<F>(2.0)) * s * c.powi(nm2),
        n_atoms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_lattice, fill_full, LatticeSpec};
    use crate::interaction::DressingParams;

    fn chain_config(m: usize, a: f64) -> AtomConfiguration<f64> {
        let sites = build_lattice(&LatticeSpec::chain(m, a).unwrap()).unwrap();
        fill_full(&sites)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn single_atom_is_coherent_for_any_time() {
        let p = DressingParams::example_sr88().with_rc_over_a(9.0, 406.5e-9);
        let cfg = chain_config(1, 406.5e-9);
        for tau in [0.0, 1e-4, 5e-3] {
            let c = correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, tau).unwrap();
            assert_eq!(c.jz, -0.5);
            assert_eq!(c.jx2, 0.25);
            assert_eq!(c.jy2, 0.25);
            assert_eq!(c.jxjy_sym, 0.0);
        }
    }

    #[test]
    fn two_atoms_reduce_to_the_pair_solution() {
        let p = DressingParams::example_sr88().with_rc_over_a(9.0, 406.5e-9);
        let cfg = chain_config(2, 406.5e-9);
        let v = crate::interaction::v_softcore(406.5e-9, &p).unwrap();
        for tau in [1e-5, 3e-4, 2e-3] {
            let phi = v * tau / 2.0;
            let c = correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, tau).unwrap();
            assert!(rel(c.jz, -phi.cos()) < 1e-14);
            assert!(rel(c.jx2, 0.5) < 1e-14);
            assert!(rel(c.jy2, 0.5) < 1e-14);
            assert!(rel(c.jxjy_sym, -phi.sin()) < 1e-14);
        }
    }

    #[test]
    fn all_to_all_matches_direct_sum_with_constant_couplings() {
        // A chain bathed in a Heaviside potential wider than the chain has
        // exactly constant couplings.
        let a = 1e-6;
        let p = DressingParams::example_sr88().with_rc_over_a(500.0, a);
        for (n, tau) in [(8usize, 3e-4), (64, 1.3e-4), (200, 7e-5)] {
            let cfg = chain_config(n, a);
            let direct = correlators_exact(&cfg, PotentialModel::Heaviside, &p, tau).unwrap();
            let v0 = crate::interaction::derived_params(&p).unwrap().v0_rad;
            let closed = correlators_all_to_all(n as u64, v0, tau);
            assert!(rel(direct.jz, closed.jz) < 1e-12, "n={n} jz");
            assert!(rel(direct.jx2, closed.jx2) < 1e-12, "n={n} jx2");
            assert!(rel(direct.jxjy_sym, closed.jxjy_sym) < 1e-12, "n={n} cross");
            assert_eq!(direct.jy2, closed.jy2);
        }
    }

    #[test]
    fn all_to_all_zero_phase_is_coherent() {
        let c = all_to_all_from_phase::<f64>(17, 0.0);
        assert_eq!(c.jz, -8.5);
        assert_eq!(c.jx2, 4.25);
        assert_eq!(c.jxjy_sym, 0.0);
    }

    #[test]
    fn jy2_is_quarter_n_for_any_input() {
        let p = DressingParams::example_sr88().with_rc_over_a(3.0, 1e-6);
        for m in [1usize, 5, 40] {
            let cfg = chain_config(m, 1e-6);
            let c = correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, 4e-4).unwrap();
            assert_eq!(c.jy2, m as f64 / 4.0);
            c.validate().unwrap();
        }
    }

    #[test]
    fn tau_zero_is_coherent_and_flat() {
        let p = DressingParams::example_sr88().with_rc_over_a(9.0, 406.5e-9);
        let cfg = chain_config(30, 406.5e-9);
        let c0 = correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, 0.0).unwrap();
        assert_eq!(c0.jz, -15.0);
        assert_eq!(c0.jx2, 7.5);
        assert_eq!(c0.jxjy_sym, 0.0);
        // First derivative of <Jz> vanishes at tau = 0: the deviation is
        // quadratic, so quartering h quarters^2 the defect.
        let h = 1e-6;
        let d1 = (correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, h)
            .unwrap()
            .jz
            + 15.0)
            .abs();
        let d2 = (correlators_exact(&cfg, PotentialModel::SoftCoreVdW, &p, h / 4.0)
            .unwrap()
            .jz
            + 15.0)
            .abs();
        assert!(d2 < d1 / 8.0, "d1={d1:e} d2={d2:e}");
    }
}
