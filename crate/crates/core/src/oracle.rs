//! Brute-force state-vector simulation of the echoed twisting sequence.
//!
//! Up to 12 atoms the full sequence is simulated exactly on the
//! `2^N`-dimensional Hilbert space: prepare `|down>^N`, rotate by pi/2
//! about x, evolve under the diagonal interaction Hamiltonian
//!
//! ```text
//! H_z / hbar = sum_{i<j} (v_ij / 4) sz_i sz_j + sum_i (d_i / 2) sz_i
//! ```
//!
//! for tau/2, apply the pi echo pulse about x, evolve for the second
//! tau/2, and finally rotate by pi/2 about x once more, which maps the
//! mean-spin axis onto -z so the measured expectation values line up with
//! the analytic correlator frame (calibrated on the two-atom case, where
//! the mapping is unique).  All pulses are ideal and instantaneous, and
//! the interaction propagator is a pure per-basis-state phase.
//!
//! The echo makes the single-atom `d_i` terms drop out exactly; the test
//! suite checks that cancellation to numerical precision.

use num_complex::Complex;

use crate::correlator::Correlators;
use crate::error::{Error, Result};
use crate::geometry::AtomConfiguration;
use crate::interaction::Potential;
use crate::real::{real, Real};

/// Capacity bound: `2^12` amplitudes.
pub const MAX_ORACLE_ATOMS: usize = 12;

/// Couplings, on-site detunings, and duration of one twisting sequence.
#[derive(Clone, Debug)]
pub struct SequenceSpec<F> {
    /// Symmetric coupling matrix `V_ij / hbar` in rad/s, zero diagonal.
    pub couplings: Vec<Vec<F>>,
    /// On-site detunings `delta_i / hbar` in rad/s.
    pub onsite_detunings: Vec<F>,
    /// Total squeezing time, split around the echo pulse.
    pub tau_s: F,
}

impl<F: Real> SequenceSpec<F> {
    /// Homogeneous-detuning spec from explicit couplings.
    pub fn new(couplings: Vec<Vec<F>>, tau_s: F) -> Self {
        let n = couplings.len();
        Self {
            couplings,
            onsite_detunings: vec![F::zero(); n],
            tau_s,
        }
    }

    /// Build from an atom configuration and a pair potential.
    pub fn from_configuration(
        config: &AtomConfiguration<F>,
        potential: &Potential<F>,
        tau_s: F,
    ) -> Result<Self> {
        let n = config.n_atoms();
        let mut couplings = vec![vec![F::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let r = crate::geometry::dist_sq(&config.positions[i], &config.positions[j])
                    .sqrt();
                let v = potential.v_over_hbar(r)?;
                couplings[i][j] = v;
                couplings[j][i] = v;
            }
        }
        Ok(Self::new(couplings, tau_s))
    }

    pub fn n_atoms(&self) -> usize {
        self.couplings.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_atoms();
        if n == 0 {
            return Err(Error::Domain("sequence needs at least one atom".into()));
        }
        if n > MAX_ORACLE_ATOMS {
            return Err(Error::Capacity(format!(
                "oracle handles at most {MAX_ORACLE_ATOMS} atoms, got {n}"
            )));
        }
        if self.onsite_detunings.len() != n {
            return Err(Error::Config("detuning count mismatch".into()));
        }
        for (i, row) in self.couplings.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Config("coupling matrix is not square".into()));
            }
            if row[i] != F::zero() {
                return Err(Error::Config("coupling diagonal must be zero".into()));
            }
            for j in 0..n {
                if self.couplings[i][j] != self.couplings[j][i] {
                    return Err(Error::Config("coupling matrix must be symmetric".into()));
                }
            }
        }
        if !(self.tau_s >= F::zero()) {
            return Err(Error::Domain("squeezing time must be >= 0".into()));
        }
        Ok(())
    }
}

/// Full result of one oracle run, including the diagnostics behind the
/// frame conventions.
#[derive(Clone, Copy, Debug)]
pub struct OracleOutput<F> {
    pub correlators: Correlators<F>,
    /// `<Jx>`, `<Jy>`: both vanish for this sequence.
    pub jx_mean: F,
    pub jy_mean: F,
    /// Final state norm; unity up to rounding.
    pub norm: F,
}

/// Run the sequence and return the four correlators.
pub fn simulate_sequence<F: Real>(spec: &SequenceSpec<F>) -> Result<Correlators<F>> {
    Ok(simulate_sequence_full(spec)?.correlators)
}

/// Run the sequence keeping diagnostics.
pub fn simulate_sequence_full<F: Real>(spec: &SequenceSpec<F>) -> Result<OracleOutput<F>> {
    spec.validate()?;
    let n = spec.n_atoms();
    let dim = 1usize << n;
    let half = real::<F>(0.5);

    // Diagonal interaction energies per basis state (bit set = spin up).
    let mut energies = vec![F::zero(); dim];
    for (s, e) in energies.iter_mut().enumerate() {
        let z = |i: usize| {
            if s >> i & 1 == 1 {
                F::one()
            } else {
                -F::one()
            }
        };
        let mut acc = F::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                acc = acc + spec.couplings[i][j] / real(4.0) * z(i) * z(j);
            }
            acc = acc + spec.onsite_detunings[i] * half * z(i);
        }
        *e = acc;
    }

    let mut state = vec![Complex::new(F::zero(), F::zero()); dim];
    state[0] = Complex::new(F::one(), F::zero());

    let half_tau = spec.tau_s * half;
    rotate_all_x(&mut state, n, F::FRAC_PI_2());
    twist(&mut state, &energies, half_tau);
    rotate_all_x(&mut state, n, F::PI());
    twist(&mut state, &energies, half_tau);
    rotate_all_x(&mut state, n, F::FRAC_PI_2());

    // Expectations.
    let mut jz = F::zero();
    let mut norm2 = F::zero();
    for (s, amp) in state.iter().enumerate() {
        let w = amp.norm_sqr();
        norm2 = norm2 + w;
        let ups = (s as u32).count_ones() as i64;
        let z_total = real::<F>((2 * ups - n as i64) as f64) * half;
        jz = jz + w * z_total;
    }

    let jx_state = apply_jx(&state, n);
    let jy_state = apply_jy(&state, n);
    let mut jx2 = F::zero();
    let mut jy2 = F::zero();
    let mut cross_re = F::zero();
    let mut jx_mean = F::zero();
    let mut jy_mean = F::zero();
    for s in 0..dim {
        jx2 = jx2 + jx_state[s].norm_sqr();
        jy2 = jy2 + jy_state[s].norm_sqr();
        let c = jx_state[s].conj() * jy_state[s];
        cross_re = cross_re + c.re;
        jx_mean = jx_mean + (state[s].conj() * jx_state[s]).re;
        jy_mean = jy_mean + (state[s].conj() * jy_state[s]).re;
    }

    Ok(OracleOutput {
        correlators: Correlators {
            jz,
            jx2,
            jy2,
            jxjy_sym: real::<F>(2.0) * cross_re,
            n_atoms: n as u64,
        },
        jx_mean,
        jy_mean,
        norm: norm2.sqrt(),
    })
}

/// Global rotation `exp(-i angle Jx)` (= product of single-qubit
/// `exp(-i angle sx_i / 2)`).
fn rotate_all_x<F: Real>(state: &mut [Complex<F>], n: usize, angle: F) {
    let c = (angle / real(2.0)).cos();
    let s = (angle / real(2.0)).sin();
    let mi_s = Complex::new(F::zero(), -s);
    for qubit in 0..n {
        let mask = 1usize << qubit;
        for idx in 0..state.len() {
            if idx & mask == 0 {
                let a = state[idx];
                let b = state[idx | mask];
                state[idx] = a * c + b * mi_s;
                state[idx | mask] = a * mi_s + b * c;
            }
        }
    }
}

/// Diagonal propagator `exp(-i H_z t / hbar)`.
fn twist<F: Real>(state: &mut [Complex<F>], energies: &[F], t: F) {
    for (amp, &e) in state.iter_mut().zip(energies) {
        let phase = -e * t;
        *amp = *amp * Complex::new(phase.cos(), phase.sin());
    }
}

fn apply_jx<F: Real>(state: &[Complex<F>], n: usize) -> Vec<Complex<F>> {
    let mut out = vec![Complex::new(F::zero(), F::zero()); state.len()];
    let half = real::<F>(0.5);
    for qubit in 0..n {
        let mask = 1usize << qubit;
        for (idx, amp) in state.iter().enumerate() {
            out[idx ^ mask] = out[idx ^ mask] + *amp * half;
        }
    }
    out
}

fn apply_jy<F: Real>(state: &[Complex<F>], n: usize) -> Vec<Complex<F>> {
    let mut out = vec![Complex::new(F::zero(), F::zero()); state.len()];
    let half_i = Complex::new(F::zero(), real::<F>(0.5));
    for qubit in 0..n {
        let mask = 1usize << qubit;
        for (idx, amp) in state.iter().enumerate() {
            // sy |up> = i |down>, sy |down> = -i |up>.
            if idx & mask != 0 {
                out[idx ^ mask] = out[idx ^ mask] + *amp * half_i;
            } else {
                out[idx ^ mask] = out[idx ^ mask] - *amp * half_i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_spec(n: usize, seed: u64, detuning_scale: f64) -> SequenceSpec<f64> {
        let mut rng = SplitMix64::new(seed);
        let mut couplings = vec![vec![0.0; n]; n];
        let scale = 800.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = scale * (0.1 + 0.9 * rng.next_f64());
                couplings[i][j] = v;
                couplings[j][i] = v;
            }
        }
        let onsite_detunings = (0..n)
            .map(|_| detuning_scale * scale * (2.0 * rng.next_f64() - 1.0))
            .collect();
        SequenceSpec {
            couplings,
            onsite_detunings,
            tau_s: (0.2 + 2.0 * rng.next_f64()) * 1e-3,
        }
    }

    #[test]
    fn single_atom_echo_cancels_everything() {
        for delta in [0.0f64, 123.0, -4.5e4] {
            let spec = SequenceSpec {
                couplings: vec![vec![0.0]],
                onsite_detunings: vec![delta],
                tau_s: 7.7e-4,
            };
            let out = simulate_sequence_full(&spec).unwrap();
            let c = out.correlators;
            assert!((c.jz + 0.5).abs() < 1e-13);
            assert!((c.jx2 - 0.25).abs() < 1e-13);
            assert!((c.jy2 - 0.25).abs() < 1e-13);
            assert!(c.jxjy_sym.abs() < 1e-13);
            assert!((out.norm - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn two_atom_analytic_case() {
        let v = 1000.0;
        for tau in [1e-4, 8e-4, 2.3e-3] {
            let spec = SequenceSpec::new(vec![vec![0.0, v], vec![v, 0.0]], tau);
            let c = simulate_sequence(&spec).unwrap();
            let phi: f64 = v * tau / 2.0;
            assert!((c.jz + phi.cos()).abs() < 1e-12);
            assert!((c.jx2 - 0.5).abs() < 1e-12);
            assert!((c.jy2 - 0.5).abs() < 1e-12);
            assert!((c.jxjy_sym + phi.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn transverse_means_vanish_and_norm_is_preserved() {
        for n in 2..=10 {
            let out = simulate_sequence_full(&random_spec(n, 31 + n as u64, 0.0)).unwrap();
            assert!(out.jx_mean.abs() < 1e-12, "n={n}: <Jx> = {}", out.jx_mean);
            assert!(out.jy_mean.abs() < 1e-12, "n={n}: <Jy> = {}", out.jy_mean);
            assert!((out.norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn onsite_detunings_drop_out() {
        for seed in 0..50u64 {
            let n = 2 + (seed % 5) as usize;
            let clean = random_spec(n, 1000 + seed, 0.0);
            let mut noisy = random_spec(n, 1000 + seed, 10.0);
            noisy.couplings = clean.couplings.clone();
            noisy.tau_s = clean.tau_s;
            let a = simulate_sequence(&clean).unwrap();
            let b = simulate_sequence(&noisy).unwrap();
            assert!((a.jz - b.jz).abs() < 1e-10);
            assert!((a.jx2 - b.jx2).abs() < 1e-10);
            assert!((a.jy2 - b.jy2).abs() < 1e-10);
            assert!((a.jxjy_sym - b.jxjy_sym).abs() < 1e-10);
        }
    }

    #[test]
    fn capacity_error_beyond_twelve() {
        let n = 13;
        let spec = SequenceSpec::new(vec![vec![0.0; n]; n], 1e-4);
        assert!(matches!(
            simulate_sequence(&spec),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn asymmetric_couplings_rejected() {
        let mut couplings = vec![vec![0.0; 3]; 3];
        couplings[0][1] = 1.0;
        let spec = SequenceSpec::new(couplings, 1e-4);
        assert!(simulate_sequence(&spec).is_err());
    }
}
