//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them).  The slow stability
//! crossover is `#[ignore]`d; run it with `cargo test -- --ignored`.

use std::sync::OnceLock;
use std::time::Instant;

use rydsqueeze::correlator::{
    all_to_all_from_phase, correlators_exact, correlators_from_phases, correlators_heaviside_1d,
    CorrelatorOptions, InteractionGraph, PhaseMatrix,
};
use rydsqueeze::ensemble::{
    geometry_sweep, run_ensemble, ClockSpec, EnsembleMode, EnsembleSpec, GeometryCase,
    GeometryFill,
};
use rydsqueeze::fits::{
    fixed_params_from_fits, tau_fit, tau_fit_half_filling, theta_fit, xi2_fit, FitInputs,
};
use rydsqueeze::geometry::{build_lattice, fill_full, LatticeSpec};
use rydsqueeze::interaction::defects::{forster_defect, QuantumDefectTable};
use rydsqueeze::interaction::{derived_params, DressingParams, PotentialModel};
use rydsqueeze::oracle::{simulate_sequence, SequenceSpec};
use rydsqueeze::rng::SplitMix64;
use rydsqueeze::squeezing::{
    all_to_all_optimum, golden_section, optimize_tau, theta_min, xi2, xi2_min_of, TauScanSpec,
};

const LATTICE_CONSTANT: f64 = 406.5e-9;

fn params_rc(rc: f64) -> DressingParams<f64> {
    DressingParams::example_sr88().with_rc_over_a(rc, LATTICE_CONSTANT)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn dense_random_couplings(n: usize, rng: &mut SplitMix64, scale: f64) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = scale * (0.05 + 0.95 * rng.next_f64());
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

fn exact_from_dense(couplings: &[Vec<f64>], tau: f64) -> rydsqueeze::Correlators64 {
    let n = couplings.len();
    let mut list = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            list.push((i, j, couplings[i][j]));
        }
    }
    let graph =
        InteractionGraph::from_couplings(n, &list, tau, &CorrelatorOptions::default()).unwrap();
    let pm = PhaseMatrix::new(&graph, tau).unwrap();
    correlators_from_phases(&pm)
}

/// The flagship ensemble (M = 1000, R_c/a = 9, P = 0.5, 50 per-trial
/// optimized trials), shared by criteria 6 and 7.
fn flagship_ensemble() -> &'static rydsqueeze::EnsembleStats64 {
    static STATS: OnceLock<rydsqueeze::EnsembleStats64> = OnceLock::new();
    STATS.get_or_init(|| {
        let spec = EnsembleSpec::new(
            LatticeSpec::chain(1000, LATTICE_CONSTANT).unwrap(),
            0.5,
            50,
            0x5172_2020,
        );
        run_ensemble(&spec, PotentialModel::SoftCoreVdW, &params_rc(9.0)).unwrap()
    })
}

#[test]
fn c01_oracle_equivalence() {
    let t0 = Instant::now();
    let mut rng = SplitMix64::new(0xACCE9701);
    for case in 0..50 {
        let n = 2 + (rng.next_u64() % 9) as usize; // 2..=10
        let couplings = dense_random_couplings(n, &mut rng, 1000.0);
        let tau = (0.05 + 1.5 * rng.next_f64()) * 1e-3;
        let analytic = exact_from_dense(&couplings, tau);
        let oracle = simulate_sequence(&SequenceSpec::new(couplings, tau)).unwrap();
        for (name, a, b) in [
            ("jz", analytic.jz, oracle.jz),
            ("jx2", analytic.jx2, oracle.jx2),
            ("jy2", analytic.jy2, oracle.jy2),
            ("cross", analytic.jxjy_sym, oracle.jxjy_sym),
        ] {
            assert!(
                rel(a, b) < 1e-10,
                "case {case} (N={n}): {name} analytic {a} vs oracle {b}"
            );
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 60, "runtime {dt:?} exceeds 1 min");
    println!("[acceptance] criterion 1 (oracle equivalence, 50 cases N in [2,10]): PASS ({dt:?})");
}

#[test]
fn c02_echo_cancellation() {
    let mut rng = SplitMix64::new(0xACCE9702);
    for case in 0..50 {
        let n = 2 + (rng.next_u64() % 9) as usize;
        let couplings = dense_random_couplings(n, &mut rng, 1000.0);
        let tau = (0.05 + 1.5 * rng.next_f64()) * 1e-3;
        let clean = SequenceSpec::new(couplings.clone(), tau);
        let mut noisy = clean.clone();
        for d in noisy.onsite_detunings.iter_mut() {
            *d = 10_000.0 * (2.0 * rng.next_f64() - 1.0);
        }
        let a = simulate_sequence(&clean).unwrap();
        let b = simulate_sequence(&noisy).unwrap();
        assert!((a.jz - b.jz).abs() < 1e-10, "case {case}: jz");
        assert!((a.jx2 - b.jx2).abs() < 1e-10, "case {case}: jx2");
        assert!((a.jy2 - b.jy2).abs() < 1e-10, "case {case}: jy2");
        assert!(
            (a.jxjy_sym - b.jxjy_sym).abs() < 1e-10,
            "case {case}: cross"
        );
    }
    println!("[acceptance] criterion 2 (echo cancels on-site detunings, 50 cases): PASS");
}

#[test]
fn c03_two_atom_closed_form() {
    // xi^2(phi) = 1/(1 + sin phi) along the direct evaluation path.  The
    // grid skirts |phi - pi/2| < 0.12 where 1 - sin(phi) itself cannot be
    // formed to 1e-12 in double precision.
    let v = 800.0;
    for k in 0..120 {
        let phi = 0.05 + 3.0 * k as f64 / 120.0;
        if (phi - std::f64::consts::FRAC_PI_2).abs() < 0.12 {
            continue;
        }
        let tau = 2.0 * phi / v;
        let c = exact_from_dense(&[vec![0.0, v], vec![v, 0.0]], tau);
        let got = xi2(&c, theta_min(&c)).unwrap();
        let phi_eff = v * tau / 2.0;
        let expected = 1.0 / (1.0 + phi_eff.sin());
        assert!(
            (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
            "phi={phi}: {got} vs {expected}"
        );
    }
    // Minimum 0.5 at phi = pi/2, through the optimizer (window brackets
    // the first of the pi-periodic minima).
    let a = LATTICE_CONSTANT;
    let p = params_rc(9.0);
    let cfg = fill_full(&build_lattice(&LatticeSpec::chain(2, a).unwrap()).unwrap());
    let v_pair = rydsqueeze::interaction::v_softcore(a, &p).unwrap();
    let scan = TauScanSpec::up_to(1.8 * std::f64::consts::PI / v_pair);
    let res = optimize_tau(&cfg, PotentialModel::SoftCoreVdW, &p, &scan).unwrap();
    let tau_expected = std::f64::consts::PI / v_pair;
    assert!((res.xi2_min - 0.5).abs() < 1e-5, "xi2 {}", res.xi2_min);
    assert!(
        (res.tau_opt_s - tau_expected).abs() < 2e-3 * tau_expected,
        "tau {} vs {}",
        res.tau_opt_s,
        tau_expected
    );
    println!("[acceptance] criterion 3 (two-atom closed form + 0.5 minimum at phi=pi/2): PASS");
}

#[test]
fn c04_heaviside_closed_form() {
    let t0 = Instant::now();
    let mut rng = SplitMix64::new(0xACCE9704);
    for m in [50usize, 100, 500] {
        for r in [2u32, 5, 9] {
            let p = params_rc(r as f64);
            let d = derived_params(&p).unwrap();
            let cfg = fill_full(
                &build_lattice(&LatticeSpec::chain(m, LATTICE_CONSTANT).unwrap()).unwrap(),
            );
            for _ in 0..3 {
                let phi0 = 0.01 + 2.8 * rng.next_f64();
                let tau = 2.0 * phi0 / d.v0_rad;
                let direct =
                    correlators_exact(&cfg, PotentialModel::Heaviside, &p, tau).unwrap();
                let closed = correlators_heaviside_1d(m as u64, r, phi0).unwrap();
                assert!(rel(direct.jz, closed.jz) < 1e-9, "M={m} R={r} phi0={phi0}");
                assert!(
                    rel(direct.jx2, closed.jx2) < 1e-9,
                    "M={m} R={r} phi0={phi0}"
                );
                assert!(
                    rel(direct.jxjy_sym, closed.jxjy_sym) < 1e-9,
                    "M={m} R={r} phi0={phi0}"
                );
                assert_eq!(direct.jy2, closed.jy2);
            }
        }
    }
    // Size dependence of the optimized squeezing at R_c/a = 9: the exact
    // gap between M = 1e3 and M = 1e6 is 2.380e-3, an edge effect decaying
    // as 2.38/M (the 2R/M edge atoms have fewer partners).  Freeze it.
    let big = heaviside_xi2_min(1_000_000, 9);
    let small = heaviside_xi2_min(1_000, 9);
    let gap = (big - small).abs();
    assert!(
        (gap - 2.380e-3).abs() < 2e-5,
        "M=1e3 vs M=1e6 gap moved: {gap:.4e} (xi2 {small:.8} vs {big:.8})"
    );
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 60, "runtime {dt:?} exceeds 1 min");
    println!("[acceptance] criterion 4 (Heaviside closed form == direct sum; frozen size gap {gap:.3e}): PASS ({dt:?})");
}

fn heaviside_xi2_min(m: u64, r: u32) -> f64 {
    let f = |phi0: f64| {
        let c = correlators_heaviside_1d(m, r, phi0).unwrap();
        xi2_min_of(&c)
    };
    golden_section(f, 1e-6, 1.5, 1e-11).1
}

/// KNOWN RED — spec defect, kept as stated.
///
/// The stated bound (optimized Heaviside squeezing at M = 1e6 within 1e-3
/// of M = 1e3 at R_c/a = 9) is mathematically unattainable: the closed
/// form, verified against brute-force pairwise sums to 1e-14 up to
/// M = 2000, gives xi2(1e3) = 0.192697 and xi2(1e6) = 0.190317, a gap of
/// 2.380e-3 scaling as 2.38/M (lattice-edge atoms have fewer partners).
/// "Almost invariant to the lattice size" holds at plot resolution, not
/// at 1e-3 absolute for this radius (the bound does hold at R_c/a = 2,
/// where the gap is 6.98e-4).
#[test]
fn c04b_size_invariance_as_stated() {
    let big = heaviside_xi2_min(1_000_000, 9);
    let small = heaviside_xi2_min(1_000, 9);
    assert!(
        (big - small).abs() < 1e-3,
        "spec defect (see decisions ledger): |xi2(1e6) - xi2(1e3)| = {:.4e} at R_c/a = 9; \
         the true edge-effect gap is 2.380e-3 ~ 2.38/M and no evaluation of the stated \
         quantity can land under 1e-3",
        (big - small).abs()
    );
}

#[test]
fn c05_all_to_all_closed_form() {
    let mut rng = SplitMix64::new(0xACCE9705);
    for n in [2usize, 3, 8, 25, 60, 120, 200] {
        let v0 = 700.0;
        let phi = 0.02 + 1.2 * rng.next_f64();
        let tau = 2.0 * phi / v0;
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dense[i][j] = v0;
                }
            }
        }
        let direct = exact_from_dense(&dense, tau);
        let closed = rydsqueeze::correlator::correlators_all_to_all(n as u64, v0, tau);
        assert!(rel(direct.jz, closed.jz) < 1e-12, "N={n}");
        assert!(rel(direct.jx2, closed.jx2) < 1e-12, "N={n}");
        assert!(rel(direct.jxjy_sym, closed.jxjy_sym) < 1e-12, "N={n}");
    }
    // Monotone improvement with N.  Starts at N = 3: the N = 2 optimum of
    // 0.5 is the over-wound boundary limit (mean spin -> 0), which sits
    // below the interior N = 3 optimum of about 0.580.
    let mut prev = f64::INFINITY;
    for n in 3..=200u64 {
        let (_, v) = all_to_all_optimum::<f64>(n);
        assert!(v <= prev + 1e-12, "not monotone at N={n}");
        prev = v;
    }
    println!("[acceptance] criterion 5 (all-to-all closed form to N=200 + monotone bound): PASS");
}

#[test]
fn c06_optimal_time_flagship() {
    let t0 = Instant::now();
    let stats = flagship_ensemble();
    let mean_tau = stats.mean_tau_s;
    assert!(
        (mean_tau - 340e-6).abs() <= 0.1 * 340e-6,
        "<tau_opt> = {mean_tau:.4e}, want 340 us within 10%"
    );
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 1800, "runtime {dt:?} exceeds 30 min");
    println!(
        "[acceptance] criterion 6 (<tau_opt> = {:.1} us vs 340 us +-10%): PASS ({dt:?})",
        mean_tau * 1e6
    );
}

#[test]
fn c07_squeezing_and_decay_flagship() {
    let stats = flagship_ensemble();
    let mean_xi2 = stats.xi2.mean;
    let mean_xi2_bar = stats.xi2_bar.mean;
    let d = derived_params(&params_rc(9.0)).unwrap();
    let merit = d.tau_tilde_s / stats.mean_tau_s;
    assert!(
        (mean_xi2 - 0.30).abs() <= 0.15 * 0.30,
        "<xi2> = {mean_xi2}, want 0.30 within 15%"
    );
    assert!(
        (mean_xi2_bar - 0.337).abs() <= 0.15 * 0.337,
        "<xi2_bar> = {mean_xi2_bar}, want 0.337 within 15%"
    );
    assert!(
        (merit - 27.1).abs() <= 0.1 * 27.1,
        "merit = {merit}, want 27.1 within 10%"
    );
    println!(
        "[acceptance] criterion 7 (<xi2> = {mean_xi2:.3} vs 0.30; <xi2_bar> = {mean_xi2_bar:.3} vs 0.337; merit = {merit:.1} vs 27.1): PASS"
    );
}

#[test]
fn c08_fit_arithmetic() {
    let at = |rc: f64, x: f64| FitInputs {
        rc_over_a: rc,
        x,
        m_sites: 1000,
    };
    assert!((xi2_fit(&at(9.0, 0.5)).value - 0.305).abs() < 1e-3);
    assert!((tau_fit(&at(9.0, 0.5)).unwrap().value - 0.4276).abs() < 1e-3);
    assert!((theta_fit(9.0f64) - (-1.1233)).abs() < 1e-3);
    assert!((xi2_fit(&at(9.0, 1e-12)).value - 1.0).abs() < 1e-9);
    // Fit time in physical units at the reference drive.
    let v0 = derived_params(&params_rc(9.0)).unwrap().v0_rad;
    let tau = tau_fit(&at(9.0, 0.5)).unwrap().value / v0;
    assert!((tau - 340e-6).abs() < 1e-6);
    // Printed half-filling specialization vs the general form, 1% over the
    // whole radius range.
    let mut rc = 1.0f64;
    while rc <= 30.0 {
        let general = tau_fit(&at(rc, 0.5)).unwrap().value;
        let printed = tau_fit_half_filling(rc);
        assert!((general - printed).abs() <= 0.01 * general, "rc = {rc}");
        rc += 0.1;
    }
    println!("[acceptance] criterion 8 (fit arithmetic + half-filling identity): PASS");
}

#[test]
fn c09_filling_trend_and_bracketing() {
    let t0 = Instant::now();
    let p = params_rc(5.0);
    let mut means = Vec::new();
    let mut bounds: std::collections::BTreeMap<u64, f64> = Default::default();
    for (k, p_fill) in [0.25, 0.5, 0.75, 1.0].into_iter().enumerate() {
        let spec = EnsembleSpec::new(
            LatticeSpec::chain(400, LATTICE_CONSTANT).unwrap(),
            p_fill,
            30,
            0x0900 + k as u64,
        );
        let stats = run_ensemble(&spec, PotentialModel::SoftCoreVdW, &p).unwrap();
        means.push(stats.xi2.mean);
        for r in &stats.records {
            if r.degenerate {
                continue;
            }
            let bound = *bounds
                .entry(r.n_atoms)
                .or_insert_with(|| all_to_all_optimum::<f64>(r.n_atoms).1);
            assert!(
                r.xi2_min >= bound - 1e-9,
                "trial {} (N={}): xi2 {} below the all-to-all bound {}",
                r.trial_index,
                r.n_atoms,
                r.xi2_min,
                bound
            );
        }
    }
    for w in means.windows(2) {
        assert!(
            w[1] < w[0],
            "mean xi2 not strictly decreasing with filling: {means:?}"
        );
    }
    println!(
        "[acceptance] criterion 9 (mean xi2 strictly decreasing over P, all trials above the all-to-all bound): PASS ({:?}, means {:?})",
        t0.elapsed(),
        means
    );
}

#[test]
fn c10_fixed_parameter_operation() {
    let t0 = Instant::now();
    let p = params_rc(9.0);
    let d = derived_params(&p).unwrap();
    let lattice = LatticeSpec::chain(1000, LATTICE_CONSTANT).unwrap();
    let seed = 0x0A10;

    let optimized = run_ensemble(
        &EnsembleSpec::new(lattice.clone(), 0.5, 30, seed),
        PotentialModel::SoftCoreVdW,
        &p,
    )
    .unwrap();

    let fixed = fixed_params_from_fits(9.0, d.v0_rad)
        .unwrap()
        .in_minimizer_convention();
    let mut spec = EnsembleSpec::new(lattice, 0.5, 30, seed);
    spec.mode = EnsembleMode::FixedParams {
        tau_s: fixed.tau_s,
        theta_rad: fixed.theta_rad,
    };
    let fixed_stats = run_ensemble(&spec, PotentialModel::SoftCoreVdW, &p).unwrap();

    let degradation = fixed_stats.xi2.mean / optimized.xi2.mean - 1.0;
    assert!(
        degradation <= 0.05,
        "fixed-parameter degradation {:.2}% exceeds 5% (fixed {}, optimized {})",
        degradation * 100.0,
        fixed_stats.xi2.mean,
        optimized.xi2.mean
    );
    println!(
        "[acceptance] criterion 10 (fixed (tau, theta) degrade mean xi2 by {:.2}% <= 5%): PASS ({:?})",
        degradation * 100.0,
        t0.elapsed()
    );
}

#[test]
fn c11_detuning_study() {
    let t0 = Instant::now();
    let base = params_rc(9.0);
    let cfg = fill_full(
        &build_lattice(&LatticeSpec::chain(200, LATTICE_CONSTANT).unwrap()).unwrap(),
    );
    let mut xi2s = Vec::new();
    let mut inv_merits = Vec::new();
    for ratio in [20.0, 16.0, 12.0, 10.0, 8.0] {
        let mut p = base;
        p.delta_rad = -ratio * p.omega_r_rad;
        let d = derived_params(&p).unwrap();
        let scan = TauScanSpec::auto_for(&cfg, PotentialModel::SoftCoreVdW, &p).unwrap();
        let r = optimize_tau(&cfg, PotentialModel::SoftCoreVdW, &p, &scan).unwrap();
        xi2s.push(r.xi2_min);
        inv_merits.push(r.tau_opt_s / d.tau_tilde_s);
    }
    for w in xi2s.windows(2) {
        assert!(w[1] < w[0], "xi2 not decreasing with |Delta|: {xi2s:?}");
    }
    for w in inv_merits.windows(2) {
        assert!(
            w[1] < w[0],
            "tau_opt/tau_tilde not decreasing with |Delta|: {inv_merits:?}"
        );
    }
    println!(
        "[acceptance] criterion 11 (xi2 and tau_opt/tau_tilde decrease as |Delta|/Omega drops 20 -> 8): PASS ({:?})",
        t0.elapsed()
    );
}

#[test]
fn c12_exact_potential_convergence() {
    let t0 = Instant::now();
    let cfg = fill_full(
        &build_lattice(&LatticeSpec::chain(200, LATTICE_CONSTANT).unwrap()).unwrap(),
    );
    let p_soft = params_rc(9.0);
    let scan = TauScanSpec::auto_for(&cfg, PotentialModel::SoftCoreVdW, &p_soft).unwrap();
    let soft = optimize_tau(&cfg, PotentialModel::SoftCoreVdW, &p_soft, &scan).unwrap();

    let mut deviations = Vec::new();
    for defect_hz in [1.26e9, 100e6, 10e6] {
        let p = params_rc(9.0)
            .with_forster_defect_keeping_c6(-std::f64::consts::TAU * defect_hz)
            .unwrap();
        let scan = TauScanSpec::auto_for(&cfg, PotentialModel::ExactDipoleDipole, &p).unwrap();
        let exact = optimize_tau(&cfg, PotentialModel::ExactDipoleDipole, &p, &scan).unwrap();
        deviations.push((exact.xi2_min - soft.xi2_min).abs());
    }
    assert!(
        deviations[0] <= 0.05 * soft.xi2_min,
        "xi2 deviation {} at the 1.26 GHz defect exceeds 5% of {}",
        deviations[0],
        soft.xi2_min
    );
    assert!(
        deviations[0] < deviations[1] && deviations[1] < deviations[2],
        "deviations not growing as the defect shrinks: {deviations:?}"
    );
    println!(
        "[acceptance] criterion 12 (exact potential within 5% at delta=-1.26 GHz, deviation grows as delta shrinks): PASS ({:?}, deviations {deviations:?})",
        t0.elapsed()
    );
}

/// Slow (about half an hour): run explicitly with
/// `cargo test -p rydsqueeze --test acceptance -- --ignored --nocapture`.
#[test]
#[ignore = "slow stability crossover at M = 4000; run with -- --ignored"]
fn c13_stability_crossover_slow() {
    let t0 = Instant::now();
    let p = params_rc(9.0);
    let clock = ClockSpec::default();
    // Half-filled M = 4000 lattice versus a rearranged tweezer array at
    // the laser-power bound of ~1e3 traps.  (A gapless array with the
    // lattice's full atom number would always win by the compaction lower
    // bound; the crossover claim is against the bounded tweezer count.)
    let cases = vec![
        GeometryCase {
            label: "lattice-1d-half-filled".into(),
            lattice: LatticeSpec::chain(4000, LATTICE_CONSTANT).unwrap(),
            fill: GeometryFill::Random { p_fill: 0.5 },
        },
        GeometryCase {
            label: "tweezer-1d-cap".into(),
            lattice: LatticeSpec::chain(1000, LATTICE_CONSTANT).unwrap(),
            fill: GeometryFill::Compacted { n_atoms: 1000 },
        },
        GeometryCase {
            label: "tweezer-1d-matched-n".into(),
            lattice: LatticeSpec::chain(2000, LATTICE_CONSTANT).unwrap(),
            fill: GeometryFill::Compacted { n_atoms: 2000 },
        },
    ];
    let rows = geometry_sweep(&cases, PotentialModel::SoftCoreVdW, &p, 12, 0x0D13, &clock).unwrap();
    for r in &rows {
        println!(
            "[acceptance]   {}: N = {:.0}, xi2_bar = {:.4}, sigma = {:.4e}",
            r.label, r.mean_n_atoms, r.mean_xi2_bar, r.sigma
        );
    }
    assert!(
        rows[0].sigma < rows[1].sigma,
        "half-filled lattice sigma {} does not beat the tweezer cap {}",
        rows[0].sigma,
        rows[1].sigma
    );
    println!(
        "[acceptance] criterion 13 (M=4000 half-filled beats the 1e3-trap tweezer array): PASS ({:?})",
        t0.elapsed()
    );
}

#[test]
fn c14_forster_pipeline() {
    // Hydrogenic analytic case, exact.
    let table = QuantumDefectTable::hydrogenic();
    let e_h = table.hartree_energy_j;
    for n in [10u32, 34, 55] {
        let d = forster_defect(n, &table).unwrap();
        let expected = -(e_h / (2.0 * rydsqueeze::constants::HBAR))
            * (1.0 / ((n - 1) as f64).powi(2) - 1.0 / (n as f64).powi(2));
        for j in 0..3 {
            assert!(rel(d.delta_j_rad[j], expected) < 1e-12);
        }
        assert!(rel(d.delta_weighted_rad, expected) < 1e-12);
    }
    // Weighted average bounded by the channels (external example data).
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/sr88_quantum_defects.txt"
    );
    let table = QuantumDefectTable::from_file(std::path::Path::new(path)).unwrap();
    let d = forster_defect(55, &table).unwrap();
    let lo = d.delta_j_rad.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = d
        .delta_j_rad
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(d.delta_weighted_rad >= lo && d.delta_weighted_rad <= hi);
    // Informational: with the shipped example coefficients the weighted
    // 5s55s defect lands near -1.26 GHz.
    println!(
        "[acceptance] criterion 14 (Foerster pipeline): PASS — weighted delta(55) = {:.4} GHz (literature-derived example data; informational)",
        d.delta_weighted_rad / std::f64::consts::TAU / 1e9
    );
}
