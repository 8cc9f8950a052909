//! Exact dressed dipole-dipole pair potential.
//!
//! For two driven atoms the symmetric two-excitation ladder
//! `{|ee>, (|er>+|re>)/sqrt(2), |rr>}` has the Hamiltonian (over hbar)
//!
//! ```text
//!     [ 0        w        0              ]
//!     [ w       -Delta    w              ]      w = Omega_r / sqrt(2),
//!     [ 0        w       -2 Delta + Vdd  ]
//! ```
//!
//! with the full dipole-dipole interaction of the doubly excited state
//!
//! ```text
//! Vdd(r) = delta/2 - (delta/2) sqrt(1 + (x_c/r)^6),
//! ```
//!
//! which crosses over from `1/r^3` at short range to the van der Waals
//! `-delta/4 (x_c/r)^6 = C6/r^6` tail.  The dressed pair shift is the
//! eigenvalue adiabatically connected to `|ee>` minus twice the single-atom
//! dressed shift (the two-level eigenvalue connected to `|e>`), so it
//! vanishes for non-interacting atoms.
//!
//! The closed form below is the Cardano solution of the ladder's
//! characteristic cubic.  Its radical is branch-ambiguous on paper, so we
//! evaluate all three root assignments with principal complex roots and
//! keep the one matching the (unambiguous) matrix eigenvalue; a mismatch
//! beyond tolerance is reported as a numerical-branch error.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::interaction::DressingParams;
use crate::real::{real, Real};

/// Relative tolerance for accepting a closed-form root as real and as
/// matching the ladder eigenvalue.
const BRANCH_REL_TOL: f64 = 1e-6;

/// Dipole-dipole interaction of the doubly excited pair state, rad/s.
pub fn v_dd<F: Real>(r_m: F, forster_delta_rad: F, x_c_m: F) -> F {
    let u = (x_c_m / r_m).powi(6);
    let half = forster_delta_rad / real::<F>(2.0);
    half - half * (F::one() + u).sqrt()
}

/// Single-atom dressed shift of `|e>`: the two-level eigenvalue that goes
/// to zero as the drive is switched off.
pub fn single_dressed_shift<F: Real>(delta_rad: F, omega_rad: F) -> F {
    let root = (delta_rad * delta_rad + omega_rad * omega_rad).sqrt();
    let signed = if delta_rad > F::zero() { root } else { -root };
    (-delta_rad + signed) / real(2.0)
}

/// Eigenvalue of the two-atom ladder adiabatically connected to `|ee>`
/// (maximal eigenvector overlap), rad/s.
pub fn ladder_pair_eigenvalue<F: Real>(delta_rad: F, omega_rad: F, vdd_rad: F) -> F {
    let w = omega_rad / real::<F>(2.0).sqrt();
    let d = [F::zero(), -delta_rad, -(real::<F>(2.0) * delta_rad) + vdd_rad];
    let mut eigs = sym_tridiag_eigenvalues(d, w);
    // The trigonometric form also cancels near-zero eigenvalues out of
    // large invariants; polish on the characteristic cubic.
    let (ca, cb, cc) = char_cubic(delta_rad, omega_rad, vdd_rad);
    for e in eigs.iter_mut() {
        for _ in 0..2 {
            let p = ((*e + ca) * *e + cb) * *e + cc;
            let dp = (*e * real::<F>(3.0) + ca * real(2.0)) * *e + cb;
            if dp != F::zero() {
                *e = *e - p / dp;
            }
        }
    }
    // Overlap of the eigenvector with |ee>: for a tridiagonal matrix the
    // unnormalized eigenvector at eigenvalue E is
    //   (w^2, w (E - d0), (E - d1)(E - d0) - w^2).
    let mut best = eigs[0];
    let mut best_overlap = F::neg_infinity();
    for &e in &eigs {
        let v0 = w * w;
        let v1 = w * (e - d[0]);
        let v2 = (e - d[1]) * (e - d[0]) - w * w;
        let overlap = v0 * v0 / (v0 * v0 + v1 * v1 + v2 * v2);
        if overlap > best_overlap {
            best_overlap = overlap;
            best = e;
        }
    }
    best
}

/// Eigenvalues of the symmetric tridiagonal 3x3 with diagonal `d` and
/// off-diagonal `w`, via the trigonometric closed form (all roots real).
fn sym_tridiag_eigenvalues<F: Real>(d: [F; 3], w: F) -> [F; 3] {
    let three = real::<F>(3.0);
    let q = (d[0] + d[1] + d[2]) / three;
    let p1 = real::<F>(2.0) * w * w;
    let p2 = (d[0] - q).powi(2) + (d[1] - q).powi(2) + (d[2] - q).powi(2)
        + real::<F>(2.0) * p1;
    if p2 == F::zero() {
        return [q, q, q];
    }
    let p = (p2 / real::<F>(6.0)).sqrt();
    // det((A - qI)/p) / 2 for the tridiagonal form.
    let b = [(d[0] - q) / p, (d[1] - q) / p, (d[2] - q) / p];
    let u = w / p;
    let det = b[0] * b[1] * b[2] - b[0] * u * u - b[2] * u * u;
    let r = (det / real::<F>(2.0)).max(-F::one()).min(F::one());
    let phi = r.acos() / three;
    let two_pi_3 = F::TAU() / three;
    let e_hi = q + real::<F>(2.0) * p * phi.cos();
    let e_lo = q + real::<F>(2.0) * p * (phi + two_pi_3).cos();
    let e_mid = three * q - e_hi - e_lo;
    [e_hi, e_mid, e_lo]
}

/// Coefficients of the monic characteristic cubic
/// `E^3 + a E^2 + b E + c` of the ladder.
fn char_cubic<F: Real>(delta_rad: F, omega_rad: F, vdd_rad: F) -> (F, F, F) {
    let d = delta_rad;
    let v = vdd_rad;
    let o2 = omega_rad * omega_rad;
    (
        real::<F>(3.0) * d - v,
        real::<F>(2.0) * d * d - d * v - o2,
        o2 * (v / real(2.0) - d),
    )
}

/// The three Cardano roots of the ladder's characteristic cubic, evaluated
/// with principal complex roots.
///
/// The radical cancels catastrophically once `|V_dd| >> |Delta|`, so each
/// root gets two Newton steps on the characteristic cubic; for the
/// well-separated roots of this problem that restores full precision.
pub fn cardano_roots<F: Real>(delta_rad: F, omega_rad: F, vdd_rad: F) -> [Complex<F>; 3] {
    let two = real::<F>(2.0);
    let three = real::<F>(3.0);
    let d = delta_rad;
    let v = vdd_rad;
    let o2 = omega_rad * omega_rad;

    // Mean eigenvalue and the invariant combinations of the cubic.
    let mean = -d + v / three;
    let big_d = three * d * d - three * d * v + v * v + three * o2;
    let g = v * (real::<F>(18.0) * d * d - real::<F>(18.0) * d * v + real::<F>(4.0) * v * v
        - real::<F>(9.0) * o2);

    let disc = Complex::new(g * g - real::<F>(16.0) * big_d.powi(3), F::zero());
    let f = (Complex::new(g, F::zero()) + disc.sqrt()).cbrt();

    let c1 = two.powf(two / three) * (big_d / three);
    let c2 = two.powf(F::one() / three) / real::<F>(6.0);
    let omega_cube = Complex::from_polar(F::one(), F::TAU() / three);

    let (ca, cb, cc) = char_cubic(delta_rad, omega_rad, vdd_rad);
    let mut roots = [Complex::new(F::zero(), F::zero()); 3];
    let mut fk = f;
    for root in roots.iter_mut() {
        let mut z = Complex::new(mean, F::zero()) + Complex::new(c1, F::zero()) / fk
            + Complex::new(c2, F::zero()) * fk;
        for _ in 0..2 {
            let p = ((z + ca) * z + cb) * z + cc;
            let dp = (z * real::<F>(3.0) + ca * two) * z + cb;
            if dp.norm_sqr() > F::zero() {
                z = z - p / dp;
            }
        }
        *root = z;
        fk = fk * omega_cube;
    }
    roots
}

/// Exact dressed pair shift `V(r)/hbar`, rad/s.
///
/// Evaluates the closed form, selects the root matching the ladder
/// eigenvalue connected to `|ee>`, verifies it is real, and subtracts twice
/// the single-atom dressed shift.
pub fn v_exact<F: Real>(r_m: F, p: &DressingParams<F>) -> Result<F> {
    p.validate()?;
    let (delta, xc) = match (p.forster_delta_rad, p.x_c_m) {
        (Some(d), Some(x)) => (d, x),
        _ => {
            return Err(Error::Config(
                "exact dressed potential requires the Foerster defect and x_c".into(),
            ))
        }
    };
    if !(r_m > F::zero()) {
        return Err(Error::Domain(
            "exact dressed potential requires r > 0".into(),
        ));
    }
    let vdd = v_dd(r_m, delta, xc);
    let pair = ladder_pair_eigenvalue(p.delta_rad, p.omega_r_rad, vdd);
    let roots = cardano_roots(p.delta_rad, p.omega_r_rad, vdd);

    // Scale for relative comparisons: the eigenvalue is never smaller than
    // the quadratic dressed shift.
    let o = p.omega_r_rad;
    let scale = pair
        .abs()
        .max(o * o / (real::<F>(2.0) * (o + p.delta_rad.abs())));
    let tol = real::<F>(BRANCH_REL_TOL).max(F::epsilon() * real(1e3));

    let mut selected: Option<F> = None;
    let mut best_err = F::infinity();
    for root in roots {
        if root.im.abs() > tol * root.re.abs().max(scale) {
            continue;
        }
        let err = (root.re - pair).abs();
        if err < best_err {
            best_err = err;
            selected = Some(root.re);
        }
    }
    match selected {
        Some(e) if best_err <= tol * scale => {
            Ok(e - real::<F>(2.0) * single_dressed_shift(p.delta_rad, p.omega_r_rad))
        }
        _ => Err(Error::NumericalBranch {
            r_m: r_m.to_f64().unwrap_or(f64::NAN),
            delta_rad: delta.to_f64().unwrap_or(f64::NAN),
            omega_rad: p.omega_r_rad.to_f64().unwrap_or(f64::NAN),
        }),
    }
}
