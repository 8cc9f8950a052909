//! Closed-form correlators for the Heaviside potential on a fully filled
//! 1D lattice.
//!
//! With a step potential of integer radius `R` sites, every phase is either
//! `phi0 = V0 tau / (2 hbar)` or zero, so the pairwise sums collapse into
//! counts of interacting neighbors.  An atom at depth `i` from an edge has
//! `min(i-1, R) + min(M-i, R)` partners; for a pair separated by `s` sites
//! the transverse-variance bracket reduces to
//!
//! ```text
//! cos(phi0)^u * (1 - cos(2 phi0)^b),
//! ```
//!
//! where `b` counts atoms interacting with both pair members and `u` those
//! interacting with exactly one.  Bulk atoms and bulk pairs contribute in
//! closed multiplicity `(M - 2R)` resp. `(M - 2R - s)`, and the `O(R^2)`
//! pairs near the two edges are summed directly, so the evaluation cost is
//! independent of the lattice size.  All terms are plain powers of
//! cosines: the geometric-ratio singularities of the equivalent
//! ratio-form expressions never arise.
//!
//! Valid for `M >= 2 R` (the two edge regions must not overlap).

use crate::error::{Error, Result};
use crate::real::{real, Real};

use super::Correlators;

/// Closed-form correlators for a fully filled `m_sites` chain under a
/// Heaviside potential of radius `rc_over_a` sites, at pair phase `phi0`.
pub fn correlators_heaviside_1d<F: Real>(
    m_sites: u64,
    rc_over_a: u32,
    phi0: F,
) -> Result<Correlators<F>> {
    if rc_over_a < 1 {
        return Err(Error::Domain("interaction radius must be >= 1 site".into()));
    }
    let r = rc_over_a as u64;
    if m_sites < 2 * r {
        return Err(Error::Domain(format!(
            "Heaviside closed form needs M >= 2 R_c/a (M = {m_sites}, R_c/a = {r})"
        )));
    }
    if m_sites > (1u64 << 53) {
        return Err(Error::Capacity(
            "site count exceeds exact integer range of the scalar".into(),
        ));
    }

    let n = real::<F>(m_sites as f64);
    let rf = real::<F>(r as f64);
    let c = phi0.cos();
    let s = phi0.sin();
    let c2 = (phi0 + phi0).cos();
    let bulk_atoms = n - real::<F>(2.0) * rf;

    // <Jz>: bulk atoms have 2R partners; edge atoms at depth i in 1..=R
    // have R + i - 1 on each side.
    let mut edge_cos = F::zero();
    let mut edge_cross = F::zero();
    let mut pw = c.powi(r as i32 - 1); // c^(m-1) running power, m = R..2R-1
    for m in r..(2 * r) {
        edge_cross = edge_cross + real::<F>(m as f64) * pw;
        pw = pw * c;
        edge_cos = edge_cos + pw; // c^m
    }
    let c_2r = c.powi(2 * r as i32);
    let c_2rm1 = c.powi(2 * r as i32 - 1);
    let jz = -(bulk_atoms * c_2r + real::<F>(2.0) * edge_cos) / real(2.0);

    // <{Jx,Jy}>: each atom with n_i partners contributes n_i c^(n_i - 1);
    // the phase factor sin(phi0) is common to every interacting pair.
    let jxjy_sym = -s * (rf * bulk_atoms * c_2rm1 + edge_cross);

    // <Jx^2>: pair bracket c^u (1 - c2^b) summed over separations and the
    // edge pairs.
    let mut bracket = F::zero();
    let ru = r;
    let max_sep = 2 * ru;
    for sep in 1..=max_sep {
        // Bulk pairs: i >= R+1 and j = i+sep <= M-R.
        if m_sites < 2 * ru + sep {
            break;
        }
        let count = real::<F>((m_sites - 2 * ru - sep) as f64);
        let (b, u) = bulk_overlap(ru, sep);
        if b > 0 {
            bracket = bracket
                + count * c.powi(u as i32) * (F::one() - c2.powi(b as i32));
        }
    }
    // Edge pairs: left block i <= R, and right block j > M - R excluding
    // pairs already counted on the left.
    let m = m_sites;
    for i in 1..=ru.min(m - 1) {
        let j_hi = (i + max_sep).min(m);
        for j in (i + 1)..=j_hi {
            let (b, u) = pair_overlap(m, ru, i, j);
            if b > 0 {
                bracket =
                    bracket + c.powi(u as i32) * (F::one() - c2.powi(b as i32));
            }
        }
    }
    for j in (m.saturating_sub(ru) + 1)..=m {
        if j < 2 {
            continue;
        }
        let i_lo = j.saturating_sub(max_sep).max(ru + 1);
        for i in i_lo..j {
            let (b, u) = pair_overlap(m, ru, i, j);
            if b > 0 {
                bracket =
                    bracket + c.powi(u as i32) * (F::one() - c2.powi(b as i32));
            }
        }
    }

    let quarter = n / real(4.0);
    Ok(Correlators {
        jz,
        jx2: quarter + bracket / real(4.0),
        jy2: quarter,
        jxjy_sym,
        n_atoms: m_sites,
    })
}

/// `(b, u)` for a bulk pair of separation `sep`: shared and exclusive
/// neighbor counts.
fn bulk_overlap(r: u64, sep: u64) -> (u64, u64) {
    let union = sep + 2 * r - 1;
    let b = if sep <= r {
        (2 * r + 1 - sep).saturating_sub(2)
    } else {
        2 * r + 1 - sep
    };
    (b, union - b)
}

/// `(b, u)` for an arbitrary pair `(i, j)` on a chain of `m` sites
/// (1-based), radius `r`.
fn pair_overlap(m: u64, r: u64, i: u64, j: u64) -> (u64, u64) {
    debug_assert!(i < j && j <= m);
    let lo_b = j.saturating_sub(r).max(1);
    let hi_b = (i + r).min(m);
    let in_interval = |k: u64| k >= lo_b && k <= hi_b;
    let mut b = if hi_b >= lo_b { hi_b - lo_b + 1 } else { 0 };
    b = b.saturating_sub(in_interval(i) as u64 + in_interval(j) as u64);
    let lo_u = i.saturating_sub(r).max(1);
    let hi_u = (j + r).min(m);
    let union = (hi_u - lo_u + 1).saturating_sub(2);
    (b, union - b)
}
