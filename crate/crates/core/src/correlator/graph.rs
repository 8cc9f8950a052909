//! Interaction graph and phase tables behind the exact correlator sums.
//!
//! Building the graph is the only `O(N^2)` step; it happens once per
//! configuration for the largest squeezing time of interest.  Every
//! per-time evaluation then touches only pairs inside the interaction
//! cutoff, with cosines and sines looked up from tables indexed by the
//! (few) distinct pair distances a lattice produces.
//!
//! Cutoff rule: a pair whose phase `|phi| = |V(r)| tau / 2` falls below
//! `eps_phase` is treated as exactly non-interacting.  Products in the
//! transverse-variance sum then only differ from one through atoms
//! interacting with BOTH pair members, so only pairs within twice the
//! cutoff radius are ever visited.  The neglected factors bias each
//! product by at most `N * eps_phase`.
//!
//! Evaluation parallelizes over atoms / candidate chunks with fixed chunk
//! boundaries and an ordered final reduction, so results are bit-stable
//! across thread counts.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{dist_sq, AtomConfiguration};
use crate::interaction::Potential;
use crate::real::{real, real_of_count, Real};

use super::Correlators;

/// Tuning knobs for the exact correlator evaluation.
#[derive(Clone, Copy, Debug)]
pub struct CorrelatorOptions<F> {
    /// Phase threshold (radians) below which a pair counts as
    /// non-interacting.
    pub eps_phase: F,
}

impl<F: Real> Default for CorrelatorOptions<F> {
    fn default() -> Self {
        Self {
            eps_phase: real(1e-9),
        }
    }
}

/// Distance-deduplicated pair structure of one atom configuration, valid
/// for squeezing times up to `tau_build`.
#[derive(Clone, Debug)]
pub struct InteractionGraph<F> {
    n: usize,
    /// Interaction `V/hbar` (rad/s) per distinct pair distance.
    v_unique: Vec<F>,
    /// Squared distance per entry of `v_unique` (ascending); empty for
    /// graphs built from explicit couplings.
    r2_unique: Vec<F>,
    /// Per atom: `(partner, v index)` for partners inside the build
    /// cutoff, ascending partner index.
    nbrs: Vec<Vec<(u32, u32)>>,
    /// Pairs `i < j` within twice the build cutoff: `(i, j, v index)`.
    candidates: Vec<(u32, u32, u32)>,
    eps_phase: F,
    tau_build: F,
}

impl<F: Real> InteractionGraph<F> {
    /// Build from geometry and a pair potential, serving times up to
    /// `tau_build`.
    pub fn build(
        config: &AtomConfiguration<F>,
        potential: &Potential<F>,
        tau_build: F,
        opts: &CorrelatorOptions<F>,
    ) -> Result<Self> {
        let n = config.n_atoms();
        let eps = opts.eps_phase;
        if !(eps > F::zero()) {
            return Err(Error::Config("eps_phase must be > 0".into()));
        }
        // Interaction threshold on V/hbar for the largest time served.
        let v_thresh = if tau_build > F::zero() {
            real::<F>(2.0) * eps / tau_build
        } else {
            F::infinity()
        };
        let r_cut = cutoff_radius(potential, v_thresh)?;
        let r_cut2 = r_cut * r_cut;
        let r2_max = real::<F>(4.0) * r_cut2;

        // Collect in-range pairs with exact squared distances.
        let mut pair_r2: Vec<(u32, u32, F)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let r2 = dist_sq(&config.positions[i], &config.positions[j]);
                if r2 <= r2_max {
                    pair_r2.push((i as u32, j as u32, r2));
                }
            }
        }

        // Deduplicate distances (bit-exact; near-duplicates from rounding
        // just widen the table harmlessly).
        let mut r2_unique: Vec<F> = pair_r2.iter().map(|&(_, _, r2)| r2).collect();
        r2_unique.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        r2_unique.dedup();
        let v_unique: Vec<F> = r2_unique
            .iter()
            .map(|&r2| potential.v_over_hbar(r2.sqrt()))
            .collect::<Result<_>>()?;

        let mut nbrs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        let mut candidates = Vec::with_capacity(pair_r2.len());
        for &(i, j, r2) in &pair_r2 {
            let vidx = r2_unique
                .binary_search_by(|x| x.partial_cmp(&r2).expect("finite"))
                .expect("deduped distance") as u32;
            candidates.push((i, j, vidx));
            if r2 <= r_cut2 {
                nbrs[i as usize].push((j, vidx));
                nbrs[j as usize].push((i, vidx));
            }
        }
        for list in &mut nbrs {
            list.sort_unstable_by_key(|&(p, _)| p);
        }
        Ok(Self {
            n,
            v_unique,
            r2_unique,
            nbrs,
            candidates,
            eps_phase: eps,
            tau_build,
        })
    }

    /// Build from an explicit symmetric coupling list `(i, j, v/hbar)`;
    /// every pair is kept as a candidate.
    pub fn from_couplings(
        n: usize,
        couplings: &[(usize, usize, F)],
        tau_build: F,
        opts: &CorrelatorOptions<F>,
    ) -> Result<Self> {
        let eps = opts.eps_phase;
        let mut v_unique: Vec<F> = couplings.iter().map(|&(_, _, v)| v).collect();
        v_unique.sort_by(|a, b| a.partial_cmp(b).expect("finite couplings"));
        v_unique.dedup();
        let mut nbrs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        let mut candidates = Vec::with_capacity(couplings.len());
        for &(i, j, v) in couplings {
            if i == j || i >= n || j >= n {
                return Err(Error::Config(format!("bad coupling pair ({i}, {j})")));
            }
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            let vidx = v_unique
                .binary_search_by(|x| x.partial_cmp(&v).expect("finite"))
                .expect("deduped coupling") as u32;
            candidates.push((i as u32, j as u32, vidx));
            nbrs[i].push((j as u32, vidx));
            nbrs[j].push((i as u32, vidx));
        }
        for list in &mut nbrs {
            list.sort_unstable_by_key(|&(p, _)| p);
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Config("duplicate coupling pair".into()));
            }
        }
        Ok(Self {
            n,
            v_unique,
            r2_unique: Vec::new(),
            nbrs,
            candidates,
            eps_phase: eps,
            tau_build,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.n
    }

    pub fn tau_build(&self) -> F {
        self.tau_build
    }
}

/// Smallest radius beyond which the potential stays below `v_thresh`.
fn cutoff_radius<F: Real>(potential: &Potential<F>, v_thresh: F) -> Result<F> {
    if !v_thresh.is_finite() {
        return Ok(F::zero());
    }
    let v0 = potential.v0_rad().abs();
    if v0 < v_thresh {
        return Ok(F::zero());
    }
    let rc = potential.r_c_m();
    if potential.model() == crate::interaction::PotentialModel::Heaviside {
        return Ok(rc * (F::one() + real(2e-9)));
    }
    // Soft-core solution; the exact-potential tail approaches it, so start
    // there with a margin and expand until verified below threshold.
    let ratio = v0 / v_thresh - F::one();
    let mut r = if ratio > F::zero() {
        rc * ratio.powf(F::one() / real(6.0)) * real(1.05)
    } else {
        rc
    };
    r = r.max(rc);
    for _ in 0..200 {
        if potential.v_over_hbar(r)?.abs() < v_thresh {
            return Ok(r);
        }
        r = r * real(1.25);
    }
    Err(Error::Domain(
        "pair potential does not decay below the cutoff threshold".into(),
    ))
}

/// Phase tables of a graph at one squeezing time.
#[derive(Clone, Debug)]
pub struct PhaseMatrix<'g, F> {
    graph: &'g InteractionGraph<F>,
    tau_s: F,
    phi: Vec<F>,
    cos_phi: Vec<F>,
    sin_phi: Vec<F>,
    /// Per atom, entries of `nbrs` restricted to active phases (CSR).
    adj_off: Vec<u32>,
    adj: Vec<(u32, u32)>,
    /// Largest active squared distance (geometric graphs).
    r2_cut: F,
}

impl<'g, F: Real> PhaseMatrix<'g, F> {
    pub fn new(graph: &'g InteractionGraph<F>, tau_s: F) -> Result<Self> {
        if !(tau_s >= F::zero()) {
            return Err(Error::Domain("squeezing time must be >= 0".into()));
        }
        let slack = F::one() + F::epsilon() * real(16.0);
        if tau_s > graph.tau_build * slack {
            return Err(Error::Domain(format!(
                "phase tables requested at tau = {tau_s:e} beyond the graph build time {:e}",
                graph.tau_build
            )));
        }
        let half_tau = tau_s / real(2.0);
        let m = graph.v_unique.len();
        let mut phi = Vec::with_capacity(m);
        let mut cos_phi = Vec::with_capacity(m);
        let mut sin_phi = Vec::with_capacity(m);
        let mut active = Vec::with_capacity(m);
        let mut r2_cut = F::zero();
        for (idx, &v) in graph.v_unique.iter().enumerate() {
            let ph = v * half_tau;
            let act = ph.abs() >= graph.eps_phase;
            phi.push(if act { ph } else { F::zero() });
            cos_phi.push(if act { ph.cos() } else { F::one() });
            sin_phi.push(if act { ph.sin() } else { F::zero() });
            active.push(act);
            if act {
                if let Some(&r2) = graph.r2_unique.get(idx) {
                    r2_cut = r2_cut.max(r2);
                }
            }
        }
        // Compact per-atom adjacency over active entries.
        let mut adj_off = Vec::with_capacity(graph.n + 1);
        let mut adj = Vec::new();
        adj_off.push(0u32);
        for list in &graph.nbrs {
            for &(p, vidx) in list {
                if active[vidx as usize] {
                    adj.push((p, vidx));
                }
            }
            adj_off.push(adj.len() as u32);
        }
        Ok(Self {
            graph,
            tau_s,
            phi,
            cos_phi,
            sin_phi,
            adj_off,
            adj,
            r2_cut,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.graph.n
    }

    pub fn tau_s(&self) -> F {
        self.tau_s
    }

    fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.adj[self.adj_off[i] as usize..self.adj_off[i + 1] as usize]
    }

    /// Pair phase `phi_ij`; exactly zero for pairs below the cutoff.
    pub fn phi(&self, i: usize, j: usize) -> F {
        if i == j {
            return F::zero();
        }
        match self.row(i).binary_search_by_key(&(j as u32), |&(p, _)| p) {
            Ok(t) => self.phi[self.row(i)[t].1 as usize],
            Err(_) => F::zero(),
        }
    }

    /// Whether the pair was treated as non-interacting at this time.
    pub fn is_skipped(&self, i: usize, j: usize) -> bool {
        i != j
            && self
                .row(i)
                .binary_search_by_key(&(j as u32), |&(p, _)| p)
                .is_err()
    }
}

/// Evaluate the four correlators from phase tables.
pub fn correlators_from_phases<F: Real>(pm: &PhaseMatrix<'_, F>) -> Correlators<F> {
    let n = pm.n_atoms();
    let nf = real_of_count::<F>(n as u64);
    let quarter = nf / real(4.0);

    // Per-atom prefix/suffix cosine products: pre[t] multiplies entries
    // before t, suf[t] entries after t; pre[len] is the full product used
    // by <Jz>.
    let rows: Vec<(Vec<F>, Vec<F>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row = pm.row(i);
            let len = row.len();
            let mut pre = Vec::with_capacity(len + 1);
            let mut suf = vec![F::one(); len + 1];
            let mut acc = F::one();
            pre.push(acc);
            for &(_, vidx) in row {
                acc = acc * pm.cos_phi[vidx as usize];
                pre.push(acc);
            }
            let mut acc = F::one();
            for t in (0..len).rev() {
                acc = acc * pm.cos_phi[row[t].1 as usize];
                suf[t] = acc;
            }
            (pre, suf)
        })
        .collect();

    let jz = -rows.iter().map(|(pre, _)| *pre.last().unwrap()).sum::<F>() / real(2.0);

    // Cross correlator: sum over interacting pairs of
    // sin(phi_ij) (P_i\j + P_j\i) / 2.
    let cross_terms: Vec<F> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row_i = pm.row(i);
            let (pre_i, suf_i) = &rows[i];
            let mut acc = F::zero();
            for (t, &(j, vidx)) in row_i.iter().enumerate() {
                if (j as usize) <= i {
                    continue;
                }
                let j = j as usize;
                let p_i = pre_i[t] * suf_i[t + 1];
                let row_j = pm.row(j);
                let u = row_j
                    .binary_search_by_key(&(i as u32), |&(p, _)| p)
                    .expect("adjacency is symmetric");
                let (pre_j, suf_j) = &rows[j];
                let p_j = pre_j[u] * suf_j[u + 1];
                acc = acc + pm.sin_phi[vidx as usize] * (p_i + p_j);
            }
            acc
        })
        .collect();
    let jxjy_sym = -cross_terms.into_iter().sum::<F>() / real(2.0);

    // Transverse variance: bracket per candidate pair, walking both
    // adjacency rows in lockstep. Shared neighbors contribute
    // cos(phi_ik -+ phi_jk); exclusive ones a plain cosine to both
    // products.
    let check_r2 = !pm.graph.r2_unique.is_empty();
    let bracket_sums: Vec<F> = pm
        .graph
        .candidates
        .par_chunks(4096)
        .map(|chunk| {
            let mut total = F::zero();
            for &(i, j, vidx) in chunk {
                if check_r2 && pm.graph.r2_unique[vidx as usize] > pm.r2_cut * real(4.0) {
                    continue;
                }
                let (i, j) = (i as usize, j as usize);
                let row_i = pm.row(i);
                let row_j = pm.row(j);
                let mut a = F::one();
                let mut pd = F::one();
                let mut ps = F::one();
                let mut shared = false;
                let (mut t, mut u) = (0usize, 0usize);
                while t < row_i.len() && u < row_j.len() {
                    let (ki, vi) = row_i[t];
                    let (kj, vj) = row_j[u];
                    if ki < kj {
                        if ki as usize != j {
                            a = a * pm.cos_phi[vi as usize];
                        }
                        t += 1;
                    } else if kj < ki {
                        if kj as usize != i {
                            a = a * pm.cos_phi[vj as usize];
                        }
                        u += 1;
                    } else {
                        let (ci, si) = (pm.cos_phi[vi as usize], pm.sin_phi[vi as usize]);
                        let (cj, sj) = (pm.cos_phi[vj as usize], pm.sin_phi[vj as usize]);
                        let cc = ci * cj;
                        let ss = si * sj;
                        pd = pd * (cc + ss);
                        ps = ps * (cc - ss);
                        shared = true;
                        t += 1;
                        u += 1;
                    }
                }
                while t < row_i.len() {
                    let (ki, vi) = row_i[t];
                    if ki as usize != j {
                        a = a * pm.cos_phi[vi as usize];
                    }
                    t += 1;
                }
                while u < row_j.len() {
                    let (kj, vj) = row_j[u];
                    if kj as usize != i {
                        a = a * pm.cos_phi[vj as usize];
                    }
                    u += 1;
                }
                if shared {
                    total = total + a * (pd - ps);
                }
            }
            total
        })
        .collect();
    let jx2 = quarter + bracket_sums.into_iter().sum::<F>() / real(4.0);

    Correlators {
        jz,
        jx2,
        jy2: quarter,
        jxjy_sym,
        n_atoms: n as u64,
    }
}
