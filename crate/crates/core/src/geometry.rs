//! Lattice construction and site filling.
//!
//! Sites of a `d`-dimensional lattice (`d` in 1..=3) are enumerated in
//! row-major order with the last axis fastest; site `k` sits at the integer
//! index vector times the lattice constant.  Occupied-atom configurations
//! come from full filling, independent random filling (the seeded substream
//! rule lives in [`crate::rng`]), deterministic compaction into a gapless
//! row-major prefix (the rearranged-tweezer model), or a fully filled 1D
//! lattice with the constant rescaled to the mean gap of a fractional
//! filling.

use crate::error::{Error, Result};
use crate::real::{real, Real};
use crate::rng::SplitMix64;

/// Hard cap on materialized site counts; the closed forms handle anything
/// larger without building coordinates.
pub const MAX_SITES: usize = 100_000_000;

/// Regular lattice description.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec<F> {
    /// Spatial dimension, 1..=3.
    pub dimension: usize,
    /// Sites per axis; `extents.len() == dimension`.
    pub extents: Vec<usize>,
    /// Lattice constant in meters.
    pub lattice_constant_m: F,
}

impl<F: Real> LatticeSpec<F> {
    pub fn new(dimension: usize, extents: Vec<usize>, lattice_constant_m: F) -> Result<Self> {
        let spec = Self {
            dimension,
            extents,
            lattice_constant_m,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// One-dimensional chain of `m` sites.
    pub fn chain(m: usize, lattice_constant_m: F) -> Result<Self> {
        Self::new(1, vec![m], lattice_constant_m)
    }

    /// Lattice with extents as equal as possible whose site count is the
    /// smallest `d`-dimensional box holding at least `m_target` sites.
    pub fn hypercubic_near(dimension: usize, m_target: usize, a: F) -> Result<Self> {
        if dimension == 0 || dimension > 3 {
            return Err(Error::Config(format!("dimension {dimension} not in 1..=3")));
        }
        if m_target == 0 {
            return Err(Error::Config("target site count must be >= 1".into()));
        }
        let side = (m_target as f64).powf(1.0 / dimension as f64);
        let mut extents = vec![side.floor() as usize; dimension];
        // Grow axes one at a time until the box holds the target.
        let mut axis = 0;
        while extents.iter().product::<usize>() < m_target {
            extents[axis] += 1;
            axis = (axis + 1) % dimension;
        }
        Self::new(dimension, extents, a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.dimension > 3 {
            return Err(Error::Config(format!(
                "dimension {} not in 1..=3",
                self.dimension
            )));
        }
        if self.extents.len() != self.dimension {
            return Err(Error::Config(format!(
                "expected {} extents, got {}",
                self.dimension,
                self.extents.len()
            )));
        }
        if self.extents.iter().any(|&e| e == 0) {
            return Err(Error::Config("every extent must be >= 1".into()));
        }
        if !(self.lattice_constant_m > F::zero()) {
            return Err(Error::Config("lattice constant must be > 0".into()));
        }
        Ok(())
    }

    /// Total site count `M`, checked against addressing capacity.
    pub fn site_count(&self) -> Result<usize> {
        let mut m: usize = 1;
        for &e in &self.extents {
            m = m
                .checked_mul(e)
                .ok_or_else(|| Error::Capacity("site count overflows addressing".into()))?;
        }
        if m > MAX_SITES {
            return Err(Error::Capacity(format!(
                "site count {m} exceeds the materialization cap {MAX_SITES}"
            )));
        }
        Ok(m)
    }
}

/// Ordered list of all site coordinates of a lattice.
#[derive(Clone, Debug)]
pub struct SiteSet<F> {
    pub spec: LatticeSpec<F>,
    /// Row-major coordinates, meters; unused axes are zero.
    pub coords: Vec<[F; 3]>,
}

/// How an [`AtomConfiguration`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillMode {
    Full,
    Random,
    Compacted,
    Rescaled,
}

/// Occupied sites of a (possibly partially filled) lattice.
#[derive(Clone, Debug)]
pub struct AtomConfiguration<F> {
    /// Atom coordinates in meters, in ascending site order.
    pub positions: Vec<[F; 3]>,
    /// Lattice the configuration was drawn from.
    pub source: LatticeSpec<F>,
    pub fill_mode: FillMode,
}

impl<F: Real> AtomConfiguration<F> {
    pub fn n_atoms(&self) -> usize {
        self.positions.len()
    }
}

/// Random-filling parameters.
#[derive(Clone, Copy, Debug)]
pub struct FillingSpec {
    /// Per-site occupation probability in `[0, 1]`.
    pub p_fill: f64,
    pub master_seed: u64,
    pub trial_index: u64,
}

impl FillingSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_fill) {
            return Err(Error::Config(format!(
                "p_fill {} outside [0, 1]",
                self.p_fill
            )));
        }
        Ok(())
    }
}

/// Enumerate all `M` sites of `spec` in row-major order (last axis fastest).
pub fn build_lattice<F: Real>(spec: &LatticeSpec<F>) -> Result<SiteSet<F>> {
    spec.validate()?;
    let m = spec.site_count()?;
    let a = spec.lattice_constant_m;
    let mut coords = Vec::with_capacity(m);
    let mut idx = [0usize; 3];
    let dim = spec.dimension;
    for _ in 0..m {
        let mut c = [F::zero(); 3];
        for (ax, &i) in idx.iter().take(dim).enumerate() {
            c[ax] = real::<F>(i as f64) * a;
        }
        coords.push(c);
        // Row-major increment, last axis fastest.
        for ax in (0..dim).rev() {
            idx[ax] += 1;
            if idx[ax] < spec.extents[ax] {
                break;
            }
            idx[ax] = 0;
        }
    }
    Ok(SiteSet {
        spec: spec.clone(),
        coords,
    })
}

/// Occupy every site.
pub fn fill_full<F: Real>(sites: &SiteSet<F>) -> AtomConfiguration<F> {
    AtomConfiguration {
        positions: sites.coords.clone(),
        source: sites.spec.clone(),
        fill_mode: FillMode::Full,
    }
}

/// Occupy each site independently with probability `p_fill`, consuming one
/// uniform draw per site in site order from the trial substream.
pub fn fill_random<F: Real>(sites: &SiteSet<F>, filling: &FillingSpec) -> Result<AtomConfiguration<F>> {
    filling.validate()?;
    let mut rng = SplitMix64::for_trial(filling.master_seed, filling.trial_index);
    let mut positions = Vec::new();
    for c in &sites.coords {
        if rng.next_f64() < filling.p_fill {
            positions.push(*c);
        }
    }
    Ok(AtomConfiguration {
        positions,
        source: sites.spec.clone(),
        fill_mode: FillMode::Random,
    })
}

/// Occupy the first `n_atoms` sites in row-major order (gapless block), the
/// rearranged tweezer-array model.
pub fn fill_compacted<F: Real>(sites: &SiteSet<F>, n_atoms: usize) -> Result<AtomConfiguration<F>> {
    if n_atoms > sites.coords.len() {
        return Err(Error::Capacity(format!(
            "cannot place {n_atoms} atoms on {} sites",
            sites.coords.len()
        )));
    }
    Ok(AtomConfiguration {
        positions: sites.coords[..n_atoms].to_vec(),
        source: sites.spec.clone(),
        fill_mode: if n_atoms == sites.coords.len() {
            FillMode::Full
        } else {
            FillMode::Compacted
        },
    })
}

/// Fully filled 1D lattice with the constant rescaled to the mean gap
/// `a' = M a / N`: `N` atoms uniformly spaced starting at the origin.
pub fn rescaled_uniform<F: Real>(spec: &LatticeSpec<F>, n_atoms: usize) -> Result<AtomConfiguration<F>> {
    spec.validate()?;
    if spec.dimension != 1 {
        return Err(Error::UnsupportedModel(
            "rescaled-constant filling is defined for 1D lattices only".into(),
        ));
    }
    let m = spec.site_count()?;
    if n_atoms == 0 || n_atoms > m {
        return Err(Error::Config(format!(
            "rescaled filling needs 1 <= N <= M, got N = {n_atoms}, M = {m}"
        )));
    }
    let gap = real::<F>(m as f64) * spec.lattice_constant_m / real::<F>(n_atoms as f64);
    let positions = (0..n_atoms)
        .map(|j| [real::<F>(j as f64) * gap, F::zero(), F::zero()])
        .collect();
    Ok(AtomConfiguration {
        positions,
        source: spec.clone(),
        fill_mode: if n_atoms == m {
            FillMode::Full
        } else {
            FillMode::Rescaled
        },
    })
}

/// Fully filled hypercubic tweezer block of `n_atoms` atoms: side
/// `ceil(N^(1/d))`, trimmed to `N` atoms row-major.
pub fn tweezer_block<F: Real>(dimension: usize, n_atoms: usize, a: F) -> Result<AtomConfiguration<F>> {
    if n_atoms == 0 {
        return Err(Error::Config("tweezer block needs at least one atom".into()));
    }
    let side = (n_atoms as f64).powf(1.0 / dimension as f64).ceil() as usize;
    // Guard against powf landing a hair above an exact root.
    let side = if dimension >= 2 && (side - 1).pow(dimension as u32) >= n_atoms {
        side - 1
    } else {
        side
    };
    let spec = LatticeSpec::new(dimension, vec![side; dimension], a)?;
    let sites = build_lattice(&spec)?;
    fill_compacted(&sites, n_atoms)
}

/// Squared Euclidean distance between two atom coordinates.
#[inline]
pub fn dist_sq<F: Real>(p: &[F; 3], q: &[F; 3]) -> F {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    dx * dx + dy * dy + dz * dz
}
