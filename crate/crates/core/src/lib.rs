//! Spin squeezing via Rydberg dressing on optical lattices.
//!
//! The library models one-axis twisting generated by a far-off-resonance
//! Rydberg-dressed interaction between effective two-level atoms pinned to
//! lattice sites.  A spin-echo sequence turns the pairwise dressed potential
//! into a pure `sz.sz` twisting Hamiltonian; the post-sequence collective
//! spin correlators have a closed pairwise solution that this crate
//! evaluates for arbitrary site occupations in one to three dimensions.
//!
//! The main layers are
//!
//! * [`geometry`] - lattice construction and (seeded, reproducible) random,
//!   compacted, or rescaled fillings,
//! * [`interaction`] - the soft-core, Heaviside, and exact dressed
//!   dipole-dipole pair potentials plus detuning-derived parameters and
//!   Foerster-defect estimation from quantum-defect data,
//! * [`correlator`] - exact pairwise correlators for arbitrary
//!   configurations and the all-to-all / edge-corrected Heaviside closed
//!   forms,
//! * [`squeezing`] - quadrature variance, squeezing parameter, optimal
//!   squeezing time, Rydberg-decay correction, and clock stability,
//! * [`ensemble`] - Monte Carlo over random filling realizations and
//!   geometry comparison sweeps,
//! * [`fits`] - empirical fitting functions for randomly filled
//!   one-dimensional lattices,
//! * [`oracle`] - brute-force state-vector simulation of the full echo
//!   sequence for up to 12 atoms, used to certify everything else.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait; `f64` aliases for the common types live at the crate
//! root.

pub mod constants;
pub mod correlator;
pub mod ensemble;
pub mod error;
pub mod fits;
pub mod geometry;
pub mod interaction;
pub mod oracle;
pub mod real;
pub mod rng;
pub mod squeezing;

pub use error::Error;
pub use real::Real;

/// `f64` atom configuration.
pub type AtomConfiguration64 = geometry::AtomConfiguration<f64>;
/// `f64` lattice specification.
pub type LatticeSpec64 = geometry::LatticeSpec<f64>;
/// `f64` dressing parameters.
pub type DressingParams64 = interaction::DressingParams<f64>;
/// `f64` detuning-derived parameters.
pub type DerivedParams64 = interaction::DerivedParams<f64>;
/// `f64` correlator set.
pub type Correlators64 = correlator::Correlators<f64>;
/// `f64` squeezing result.
pub type SqueezingResult64 = squeezing::SqueezingResult<f64>;
/// `f64` ensemble statistics.
pub type EnsembleStats64 = ensemble::EnsembleStats<f64>;
