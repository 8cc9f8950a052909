//! Physical constants (SI, CODATA 2018).

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Hartree energy for infinite nuclear mass, J.
pub const HARTREE_ENERGY: f64 = 4.359_744_722_207_1e-18;

/// Electron mass in unified atomic mass units.
pub const ELECTRON_MASS_U: f64 = 5.485_799_090_65e-4;

/// Atomic mass of the spin-zero bosonic strontium isotope 88Sr, u.
pub const SR88_MASS_U: f64 = 87.905_612_257_1;

/// Finite-mass corrected Hartree energy for an isotope of the given mass,
/// `E_H / (1 + m_e / M)`.
pub fn hartree_finite_mass(isotope_mass_u: f64) -> f64 {
    HARTREE_ENERGY / (1.0 + ELECTRON_MASS_U / isotope_mass_u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_mass_correction_is_small_and_downward() {
        let e = hartree_finite_mass(SR88_MASS_U);
        assert!(e < HARTREE_ENERGY);
        assert!((HARTREE_ENERGY - e) / HARTREE_ENERGY < 1e-5);
    }
}
