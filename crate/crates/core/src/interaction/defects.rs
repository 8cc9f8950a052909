//! Foerster-defect estimation from quantum-defect data.
//!
//! Term energies follow the Rydberg-Ritz form
//! `U(n) = -E_H / (2 [n - nu_J(n)]^2)` with
//! `nu_J(n) = d0 + d2/(n-d0)^2 + d4/(n-d0)^4 + ...`, and the defect of the
//! dominant pair channel `ns ns -> np (n-1)p` coupling to a given `3P_J`
//! series is
//!
//! ```text
//! hbar delta_J(n) = U(n, 3P_J) + U(n-1, 3P_J) - 2 U(n, 3S1).
//! ```
//!
//! All three `J` channels contribute with comparable magnitude, so the
//! interaction is characterized by the spin-weighted average
//! `delta(n) = sum_J (2J+1) delta_J(n) / 9`.
//!
//! The quantum-defect coefficients are measured quantities and are NOT
//! baked into the library: they are read from a small key/value text file
//! (see `data/sr88_quantum_defects.txt` in the repository for a documented,
//! user-replaceable example).

use std::collections::HashMap;
use std::path::Path;

use crate::constants::{hartree_finite_mass, HBAR, SR88_MASS_U};
use crate::error::{Error, Result};

/// The four series the defect pipeline consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    S1,
    P0,
    P1,
    P2,
}

impl Series {
    pub fn label(self) -> &'static str {
        match self {
            Series::S1 => "3S1",
            Series::P0 => "3P0",
            Series::P1 => "3P1",
            Series::P2 => "3P2",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        match s {
            "3S1" => Some(Series::S1),
            "3P0" => Some(Series::P0),
            "3P1" => Some(Series::P1),
            "3P2" => Some(Series::P2),
            _ => None,
        }
    }
}

/// Quantum-defect coefficients per series plus the (finite-mass corrected)
/// Hartree energy.
#[derive(Clone, Debug)]
pub struct QuantumDefectTable {
    /// Rydberg-Ritz coefficients `[d0, d2, d4, ...]` per series.
    pub series: HashMap<Series, Vec<f64>>,
    /// Hartree energy in joules.
    pub hartree_energy_j: f64,
}

/// Defects of the three `J` channels and their spin-weighted average,
/// rad/s.
#[derive(Clone, Copy, Debug)]
pub struct ForsterDefects {
    /// `delta_J` for `J = 0, 1, 2`.
    pub delta_j_rad: [f64; 3],
    pub delta_weighted_rad: f64,
}

impl QuantumDefectTable {
    /// All defects zero (hydrogenic): the analytic reference case.
    pub fn hydrogenic() -> Self {
        let mut series = HashMap::new();
        for s in [Series::S1, Series::P0, Series::P1, Series::P2] {
            series.insert(s, vec![0.0]);
        }
        Self {
            series,
            hartree_energy_j: hartree_finite_mass(SR88_MASS_U),
        }
    }

    /// Parse the key/value text format:
    ///
    /// ```text
    /// # comment
    /// isotope_mass_u 87.9056122571
    /// series 3S1 3.371 0.5
    /// series 3P0 2.8866 0.44
    /// ```
    ///
    /// `hartree_energy_j` may be given to override the isotope-mass route.
    pub fn parse(text: &str) -> Result<Self> {
        let mut series = HashMap::new();
        let mut isotope_mass_u = SR88_MASS_U;
        let mut hartree_override: Option<f64> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let key = tok.next().unwrap();
            let err = |msg: String| Error::Data(format!("line {}: {msg}", lineno + 1));
            match key {
                "isotope_mass_u" => {
                    let v = tok
                        .next()
                        .ok_or_else(|| err("missing isotope mass value".into()))?;
                    isotope_mass_u = v
                        .parse()
                        .map_err(|_| err(format!("bad isotope mass `{v}`")))?;
                }
                "hartree_energy_j" => {
                    let v = tok
                        .next()
                        .ok_or_else(|| err("missing Hartree energy value".into()))?;
                    hartree_override = Some(
                        v.parse()
                            .map_err(|_| err(format!("bad Hartree energy `{v}`")))?,
                    );
                }
                "series" => {
                    let label = tok
                        .next()
                        .ok_or_else(|| err("missing series label".into()))?;
                    let s = Series::from_label(label)
                        .ok_or_else(|| err(format!("unknown series `{label}`")))?;
                    let coeffs: Vec<f64> = tok
                        .map(|v| {
                            v.parse()
                                .map_err(|_| err(format!("bad coefficient `{v}`")))
                        })
                        .collect::<Result<_>>()?;
                    if coeffs.is_empty() {
                        return Err(err(format!("series {label} has no coefficients")));
                    }
                    series.insert(s, coeffs);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if series.is_empty() {
            return Err(Error::Data("no series entries found".into()));
        }
        Ok(Self {
            series,
            hartree_energy_j: hartree_override
                .unwrap_or_else(|| hartree_finite_mass(isotope_mass_u)),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Quantum defect `nu_J(n)`.
    pub fn defect(&self, s: Series, n: u32) -> Result<f64> {
        let coeffs = self
            .series
            .get(&s)
            .ok_or_else(|| Error::Data(format!("series {} not in table", s.label())))?;
        let d0 = coeffs[0];
        let base = n as f64 - d0;
        let mut nu = d0;
        let mut pow = base * base;
        for &c in &coeffs[1..] {
            nu += c / pow;
            pow *= base * base;
        }
        Ok(nu)
    }

    /// Term energy `U(n)` in joules.
    pub fn term_energy(&self, s: Series, n: u32) -> Result<f64> {
        let nu = self.defect(s, n)?;
        let nstar = n as f64 - nu;
        Ok(-self.hartree_energy_j / (2.0 * nstar * nstar))
    }
}

/// Foerster defects `delta_J(n)` and the spin-weighted `delta(n)`.
pub fn forster_defect(n: u32, table: &QuantumDefectTable) -> Result<ForsterDefects> {
    if n < 2 {
        return Err(Error::Domain("Foerster defect needs n >= 2".into()));
    }
    let u_s = table.term_energy(Series::S1, n)?;
    let mut delta_j_rad = [0.0; 3];
    for (j, series) in [Series::P0, Series::P1, Series::P2].into_iter().enumerate() {
        let u_p_n = table.term_energy(series, n)?;
        let u_p_nm1 = table.term_energy(series, n - 1)?;
        delta_j_rad[j] = (u_p_n + u_p_nm1 - 2.0 * u_s) / HBAR;
    }
    let delta_weighted_rad =
        (1.0 * delta_j_rad[0] + 3.0 * delta_j_rad[1] + 5.0 * delta_j_rad[2]) / 9.0;
    Ok(ForsterDefects {
        delta_j_rad,
        delta_weighted_rad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogenic_case_is_analytic() {
        let table = QuantumDefectTable::hydrogenic();
        let e_h = table.hartree_energy_j;
        for n in [5u32, 20, 55] {
            let d = forster_defect(n, &table).unwrap();
            let expected =
                -(e_h / (2.0 * HBAR)) * (1.0 / ((n - 1) as f64).powi(2) - 1.0 / (n as f64).powi(2));
            for j in 0..3 {
                assert!(
                    (d.delta_j_rad[j] - expected).abs() <= 1e-12 * expected.abs(),
                    "n={n} J={j}"
                );
            }
            assert!((d.delta_weighted_rad - expected).abs() <= 1e-12 * expected.abs());
            assert!(expected < 0.0);
        }
    }

    #[test]
    fn equal_defects_average_to_themselves() {
        let mut table = QuantumDefectTable::hydrogenic();
        for s in [Series::P0, Series::P1, Series::P2] {
            table.series.insert(s, vec![2.9]);
        }
        table.series.insert(Series::S1, vec![3.4]);
        let d = forster_defect(40, &table).unwrap();
        assert!((d.delta_weighted_rad - d.delta_j_rad[0]).abs() <= 1e-12 * d.delta_j_rad[0].abs());
    }

    #[test]
    fn weighted_average_is_bounded_by_channels() {
        let text = "\
isotope_mass_u 87.9056122571
series 3S1 3.371 0.5
series 3P0 2.8866 0.44
series 3P1 2.8824 0.407
series 3P2 2.8719 0.446
";
        let table = QuantumDefectTable::parse(text).unwrap();
        for n in [30u32, 45, 55, 70] {
            let d = forster_defect(n, &table).unwrap();
            let lo = d.delta_j_rad.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = d
                .delta_j_rad
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(d.delta_weighted_rad >= lo && d.delta_weighted_rad <= hi);
        }
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(QuantumDefectTable::parse("series 9X9 1.0").is_err());
        assert!(QuantumDefectTable::parse("series 3S1").is_err());
        assert!(QuantumDefectTable::parse("flux_capacitor 1.21").is_err());
        assert!(QuantumDefectTable::parse("# nothing\n").is_err());
    }

    #[test]
    fn missing_series_is_a_data_error() {
        let table = QuantumDefectTable::parse("series 3S1 3.371 0.5").unwrap();
        assert!(matches!(forster_defect(55, &table), Err(Error::Data(_))));
    }

    #[test]
    fn low_n_is_a_domain_error() {
        let table = QuantumDefectTable::hydrogenic();
        assert!(matches!(forster_defect(1, &table), Err(Error::Domain(_))));
    }
}
