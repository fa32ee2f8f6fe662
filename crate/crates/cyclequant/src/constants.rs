//! Physical constants and unit systems.

use crate::{Error, Result};

/// Hartree energy in electronvolts (CODATA 2018).
pub const HARTREE_EV: f64 = 27.211386245988;

/// Rydberg energy in electronvolts (CODATA 2018).
pub const RYDBERG_EV: f64 = 13.605693122994;

/// The constants every periodicity computation is expressed through.
///
/// Defaults are the CODATA 2018 SI values (`h`, `c`, `k_B` exact by the 2019
/// SI redefinition). [`PhysicalConstants::natural`] switches to `h = 2 pi`,
/// `c = k_B = 1`, which is the unit system used internally by the
/// quantization engine and the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    planck: f64,
    speed_of_light: f64,
    boltzmann: f64,
    electron_rest_energy: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 SI values.
    pub fn si() -> Self {
        Self {
            planck: 6.626_070_15e-34,                  // J s (exact)
            speed_of_light: 299_792_458.0,             // m/s (exact)
            boltzmann: 1.380_649e-23,                  // J/K (exact)
            electron_rest_energy: 8.187_105_776_9e-14, // J
        }
    }

    /// Natural units: `hbar = 1` (so `h = 2 pi`), `c = 1`, `k_B = 1`,
    /// electron rest energy 1.
    pub fn natural() -> Self {
        Self {
            planck: std::f64::consts::TAU,
            speed_of_light: 1.0,
            boltzmann: 1.0,
            electron_rest_energy: 1.0,
        }
    }

    /// Custom constants; every value must be strictly positive and finite.
    pub fn new(
        planck: f64,
        speed_of_light: f64,
        boltzmann: f64,
        electron_rest_energy: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("h", planck),
            ("c", speed_of_light),
            ("k_B", boltzmann),
            ("electron_rest_energy", electron_rest_energy),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain(format!(
                    "constant {name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(Self {
            planck,
            speed_of_light,
            boltzmann,
            electron_rest_energy,
        })
    }

    /// Planck constant `h`.
    pub fn planck(&self) -> f64 {
        self.planck
    }

    /// Reduced Planck constant `hbar = h / 2 pi`.
    pub fn hbar(&self) -> f64 {
        self.planck / std::f64::consts::TAU
    }

    /// Speed of light `c`.
    pub fn speed_of_light(&self) -> f64 {
        self.speed_of_light
    }

    /// Boltzmann constant `k_B`.
    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    /// Electron rest energy `m_e c^2`.
    pub fn electron_rest_energy(&self) -> f64 {
        self.electron_rest_energy
    }

    /// Electron mass `m_e = (m_e c^2) / c^2`.
    pub fn electron_mass(&self) -> f64 {
        self.electron_rest_energy / (self.speed_of_light * self.speed_of_light)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_defaults_positive_and_exact() {
        let c = PhysicalConstants::si();
        assert_eq!(c.planck(), 6.62607015e-34);
        assert_eq!(c.speed_of_light(), 299792458.0);
        assert_eq!(c.boltzmann(), 1.380649e-23);
        assert!(c.electron_mass() > 9.10e-31 && c.electron_mass() < 9.11e-31);
    }

    #[test]
    fn natural_units_h_is_two_pi() {
        let c = PhysicalConstants::natural();
        assert_eq!(c.planck(), std::f64::consts::TAU);
        assert_eq!(c.hbar(), 1.0);
        assert_eq!(c.speed_of_light(), 1.0);
    }

    #[test]
    fn rejects_non_positive_constants() {
        assert!(PhysicalConstants::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -2.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, f64::NAN, 1.0).is_err());
    }
}
