//! Relativistic periodicity kinematics.
//!
//! A massive particle carries an intrinsic recurrence: in its rest frame the
//! proper-time period is the Compton time `T_tau = h / (M c^2)`. Observed
//! from a generic frame the recurrence appears as an instantaneous time
//! period `T_t` and spatial periodicities (wavelengths) `lambda_x`, tied to
//! the four-momentum by `1/T_t = E/h` and `1/lambda_i = p_i/h`.
//!
//! [`PeriodicityFourVector`] stores the *inverse* periods (a contravariant
//! frequency four-vector, proportional to the four-momentum), so the rest
//! frame needs no infinities and the Minkowski contraction of the inverse
//! components reproduces the mass-shell relation:
//! `1/T_tau^2 = 1/T_t^2 - sum_i c^2/lambda_i^2`.
//!
//! Metric signature is `(+,-,-,-)`.

use crate::constants::PhysicalConstants;
use crate::spectrum::{EnergyLevel, Method, Spectrum};
use crate::{Error, Result};

/// A spatial periodicity; the rest frame has no spatial recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wavelength {
    /// Finite signed wavelength (sign carries the propagation direction).
    Finite(f64),
    /// No recurrence along this axis.
    Infinite,
}

/// Minkowski contraction of two contravariant four-vectors, `(+,-,-,-)`.
fn minkowski(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Velocity and Lorentz factor of an active boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParameters {
    beta: [f64; 3],
    gamma: f64,
}

impl BoostParameters {
    /// Builds boost parameters from a dimensionless velocity vector;
    /// requires `|beta| < 1`.
    pub fn new(beta: [f64; 3]) -> Result<Self> {
        let b2 = dot3(beta, beta);
        if !b2.is_finite() || b2 >= 1.0 {
            return Err(Error::Domain(format!(
                "boost velocity must satisfy |beta| < 1, got |beta| = {}",
                b2.sqrt()
            )));
        }
        Ok(Self {
            beta,
            gamma: 1.0 / (1.0 - b2).sqrt(),
        })
    }

    /// Collinear boost along the x axis.
    pub fn along_x(beta: f64) -> Result<Self> {
        Self::new([beta, 0.0, 0.0])
    }

    /// Velocity vector.
    pub fn beta(&self) -> [f64; 3] {
        self.beta
    }

    /// Lorentz factor `1/sqrt(1 - beta^2)`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The inverse boost.
    pub fn reversed(&self) -> Self {
        Self {
            beta: [-self.beta[0], -self.beta[1], -self.beta[2]],
            gamma: self.gamma,
        }
    }
}

/// Applies the active Lorentz boost to a contravariant four-vector.
fn boost4(v: [f64; 4], b: &BoostParameters) -> [f64; 4] {
    let beta = b.beta;
    let b2 = dot3(beta, beta);
    if b2 == 0.0 {
        return v;
    }
    let gamma = b.gamma;
    let spatial = [v[1], v[2], v[3]];
    let bp = dot3(beta, spatial);
    let t = gamma * (v[0] + bp);
    let coef = (gamma - 1.0) * bp / b2 + gamma * v[0];
    [
        t,
        spatial[0] + coef * beta[0],
        spatial[1] + coef * beta[1],
        spatial[2] + coef * beta[2],
    ]
}

/// Relativistic four-momentum `(E, p)` with the invariant mass derived on
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    energy: f64,
    momentum: [f64; 3],
    mass: f64,
}

impl FourMomentum {
    /// Builds a four-momentum from energy and momentum; requires
    /// `E >= |p| c` (physical states on or inside the light cone).
    pub fn from_energy_momentum(
        energy: f64,
        momentum: [f64; 3],
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        let c = constants.speed_of_light();
        if !energy.is_finite() || energy <= 0.0 {
            return Err(Error::Domain(format!(
                "energy must be positive, got {energy}"
            )));
        }
        let pc2 = dot3(momentum, momentum) * c * c;
        let m2c4 = energy * energy - pc2;
        // Tolerate roundoff on the light cone itself.
        if m2c4 < -1e-12 * energy * energy {
            return Err(Error::Domain(format!(
                "unphysical state: E = {energy} < |p| c = {}",
                pc2.sqrt()
            )));
        }
        Ok(Self {
            energy,
            momentum,
            mass: m2c4.max(0.0).sqrt() / (c * c),
        })
    }

    /// Rest state of a massive particle.
    pub fn at_rest(mass: f64, constants: &PhysicalConstants) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        let c = constants.speed_of_light();
        Ok(Self {
            energy: mass * c * c,
            momentum: [0.0; 3],
            mass,
        })
    }

    /// Massive particle moving with velocity `beta`.
    pub fn from_mass_beta(
        mass: f64,
        boost: &BoostParameters,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        Ok(Self::at_rest(mass, constants)?.boosted(boost, constants))
    }

    /// Energy `E`.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Momentum three-vector.
    pub fn momentum(&self) -> [f64; 3] {
        self.momentum
    }

    /// Invariant mass derived from `E^2 - |p|^2 c^2`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The same state seen after an active boost.
    pub fn boosted(&self, boost: &BoostParameters, constants: &PhysicalConstants) -> Self {
        let c = constants.speed_of_light();
        let v = boost4(
            [
                self.energy / c,
                self.momentum[0],
                self.momentum[1],
                self.momentum[2],
            ],
            boost,
        );
        Self {
            energy: v[0] * c,
            momentum: [v[1], v[2], v[3]],
            mass: self.mass,
        }
    }

    /// Componentwise rescaling `p -> s p`; scales the invariant mass by `s`.
    /// Used to construct deliberately mismatched phase-harmony pairs.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            energy: self.energy * factor,
            momentum: [
                self.momentum[0] * factor,
                self.momentum[1] * factor,
                self.momentum[2] * factor,
            ],
            mass: self.mass * factor,
        }
    }

    /// Relative residual of the mass-shell identity
    /// `E^2 - |p|^2 c^2 = (M c^2)^2`.
    pub fn mass_shell_residual(&self, constants: &PhysicalConstants) -> f64 {
        let c = constants.speed_of_light();
        let pc2 = dot3(self.momentum, self.momentum) * c * c;
        let mc2 = self.mass * c * c;
        ((self.energy * self.energy - pc2 - mc2 * mc2) / (self.energy * self.energy)).abs()
    }
}

/// The contravariant recurrence `T^mu = (T_t, lambda_x)` of a particle,
/// stored through its inverse components `(1/T_t, c/lambda_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicityFourVector {
    /// `(1/T_t, c/lambda_x, c/lambda_y, c/lambda_z)`, all in inverse time.
    nu: [f64; 4],
}

impl PeriodicityFourVector {
    /// Rest-frame Compton recurrence of a massive particle:
    /// `T_tau = h / (mass c^2)`, no spatial recurrence.
    pub fn compton(mass: f64, constants: &PhysicalConstants) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        let c = constants.speed_of_light();
        Ok(Self {
            nu: [mass * c * c / constants.planck(), 0.0, 0.0, 0.0],
        })
    }

    /// The periodicity matched to a four-momentum by phase harmony:
    /// `1/T_t = E/h`, `c/lambda_i = p_i c/h`.
    pub fn from_momentum(p: &FourMomentum, constants: &PhysicalConstants) -> Self {
        let h = constants.planck();
        let c = constants.speed_of_light();
        let q = p.momentum();
        Self {
            nu: [p.energy() / h, q[0] * c / h, q[1] * c / h, q[2] * c / h],
        }
    }

    /// Builds a periodicity vector from an observed time period and
    /// wavelengths. The combination must be timelike or null, i.e.
    /// `1/T_t^2 >= sum c^2/lambda_i^2`.
    pub fn from_periods(
        time_period: f64,
        wavelengths: [Wavelength; 3],
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if !time_period.is_finite() || time_period <= 0.0 {
            return Err(Error::Domain(format!(
                "time period must be positive, got {time_period}"
            )));
        }
        let c = constants.speed_of_light();
        let mut nu = [1.0 / time_period, 0.0, 0.0, 0.0];
        for (i, w) in wavelengths.iter().enumerate() {
            match w {
                Wavelength::Infinite => {}
                Wavelength::Finite(l) => {
                    if *l == 0.0 || !l.is_finite() {
                        return Err(Error::Domain(format!(
                            "wavelength must be nonzero and finite, got {l}"
                        )));
                    }
                    nu[i + 1] = c / l;
                }
            }
        }
        let norm = minkowski(nu, nu);
        if norm < -1e-12 * nu[0] * nu[0] {
            return Err(Error::Domain(
                "spacelike periodicity: wavelengths too short for the time period".into(),
            ));
        }
        Ok(Self { nu })
    }

    /// The four-momentum this periodicity encodes: `E = h/T_t`,
    /// `p_i = h/lambda_i`.
    pub fn to_momentum(&self, constants: &PhysicalConstants) -> Result<FourMomentum> {
        let h = constants.planck();
        let c = constants.speed_of_light();
        FourMomentum::from_energy_momentum(
            self.nu[0] * h,
            [self.nu[1] * h / c, self.nu[2] * h / c, self.nu[3] * h / c],
            constants,
        )
    }

    /// Observed time period `T_t`.
    pub fn time_period(&self) -> f64 {
        1.0 / self.nu[0]
    }

    /// Proper-time period `T_tau` derived from the dispersion constraint
    /// `1/T_tau^2 = 1/T_t^2 - sum c^2/lambda_i^2`; infinite for null
    /// (massless) recurrences.
    pub fn proper_period(&self) -> f64 {
        let norm = minkowski(self.nu, self.nu);
        if norm <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / norm.sqrt()
        }
    }

    /// Spatial periodicities, with the rest frame reported as
    /// [`Wavelength::Infinite`].
    pub fn wavelengths(&self, constants: &PhysicalConstants) -> [Wavelength; 3] {
        let c = constants.speed_of_light();
        let mut out = [Wavelength::Infinite; 3];
        for (slot, nu) in out.iter_mut().zip(&self.nu[1..]) {
            if *nu != 0.0 {
                *slot = Wavelength::Finite(c / nu);
            }
        }
        out
    }

    /// Raw inverse components `(1/T_t, c/lambda_x, c/lambda_y, c/lambda_z)`.
    pub fn inverse_components(&self) -> [f64; 4] {
        self.nu
    }

    /// Contravariant Lorentz transform of the recurrence.
    pub fn boosted(&self, boost: &BoostParameters) -> Self {
        Self {
            nu: boost4(self.nu, boost),
        }
    }
}

/// Rest-frame Compton recurrence of a particle of the given mass.
///
/// Convenience wrapper over [`PeriodicityFourVector::compton`] returning the
/// proper-time period directly.
pub fn compton_time(mass: f64, constants: &PhysicalConstants) -> Result<f64> {
    Ok(PeriodicityFourVector::compton(mass, constants)?.proper_period())
}

/// De Broglie phase harmony `T^mu p_mu`.
///
/// Contracts the four-momentum with the worldline recurrence displacement
/// carried by `t` (the tangent four-vector of length one proper period).
/// For a matched pair the result is exactly one Planck constant in any
/// frame; scaling the momentum scales the result linearly. Only meaningful
/// for timelike (massive) periodicities.
pub fn phase_harmony(
    t: &PeriodicityFourVector,
    p: &FourMomentum,
    constants: &PhysicalConstants,
) -> f64 {
    let c = constants.speed_of_light();
    let nu = t.inverse_components();
    let q = p.momentum();
    let p4 = [p.energy() / c, q[0], q[1], q[2]];
    c * minkowski(nu, p4) / minkowski(nu, nu)
}

/// Boundary condition selecting integer or half-integer harmonics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumVariant {
    /// Periodic boundary conditions: `E_n = n E_1`, `n = 1, 2, ...`.
    #[default]
    Periodic,
    /// Antiperiodic boundary conditions: `E_n = (n + 1/2) E_1`,
    /// `n = 0, 1, ...`.
    Antiperiodic,
}

/// Harmonic energy spectrum of a moving particle,
/// `E_n = n sqrt(|p|^2 c^2 + M^2 c^4)` (Doppler-modulated Compton
/// harmonics), or the half-integer variant under antiperiodic boundary
/// conditions.
pub fn doppler_spectrum(
    mass: f64,
    momentum: [f64; 3],
    n_max: u32,
    variant: SpectrumVariant,
    constants: &PhysicalConstants,
) -> Result<Spectrum> {
    if n_max < 1 {
        return Err(Error::Argument("n_max must be at least 1".into()));
    }
    if !mass.is_finite() || mass < 0.0 {
        return Err(Error::Domain(format!(
            "mass must be non-negative, got {mass}"
        )));
    }
    let c = constants.speed_of_light();
    let pc2 = dot3(momentum, momentum) * c * c;
    let mc2 = mass * c * c;
    let base = (pc2 + mc2 * mc2).sqrt();
    if base <= 0.0 {
        return Err(Error::Domain(
            "massless state needs nonzero momentum".into(),
        ));
    }
    let levels = (0..n_max)
        .map(|i| {
            let (n, factor) = match variant {
                SpectrumVariant::Periodic => (i + 1, (i + 1) as f64),
                SpectrumVariant::Antiperiodic => (i, i as f64 + 0.5),
            };
            EnergyLevel {
                n,
                energy: factor * base,
                method: Method::ClosedForm,
                residual: 0.0,
            }
        })
        .collect();
    Spectrum::new(levels)
}

/// First-order weak-field redshift of a time period:
/// `T_t -> (1 - GM/(r c^2)) T_t`.
///
/// Valid only deep in the weak-field regime; `GM/(r c^2) >= 0.1` is
/// rejected.
pub fn gravitational_redshift(time_period: f64, gm_over_rc2: f64) -> Result<f64> {
    if !time_period.is_finite() || time_period <= 0.0 {
        return Err(Error::Domain(format!(
            "time period must be positive, got {time_period}"
        )));
    }
    if !gm_over_rc2.is_finite() || gm_over_rc2 < 0.0 {
        return Err(Error::Domain(format!(
            "GM/(r c^2) must be non-negative, got {gm_over_rc2}"
        )));
    }
    if gm_over_rc2 >= 0.1 {
        return Err(Error::WeakFieldViolation(gm_over_rc2));
    }
    Ok((1.0 - gm_over_rc2) * time_period)
}
