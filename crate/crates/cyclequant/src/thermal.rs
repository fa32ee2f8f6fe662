//! Black-body statistics over a discrete harmonic ladder.
//!
//! A mode with fundamental energy `hbar omega` in contact with a bath at
//! temperature `T` populates its levels `E_n = n hbar omega` with Boltzmann
//! weights. Everything is computed in the dimensionless ratio
//! `x = hbar omega / (k_B T)`; SI values convert at the boundary.

use crate::constants::PhysicalConstants;
use crate::numerics::integrate;
use crate::{Error, Result};

/// A thermalized harmonic ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMode {
    fundamental_energy: f64,
    temperature: f64,
    x: f64,
}

impl ThermalMode {
    /// Builds a mode from its fundamental energy and a bath temperature.
    pub fn new(
        fundamental_energy: f64,
        temperature: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if !(fundamental_energy.is_finite() && fundamental_energy > 0.0) {
            return Err(Error::Domain(format!(
                "fundamental energy must be positive, got {fundamental_energy}"
            )));
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(Self {
            fundamental_energy,
            temperature,
            x: fundamental_energy / (constants.boltzmann() * temperature),
        })
    }

    /// Dimensionless construction: `x = hbar omega / (k_B T)` directly, with
    /// the fundamental energy set to `x` (so `k_B T = 1`).
    pub fn from_ratio(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::Domain(format!("ratio must be positive, got {x}")));
        }
        Ok(Self {
            fundamental_energy: x,
            temperature: 1.0,
            x,
        })
    }

    /// Fundamental level spacing.
    pub fn fundamental_energy(&self) -> f64 {
        self.fundamental_energy
    }

    /// Bath temperature.
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// `x = hbar omega / (k_B T)`.
    pub fn ratio(&self) -> f64 {
        self.x
    }
}

/// Occupation probability of one ladder level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelPopulation {
    /// Level index.
    pub n: u32,
    /// Probability within the truncated ladder.
    pub weight: f64,
}

/// Truncated Boltzmann populations with the truncation bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Populations {
    /// Normalized weights for `n = 0..=n_max`.
    pub levels: Vec<LevelPopulation>,
    /// Probability mass of the discarded tail, `exp(-(n_max+1) x)`.
    pub tail_mass: f64,
    /// Upper bound on the truncation error (also bounds the KL divergence
    /// between the truncated and exact distributions).
    pub tail_bound: f64,
}

/// Boltzmann populations `w_n` proportional to `exp(-n x)` over the ladder
/// `n = 0..=n_max`, normalized over the truncation.
pub fn level_populations(mode: &ThermalMode, n_max: u32) -> Result<Populations> {
    if n_max < 1 {
        return Err(Error::Argument("n_max must be at least 1".into()));
    }
    let x = mode.ratio();
    let q = (-x).exp();
    // Truncated geometric normalization: sum of q^n for n <= n_max.
    let tail_mass = (-(n_max as f64 + 1.0) * x).exp();
    let norm = (1.0 - tail_mass) / (1.0 - q);
    let levels = (0..=n_max)
        .map(|n| LevelPopulation {
            n,
            weight: (-(n as f64) * x).exp() / norm,
        })
        .collect();
    Ok(Populations {
        levels,
        tail_mass,
        tail_bound: tail_mass / (1.0 - tail_mass),
    })
}

/// Mean occupation number `<n> = 1 / (e^x - 1)`; the effective number of
/// populated levels.
pub fn mean_occupation(mode: &ThermalMode) -> f64 {
    1.0 / mode.ratio().exp_m1()
}

/// Planck mean energy computed along two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEnergy {
    /// Closed form `hbar omega / (e^x - 1)`.
    pub closed_form: f64,
    /// Truncated ladder sum over Boltzmann weights.
    pub truncated_sum: f64,
    /// `|closed_form - truncated_sum|`.
    pub difference: f64,
    /// Levels accumulated before the deterministic cutoff.
    pub terms: u32,
    /// Analytic bound on the dropped tail of the sum, in energy units.
    pub tail_bound: f64,
}

/// Mean energy of the thermal ladder: the closed Planck form next to the
/// explicit level sum `sum of n hbar omega w_n`, truncated when the next
/// term falls below 1e-16 of the running sum (past the term peak at
/// `n ~ 1/x`).
pub fn mean_energy(mode: &ThermalMode) -> MeanEnergy {
    let x = mode.ratio();
    let e0 = mode.fundamental_energy();
    let closed_form = e0 / x.exp_m1();
    let q = (-x).exp();
    let weight_scale = 1.0 - q;
    let mut sum = 0.0;
    let mut n = 1u64;
    let peak = (1.0 / x).ceil() as u64 + 1;
    loop {
        let term = n as f64 * (-(n as f64) * x).exp() * weight_scale;
        sum += term;
        if (n > peak && term < 1e-16 * sum.max(f64::MIN_POSITIVE)) || n >= 50_000_000 {
            break;
        }
        n += 1;
    }
    // Tail of sum_{m > n} m q^m (1 - q) = q^(n+1) (n + 1 + q/(1-q)).
    let tail = (-(n as f64 + 1.0) * x).exp() * (n as f64 + 1.0 + q / (1.0 - q));
    let truncated_sum = e0 * sum;
    MeanEnergy {
        closed_form,
        truncated_sum,
        difference: (closed_form - truncated_sum).abs(),
        terms: n as u32,
        tail_bound: e0 * tail,
    }
}

/// Planck and Rayleigh-Jeans spectral energy densities at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadiance {
    /// `x = hbar omega / (k_B T)`.
    pub x: f64,
    /// Planck density `hbar omega^3 / (pi^2 c^3) / (e^x - 1)`.
    pub planck: f64,
    /// Classical density `omega^2 k_B T / (pi^2 c^3)`.
    pub rayleigh_jeans: f64,
}

/// Planck spectral energy density per angular frequency, with the classical
/// Rayleigh-Jeans form alongside for comparison.
pub fn spectral_radiance(
    omega: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<SpectralRadiance> {
    if !(omega.is_finite() && omega > 0.0 && temperature.is_finite() && temperature > 0.0) {
        return Err(Error::Domain(format!(
            "need positive frequency and temperature, got omega = {omega}, T = {temperature}"
        )));
    }
    let hbar = constants.hbar();
    let c = constants.speed_of_light();
    let x = hbar * omega / (constants.boltzmann() * temperature);
    let geometry = omega * omega / (std::f64::consts::PI.powi(2) * c.powi(3));
    Ok(SpectralRadiance {
        x,
        planck: geometry * hbar * omega / x.exp_m1(),
        rayleigh_jeans: geometry * constants.boltzmann() * temperature,
    })
}

/// Dimensionless Planck spectral shape `x^3 / (e^x - 1)`.
pub fn planck_shape(x: f64) -> f64 {
    x * x * x / x.exp_m1()
}

/// Dimensionless Rayleigh-Jeans shape `x^2`.
pub fn rayleigh_jeans_shape(x: f64) -> f64 {
    x * x
}

/// Planck-to-Rayleigh-Jeans ratio `x / (e^x - 1)`: 1 in the classical limit,
/// exponentially suppressed in the quantum limit.
pub fn planck_rj_ratio(x: f64) -> f64 {
    x / x.exp_m1()
}

/// Wien displacement point: the root of `(3 - x) e^x = 3`, where the Planck
/// shape peaks.
pub fn wien_peak() -> f64 {
    crate::numerics::secant_bracketed(|x: f64| (3.0 - x) * x.exp() - 3.0, 2.0, 3.0, 1e-12)
}

/// The quadrature and series faces of `integral of x^3/(e^x - 1) over
/// [0, infinity)`, against the closed form `pi^4 / 15`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StefanBoltzmannCheck {
    /// Panelled Gauss-Legendre quadrature of the integrand.
    pub quadrature: f64,
    /// Series route `6 sum 1/n^4`.
    pub series: f64,
    /// `pi^4 / 15`.
    pub reference: f64,
}

/// Evaluates the Stefan-Boltzmann integral along two independent routes.
/// The integrand behaves as `x^2` at the origin (removable) and decays like
/// `x^3 e^(-x)`, so panels up to `x = 64` capture it to machine precision.
pub fn stefan_boltzmann_integral() -> StefanBoltzmannCheck {
    let mut quadrature = 0.0;
    let mut lo = 0.0;
    while lo < 64.0 {
        let hi = lo + 4.0;
        quadrature += integrate(planck_shape, lo, hi, 32);
        lo = hi;
    }
    let mut series = 0.0;
    let mut n = 1u64;
    loop {
        let term = 6.0 / ((n * n * n * n) as f64);
        series += term;
        if term < 1e-18 {
            break;
        }
        n += 1;
    }
    StefanBoltzmannCheck {
        quadrature,
        series,
        reference: std::f64::consts::PI.powi(4) / 15.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_weights_at_ln_two() {
        let mode = ThermalMode::from_ratio(2.0f64.ln()).unwrap();
        let pops = level_populations(&mode, 60).unwrap();
        assert!((pops.levels[0].weight - 0.5).abs() < 1e-12);
        assert!((pops.levels[1].weight - 0.25).abs() < 1e-12);
        assert!((pops.levels[2].weight - 0.125).abs() < 1e-12);
        let total: f64 = pops.levels.iter().map(|l| l.weight).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quantum_limit_populates_only_the_ground_level() {
        let mode = ThermalMode::from_ratio(10.0).unwrap();
        let pops = level_populations(&mode, 20).unwrap();
        assert!(pops.levels[0].weight > 0.99995);
    }

    #[test]
    fn classical_limit_populates_about_a_hundred_levels() {
        let mode = ThermalMode::from_ratio(0.01).unwrap();
        let n = mean_occupation(&mode);
        assert!((n - 99.500_833_331_944_45).abs() < 1e-9, "<n> = {n}");
        assert!((n - 100.0).abs() < 1.0);
    }

    #[test]
    fn truncation_kl_divergence_below_reported_bound() {
        let mode = ThermalMode::from_ratio(0.35).unwrap();
        let pops = level_populations(&mode, 40).unwrap();
        let x = mode.ratio();
        let exact = |n: u32| (-(n as f64) * x).exp() * (1.0 - (-x).exp());
        let kl: f64 = pops
            .levels
            .iter()
            .map(|l| l.weight * (l.weight / exact(l.n)).ln())
            .sum();
        assert!(kl >= 0.0);
        assert!(
            kl <= pops.tail_bound,
            "KL {kl} vs bound {}",
            pops.tail_bound
        );
    }

    #[test]
    fn mean_energy_routes_agree() {
        for x in [0.25, 1.0, 3.0] {
            let mode = ThermalMode::from_ratio(x).unwrap();
            let out = mean_energy(&mode);
            assert!(out.tail_bound < 1e-14);
            assert!(
                out.difference < 1e-12 * out.closed_form.max(1.0),
                "x = {x}: difference {}",
                out.difference
            );
        }
    }

    #[test]
    fn classical_limit_of_mean_energy() {
        // <E>/(k_B T) = x/(e^x - 1) -> 1 - x/2.
        let mode = ThermalMode::from_ratio(1e-3).unwrap();
        let out = mean_energy(&mode);
        assert!((out.closed_form - 0.999_500_083_333).abs() < 1e-9);
    }

    #[test]
    fn uv_suppression_at_x_twenty() {
        let mode = ThermalMode::from_ratio(20.0).unwrap();
        let out = mean_energy(&mode);
        let ratio = out.closed_form / mode.fundamental_energy();
        assert!((ratio - 2.061_153_6e-9).abs() < 1e-13, "got {ratio}");
        assert!(ratio < 1e-8);
    }

    #[test]
    fn mean_energy_in_ratio_form_depends_on_x_only() {
        let c = PhysicalConstants::si();
        let x = 1.3;
        let t = 450.0;
        let si_mode = ThermalMode::new(x * c.boltzmann() * t, t, &c).unwrap();
        let plain = ThermalMode::from_ratio(x).unwrap();
        let a = mean_energy(&si_mode).closed_form / si_mode.fundamental_energy();
        let b = mean_energy(&plain).closed_form / plain.fundamental_energy();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn mean_energy_monotone_in_temperature() {
        let c = PhysicalConstants::natural();
        let mut prev = 0.0;
        for t in [0.5, 1.0, 2.0, 5.0, 20.0] {
            let mode = ThermalMode::new(1.0, t, &c).unwrap();
            let e = mean_energy(&mode).closed_form;
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn planck_rj_ratio_matches_expansion_and_decreases() {
        for x in [1e-4, 1e-3, 1e-2] {
            let expansion = 1.0 - x / 2.0 + x * x / 12.0;
            assert!((planck_rj_ratio(x) - expansion).abs() < x * x * x);
        }
        assert!((planck_rj_ratio(1e-3) - 0.9995).abs() < 5e-7);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let x = 1e-3 * 1.05f64.powi(i);
            let r = planck_rj_ratio(x);
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn wien_peak_against_bisection_oracle() {
        // Independent plain bisection on (3 - x) e^x - 3.
        let f = |x: f64| (3.0 - x) * x.exp() - 3.0;
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let peak = wien_peak();
        assert!((peak - oracle).abs() < 1e-10);
        assert!((peak - 2.821_439_372_122_08).abs() < 1e-10);
    }

    #[test]
    fn spectral_radiance_limits() {
        let c = PhysicalConstants::si();
        // Pick omega, T with x around 1e-3: classical regime.
        let t = 300.0;
        let omega = 1e-3 * c.boltzmann() * t / c.hbar();
        let s = spectral_radiance(omega, t, &c).unwrap();
        assert!((s.x - 1e-3).abs() < 1e-15);
        assert!((s.planck / s.rayleigh_jeans - 0.9995).abs() < 5e-7);
    }

    #[test]
    fn planck_tail_is_integrable_rj_is_not() {
        // Tail mass of the Planck shape beyond x = 30, against the total.
        let mut tail = 0.0;
        let mut lo = 30.0;
        while lo < 120.0 {
            tail += integrate(planck_shape, lo, lo + 5.0, 32);
            lo += 5.0;
        }
        let total = stefan_boltzmann_integral().quadrature;
        let fraction = tail / total;
        // Quadrature gives 4.3065e-10; comfortably under 1e-9.
        assert!(fraction < 1e-9, "tail fraction {fraction}");
        assert!((fraction / 4.306_5e-10 - 1.0).abs() < 1e-3);
        // Rayleigh-Jeans grows without bound instead.
        assert!(rayleigh_jeans_shape(60.0) > rayleigh_jeans_shape(30.0));
    }

    #[test]
    fn stefan_boltzmann_two_routes() {
        let out = stefan_boltzmann_integral();
        assert!(
            (out.quadrature - out.reference).abs() < 1e-8,
            "quadrature {} vs pi^4/15 {}",
            out.quadrature,
            out.reference
        );
        assert!((out.quadrature - out.series).abs() < 1e-10);
        assert!((out.reference - 6.493_939_402_266_829).abs() < 1e-12);
    }

    #[test]
    fn planck_shape_is_stable_near_zero() {
        // x^3/(e^x - 1) = x^2 (1 - x/2 + ...) with exp_m1 keeping precision.
        let x = 1e-8;
        let expected = x * x * (1.0 - x / 2.0);
        assert!((planck_shape(x) - expected).abs() < 1e-30);
    }

    #[test]
    fn rejects_degenerate_modes() {
        assert!(ThermalMode::from_ratio(0.0).is_err());
        let c = PhysicalConstants::si();
        assert!(ThermalMode::new(-1.0, 300.0, &c).is_err());
        assert!(ThermalMode::new(1e-20, 0.0, &c).is_err());
        let mode = ThermalMode::from_ratio(1.0).unwrap();
        assert!(matches!(
            level_populations(&mode, 0),
            Err(Error::Argument(_))
        ));
    }
}
