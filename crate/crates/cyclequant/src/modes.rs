//! Harmonic-mode algebra on a compact cycle.
//!
//! A cyclic field is a finite superposition of harmonics of one fundamental
//! recurrence. On the mode coefficients the continuum operations reduce to
//! exact algebra: the local inner product becomes a coefficient sum, time
//! evolution a diagonal phase, and the canonical commutator identity the
//! bookkeeping of a mode shift. The same module carries the two faces of the
//! Euclidean propagator on a circle (mode sum vs. winding sum), which agree
//! by Poisson summation.

use num_complex::Complex64;

use crate::constants::PhysicalConstants;
use crate::kinematics::{PeriodicityFourVector, Wavelength};
use crate::{Error, Result};

/// Boundary condition on the compact cycle, encoded as the fractional twist
/// added to every mode index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Periodic: integer harmonics.
    Periodic,
    /// Antiperiodic: half-integer harmonics.
    Antiperiodic,
    /// Generic twist `v` in `[0, 1)`.
    Twist(f64),
}

impl Boundary {
    /// The twist as a number: 0, 1/2, or `v`.
    pub fn twist(&self) -> f64 {
        match self {
            Boundary::Periodic => 0.0,
            Boundary::Antiperiodic => 0.5,
            Boundary::Twist(v) => *v,
        }
    }
}

/// One harmonic of the fundamental recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicMode {
    /// Mode index; the mode's four-momentum is `(n + twist)` times the
    /// fundamental one.
    pub n: i32,
    /// Complex amplitude after normalization.
    pub amplitude: Complex64,
}

/// A normalized superposition of harmonics over one fundamental
/// periodicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicFieldState {
    fundamental: PeriodicityFourVector,
    boundary: Boundary,
    modes: Vec<HarmonicMode>,
}

impl CyclicFieldState {
    /// Builds a state from `(index, amplitude)` pairs; indices must be
    /// distinct and the total weight nonzero. Amplitudes are normalized so
    /// that the squared norm is one.
    pub fn new(
        fundamental: PeriodicityFourVector,
        boundary: Boundary,
        modes: Vec<(i32, Complex64)>,
    ) -> Result<Self> {
        let v = boundary.twist();
        if !(0.0..1.0).contains(&v) {
            return Err(Error::Argument(format!(
                "boundary twist must lie in [0, 1), got {v}"
            )));
        }
        if modes.is_empty() {
            return Err(Error::Argument("state needs at least one mode".into()));
        }
        let mut modes: Vec<HarmonicMode> = modes
            .into_iter()
            .map(|(n, amplitude)| HarmonicMode { n, amplitude })
            .collect();
        modes.sort_by_key(|m| m.n);
        for pair in modes.windows(2) {
            if pair[0].n == pair[1].n {
                return Err(Error::Argument(format!(
                    "duplicate mode index {}",
                    pair[0].n
                )));
            }
        }
        let norm2: f64 = modes.iter().map(|m| m.amplitude.norm_sqr()).sum();
        if !(norm2.is_finite() && norm2 > 0.0) {
            return Err(Error::Argument("state has zero or non-finite norm".into()));
        }
        let scale = norm2.sqrt();
        for m in &mut modes {
            m.amplitude /= scale;
        }
        Ok(Self {
            fundamental,
            boundary,
            modes,
        })
    }

    /// Fundamental periodicity of the cycle.
    pub fn fundamental(&self) -> &PeriodicityFourVector {
        &self.fundamental
    }

    /// Boundary condition.
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Modes in ascending index order.
    pub fn modes(&self) -> &[HarmonicMode] {
        &self.modes
    }

    /// Amplitude of mode `n` (zero when absent).
    pub fn amplitude(&self, n: i32) -> Complex64 {
        self.modes
            .iter()
            .find(|m| m.n == n)
            .map_or(Complex64::new(0.0, 0.0), |m| m.amplitude)
    }

    /// Squared norm of the coefficient vector.
    pub fn norm_sqr(&self) -> f64 {
        self.modes.iter().map(|m| m.amplitude.norm_sqr()).sum()
    }

    /// Energy of mode `n`: `(n + twist) h / T_t`. Negative indices carry
    /// negative frequencies.
    pub fn mode_energy(&self, n: i32, constants: &PhysicalConstants) -> f64 {
        (n as f64 + self.boundary.twist()) * constants.planck() / self.fundamental.time_period()
    }

    /// Momentum three-vector of mode `n`: `(n + twist) h / lambda_i`
    /// componentwise, zero along axes without a spatial cycle.
    pub fn mode_momentum(&self, n: i32, constants: &PhysicalConstants) -> [f64; 3] {
        let factor = n as f64 + self.boundary.twist();
        let h = constants.planck();
        let mut out = [0.0; 3];
        for (slot, w) in out.iter_mut().zip(self.fundamental.wavelengths(constants)) {
            if let Wavelength::Finite(lambda) = w {
                *slot = factor * h / lambda;
            }
        }
        out
    }

    /// Field value at a point of the spatial cycle, parametrized by the
    /// dimensionless fraction `x / lambda` of one period.
    pub fn evaluate(&self, fraction: f64) -> Complex64 {
        let v = self.boundary.twist();
        self.modes
            .iter()
            .map(|m| {
                m.amplitude
                    * Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * (m.n as f64 + v) * fraction,
                    )
            })
            .sum()
    }

    fn same_cycle(&self, other: &Self) -> bool {
        let a = self.fundamental.inverse_components();
        let b = other.fundamental.inverse_components();
        let scale = a[0].abs().max(b[0].abs());
        self.boundary.twist() == other.boundary.twist()
            && a.iter()
                .zip(b.iter())
                .all(|(x, y)| (x - y).abs() <= 1e-12 * scale)
    }
}

/// Local inner product of two states sharing a cycle,
/// `(1/lambda) * integral over one period of phi^* chi`, evaluated exactly on
/// mode coefficients by orthogonality.
///
/// `local_wavelength` is the window the continuum integral would run over;
/// the coefficient form does not depend on it beyond being positive.
pub fn inner_product(
    phi: &CyclicFieldState,
    chi: &CyclicFieldState,
    local_wavelength: f64,
) -> Result<Complex64> {
    if !(local_wavelength.is_finite() && local_wavelength > 0.0) {
        return Err(Error::Domain(format!(
            "window must be positive, got {local_wavelength}"
        )));
    }
    if !phi.same_cycle(chi) {
        return Err(Error::IncompatibleStates(
            "states do not share a fundamental periodicity".into(),
        ));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for m in &phi.modes {
        sum += m.amplitude.conj() * chi.amplitude(m.n);
    }
    Ok(sum)
}

/// Evolves the state by `dt`: each amplitude picks up
/// `exp(-i E_n dt / hbar)` with `E_n = (n + twist) h / T_t`. Exactly
/// norm-preserving up to the rounding of the unit phasor.
pub fn evolve(state: &CyclicFieldState, dt: f64) -> CyclicFieldState {
    let nu = 1.0 / state.fundamental.time_period();
    let v = state.boundary.twist();
    let modes = state
        .modes
        .iter()
        .map(|m| {
            let phase = -std::f64::consts::TAU * (m.n as f64 + v) * nu * dt;
            HarmonicMode {
                n: m.n,
                amplitude: m.amplitude * Complex64::from_polar(1.0, phase),
            }
        })
        .collect();
    CyclicFieldState {
        fundamental: state.fundamental,
        boundary: state.boundary,
        modes,
    }
}

/// Expectation values checking the canonical commutator identity for the
/// periodic observable `F(x) = exp(2 pi i k x / lambda)`.
///
/// Returns the pair `( <[F, P]>, i hbar <dF/dx> )`, computed along two
/// routes: the first shifts modes through the operator algebra
/// (`P phi_n = p_n phi_n`, `F phi_n = phi_(n+k)`), the second multiplies the
/// plain expectation of `F` by the c-number `i hbar * (2 pi i k / lambda)`.
/// Intrinsic periodicity cancels the boundary terms, so the two entries
/// agree identically.
pub fn commutator_expectation(
    state: &CyclicFieldState,
    k: i32,
    constants: &PhysicalConstants,
) -> Result<(Complex64, Complex64)> {
    let lambda = match state.fundamental.wavelengths(constants)[0] {
        Wavelength::Finite(l) => l,
        Wavelength::Infinite => {
            return Err(Error::Domain(
                "state has no spatial cycle along x (rest frame)".into(),
            ));
        }
    };
    let h = constants.planck();
    let v = state.boundary.twist();
    let momentum = |n: i32| (n as f64 + v) * h / lambda;

    // Route 1: <phi| (F P - P F) |phi> mode by mode.
    let mut operator_route = Complex64::new(0.0, 0.0);
    for m in &state.modes {
        let shifted = state.amplitude(m.n + k).conj();
        operator_route += shifted * m.amplitude * (momentum(m.n) - momentum(m.n + k));
    }

    // Route 2: i hbar <dF/dx> = i hbar (2 pi i k / lambda) <F>.
    let mut f_expect = Complex64::new(0.0, 0.0);
    for m in &state.modes {
        f_expect += state.amplitude(m.n + k).conj() * m.amplitude;
    }
    let hbar = constants.hbar();
    let derivative_route = Complex64::new(0.0, hbar)
        * Complex64::new(0.0, std::f64::consts::TAU * k as f64 / lambda)
        * f_expect;

    Ok((operator_route, derivative_route))
}

/// A sampled momentum profile `x -> p(x)` along a path, integrated by the
/// trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationProfile {
    samples: Vec<(f64, f64)>,
}

impl ModulationProfile {
    /// Builds a profile from `(x, p)` samples; the path parameter must be
    /// strictly increasing.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Profile("need at least two samples".into()));
        }
        for pair in samples.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::Profile(format!(
                    "path parameter must increase: {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if samples
            .iter()
            .any(|(x, p)| !x.is_finite() || !p.is_finite())
        {
            return Err(Error::Profile("non-finite sample".into()));
        }
        Ok(Self { samples })
    }

    /// Samples a function on `n + 1` uniform points of `[a, b]`.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 || b <= a {
            return Err(Error::Profile("empty sampling interval".into()));
        }
        let samples = (0..=n)
            .map(|i| {
                let x = a + (b - a) * i as f64 / n as f64;
                (x, f(x))
            })
            .collect();
        Self::from_samples(samples)
    }

    /// Start of the sampled path.
    pub fn start(&self) -> f64 {
        self.samples[0].0
    }

    /// End of the sampled path.
    pub fn end(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }

    /// Accumulated `integral of p dx` from the start to `x_end` (inside the
    /// sampled range), trapezoid rule with linear interpolation on the last
    /// partial segment.
    pub fn integral_to(&self, x_end: f64) -> Result<f64> {
        if !(x_end >= self.start() && x_end <= self.end()) {
            return Err(Error::Profile(format!(
                "x_end = {x_end} outside sampled range [{}, {}]",
                self.start(),
                self.end()
            )));
        }
        let mut acc = 0.0;
        for pair in self.samples.windows(2) {
            let (x0, p0) = pair[0];
            let (x1, p1) = pair[1];
            if x_end >= x1 {
                acc += 0.5 * (p0 + p1) * (x1 - x0);
            } else {
                if x_end > x0 {
                    let t = (x_end - x0) / (x1 - x0);
                    let p_end = p0 + t * (p1 - p0);
                    acc += 0.5 * (p0 + p_end) * (x_end - x0);
                }
                break;
            }
        }
        Ok(acc)
    }

    /// Accumulated integral over the whole sampled path.
    pub fn integral(&self) -> f64 {
        self.integral_to(self.end()).expect("end is in range")
    }

    /// Joins a second segment whose start coincides with this profile's end
    /// (same parameter and momentum value). The accumulator is additive over
    /// the concatenation.
    pub fn concat(&self, tail: &Self) -> Result<Self> {
        let (x_end, p_end) = *self.samples.last().expect("nonempty");
        let (x_start, p_start) = tail.samples[0];
        let x_scale = x_end.abs().max(x_start.abs()).max(1.0);
        let p_scale = p_end.abs().max(p_start.abs()).max(1.0);
        if (x_end - x_start).abs() > 1e-12 * x_scale || (p_end - p_start).abs() > 1e-12 * p_scale {
            return Err(Error::Profile(format!(
                "segments do not join: ({x_end}, {p_end}) vs ({x_start}, {p_start})"
            )));
        }
        let mut samples = self.samples.clone();
        samples.extend_from_slice(&tail.samples[1..]);
        Self::from_samples(samples)
    }
}

/// Unit phasor `exp(-(i/hbar) * integral of p dx)` accumulated along the
/// profile up to `x_end`; reduces to the plane-wave phase for a constant
/// profile.
pub fn modulated_phase(profile: &ModulationProfile, x_end: f64, hbar: f64) -> Result<Complex64> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
    }
    let action = profile.integral_to(x_end)?;
    Ok(Complex64::from_polar(1.0, -action / hbar))
}

/// The two faces of the Euclidean propagator trace on a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingComparison {
    /// `(1/L) * sum over modes |k| <= K of exp(-(2 pi k / L)^2 t)`.
    pub mode_sum: f64,
    /// `(4 pi t)^(-1/2) * sum over windings |w| <= W of exp(-(w L)^2 / 4t)`.
    pub winding_sum: f64,
    /// Absolute difference of the two truncated sums.
    pub difference: f64,
}

/// Evaluates the heat-kernel trace on a circle of circumference `L` at
/// diffusion time `t` through both the mode sum and the winding
/// (image-charge) sum. By Poisson summation the two agree once both tails
/// are below the cutoff truncation error.
pub fn winding_vs_mode_sum(l: f64, t: f64, k_cut: u32, w_cut: u32) -> Result<WindingComparison> {
    if !(l.is_finite() && l > 0.0 && t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!(
            "circumference and diffusion time must be positive, got L = {l}, t = {t}"
        )));
    }
    if k_cut < 1 || w_cut < 1 {
        return Err(Error::Argument("cutoffs must be at least 1".into()));
    }
    let mut mode = 1.0;
    for k in 1..=k_cut {
        let q = std::f64::consts::TAU * k as f64 / l;
        mode += 2.0 * (-q * q * t).exp();
    }
    mode /= l;
    let mut winding = 1.0;
    for w in 1..=w_cut {
        let d = w as f64 * l;
        winding += 2.0 * (-d * d / (4.0 * t)).exp();
    }
    winding /= (4.0 * std::f64::consts::PI * t).sqrt();
    Ok(WindingComparison {
        mode_sum: mode,
        winding_sum: winding,
        difference: (mode - winding).abs(),
    })
}

/// Deterministic cutoff choice: extend each sum until the next term falls
/// below `1e-16` of the running partial sum.
pub fn auto_cutoffs(l: f64, t: f64) -> Result<(u32, u32)> {
    if !(l.is_finite() && l > 0.0 && t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!(
            "circumference and diffusion time must be positive, got L = {l}, t = {t}"
        )));
    }
    let mut k_cut = 1;
    let mut partial = 1.0;
    for k in 1..100_000u32 {
        let q = std::f64::consts::TAU * k as f64 / l;
        let term = 2.0 * (-q * q * t).exp();
        k_cut = k;
        if term < 1e-16 * partial {
            break;
        }
        partial += term;
    }
    let mut w_cut = 1;
    let mut partial = 1.0;
    for w in 1..100_000u32 {
        let d = w as f64 * l;
        let term = 2.0 * (-d * d / (4.0 * t)).exp();
        w_cut = w;
        if term < 1e-16 * partial {
            break;
        }
        partial += term;
    }
    Ok((k_cut, w_cut))
}

/// [`winding_vs_mode_sum`] with the deterministic automatic cutoffs.
pub fn heat_kernel_duality(l: f64, t: f64) -> Result<WindingComparison> {
    let (k_cut, w_cut) = auto_cutoffs(l, t)?;
    winding_vs_mode_sum(l, t, k_cut, w_cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::FourMomentum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn natural() -> PhysicalConstants {
        PhysicalConstants::natural()
    }

    /// A moving-particle cycle in natural units with T_t = 1 and
    /// lambda_x = 2 (timelike: 1 > 1/4... contraction 1 - 1/4 > 0).
    fn moving_cycle() -> PeriodicityFourVector {
        let c = natural();
        PeriodicityFourVector::from_periods(
            1.0,
            [
                Wavelength::Finite(2.0),
                Wavelength::Infinite,
                Wavelength::Infinite,
            ],
            &c,
        )
        .unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn random_state(rng: &mut ChaCha8Rng, boundary: Boundary) -> CyclicFieldState {
        let n_modes = rng.gen_range(2..8);
        let modes = (0..n_modes)
            .map(|i| {
                (
                    i - 3,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        CyclicFieldState::new(moving_cycle(), boundary, modes).unwrap()
    }

    #[test]
    fn single_modes_are_orthonormal() {
        let phi =
            CyclicFieldState::new(moving_cycle(), Boundary::Periodic, vec![(1, re(1.0))]).unwrap();
        let chi =
            CyclicFieldState::new(moving_cycle(), Boundary::Periodic, vec![(2, re(1.0))]).unwrap();
        assert_eq!(inner_product(&phi, &chi, 2.0).unwrap(), re(0.0));
        assert_eq!(inner_product(&phi, &phi, 2.0).unwrap(), re(1.0));
    }

    #[test]
    fn normalized_state_has_unit_inner_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = random_state(&mut rng, Boundary::Periodic);
        let ip = inner_product(&phi, &phi, 2.0).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-14 && ip.im.abs() < 1e-16);
    }

    #[test]
    fn inner_product_matches_direct_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = random_state(&mut rng, Boundary::Periodic);
        let chi = random_state(&mut rng, Boundary::Periodic);
        let exact = inner_product(&phi, &chi, 2.0).unwrap();
        // Direct Riemann quadrature of (1/lambda) int phi* chi dx over one
        // period at 1e4 samples; for periodic integrands this converges
        // spectrally.
        let n = 10_000;
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let u = i as f64 / n as f64;
            sum += phi.evaluate(u).conj() * chi.evaluate(u);
        }
        sum /= n as f64;
        assert!(
            (sum - exact).norm() < 1e-8,
            "quadrature {sum} vs coefficients {exact}"
        );
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let phi = random_state(&mut rng, Boundary::Periodic);
            let chi = random_state(&mut rng, Boundary::Periodic);
            let ab = inner_product(&phi, &chi, 2.0).unwrap();
            let ba = inner_product(&chi, &phi, 2.0).unwrap();
            assert_eq!(ab, ba.conj());
        }
    }

    #[test]
    fn inner_product_rejects_mismatched_cycles() {
        let c = natural();
        let phi =
            CyclicFieldState::new(moving_cycle(), Boundary::Periodic, vec![(0, re(1.0))]).unwrap();
        let other = PeriodicityFourVector::from_periods(
            0.5,
            [
                Wavelength::Finite(2.0),
                Wavelength::Infinite,
                Wavelength::Infinite,
            ],
            &c,
        )
        .unwrap();
        let chi = CyclicFieldState::new(other, Boundary::Periodic, vec![(0, re(1.0))]).unwrap();
        assert!(matches!(
            inner_product(&phi, &chi, 2.0),
            Err(Error::IncompatibleStates(_))
        ));
    }

    #[test]
    fn evolve_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let phi = random_state(&mut rng, Boundary::Periodic);
        assert_eq!(evolve(&phi, 0.0), phi);
    }

    #[test]
    fn evolve_full_period_returns_periodic_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let phi = random_state(&mut rng, Boundary::Periodic);
        let t_t = phi.fundamental().time_period();
        let cycled = evolve(&phi, t_t);
        for (a, b) in phi.modes().iter().zip(cycled.modes()) {
            assert!((a.amplitude - b.amplitude).norm() < 1e-12);
        }
    }

    #[test]
    fn evolve_full_period_flips_antiperiodic_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let phi = random_state(&mut rng, Boundary::Antiperiodic);
        let t_t = phi.fundamental().time_period();
        let cycled = evolve(&phi, t_t);
        for (a, b) in phi.modes().iter().zip(cycled.modes()) {
            assert!(
                (a.amplitude + b.amplitude).norm() < 1e-12,
                "expected a global sign flip"
            );
        }
    }

    #[test]
    fn evolve_is_unitary_over_many_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut phi = random_state(&mut rng, Boundary::Periodic);
        let dt = 0.013;
        let mut previous = phi.norm_sqr();
        for _ in 0..10_000 {
            phi = evolve(&phi, dt);
            let now = phi.norm_sqr();
            assert!((now - previous).abs() < 1e-14, "per-step drift");
            previous = now;
        }
        assert!((phi.norm_sqr() - 1.0).abs() < 1e-12, "cumulative drift");
    }

    #[test]
    fn mode_four_momentum_scales_with_index_and_twist() {
        let c = natural();
        let phi = CyclicFieldState::new(moving_cycle(), Boundary::Antiperiodic, vec![(2, re(1.0))])
            .unwrap();
        // T_t = 1, lambda = 2, h = 2 pi: E_n = 2.5 h, p_n = 2.5 h / 2.
        assert!((phi.mode_energy(2, &c) - 2.5 * c.planck()).abs() < 1e-14);
        let p = phi.mode_momentum(2, &c);
        assert!((p[0] - 1.25 * c.planck()).abs() < 1e-14);
        assert_eq!(p[1], 0.0);
        // Negative indices carry negative frequencies.
        assert!(phi.mode_energy(-3, &c) < 0.0);
    }

    #[test]
    fn commutator_single_mode_vanishes() {
        let c = natural();
        let phi =
            CyclicFieldState::new(moving_cycle(), Boundary::Periodic, vec![(2, re(1.0))]).unwrap();
        let (lhs, rhs) = commutator_expectation(&phi, 1, &c).unwrap();
        assert_eq!(lhs, Complex64::new(0.0, 0.0));
        assert_eq!(rhs.norm(), 0.0);
    }

    #[test]
    fn commutator_two_mode_reference_value() {
        let c = natural();
        let amp = 1.0 / 2.0f64.sqrt();
        let phi = CyclicFieldState::new(
            moving_cycle(),
            Boundary::Periodic,
            vec![(0, re(amp)), (1, re(amp))],
        )
        .unwrap();
        let (lhs, rhs) = commutator_expectation(&phi, 1, &c).unwrap();
        // -(h/lambda) * conj(a_1) a_0 with h = 2 pi, lambda = 2.
        let expected = -(c.planck() / 2.0) * 0.5;
        assert!((lhs.re - expected).abs() < 1e-14 && lhs.im.abs() < 1e-14);
        assert!((rhs - lhs).norm() < 1e-14);
    }

    #[test]
    fn commutator_identity_over_random_states() {
        let c = natural();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let phi = random_state(&mut rng, Boundary::Periodic);
            for k in -3..=3 {
                let (lhs, rhs) = commutator_expectation(&phi, k, &c).unwrap();
                worst = worst.max((lhs - rhs).norm());
            }
        }
        assert!(worst < 1e-12, "max deviation {worst}");
    }

    #[test]
    fn commutator_needs_a_spatial_cycle() {
        let c = natural();
        let rest =
            PeriodicityFourVector::from_momentum(&FourMomentum::at_rest(1.0, &c).unwrap(), &c);
        let phi = CyclicFieldState::new(rest, Boundary::Periodic, vec![(0, re(1.0))]).unwrap();
        assert!(matches!(
            commutator_expectation(&phi, 1, &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn modulated_phase_constant_profile_is_plane_wave() {
        let p0 = 1.7;
        let len = 3.0;
        let profile = ModulationProfile::from_fn(|_| p0, 0.0, len, 8).unwrap();
        let phase = modulated_phase(&profile, len, 1.0).unwrap();
        let expected = Complex64::from_polar(1.0, -p0 * len);
        assert!((phase - expected).norm() < 1e-14);
    }

    #[test]
    fn modulated_phase_multiplies_over_concatenation() {
        let f = |x: f64| 0.4 + 0.3 * x;
        let a = ModulationProfile::from_fn(f, 0.0, 1.0, 64).unwrap();
        let b = ModulationProfile::from_fn(f, 1.0, 2.5, 96).unwrap();
        let joined = a.concat(&b).unwrap();
        let pa = modulated_phase(&a, 1.0, 1.0).unwrap();
        let pb = modulated_phase(&b, 2.5, 1.0).unwrap();
        let pj = modulated_phase(&joined, 2.5, 1.0).unwrap();
        assert!((pj - pa * pb).norm() < 1e-13);
    }

    #[test]
    fn modulated_phase_linear_profile_vs_riemann_sum() {
        // p(x) = p0 (1 + x/L) on [0, L]: integral = (3/2) p0 L.
        let p0 = 0.9;
        let len = 2.0;
        let profile = ModulationProfile::from_fn(|x| p0 * (1.0 + x / len), 0.0, len, 512).unwrap();
        let phase = modulated_phase(&profile, len, 1.0).unwrap();

        // Independent 1e6-step midpoint Riemann sum of the analytic profile.
        let steps = 1_000_000;
        let dx = len / steps as f64;
        let mut action = 0.0;
        for i in 0..steps {
            let x = (i as f64 + 0.5) * dx;
            action += p0 * (1.0 + x / len) * dx;
        }
        let oracle = Complex64::from_polar(1.0, -action);
        let analytic = Complex64::from_polar(1.0, -1.5 * p0 * len);
        assert!((phase - analytic).norm() < 1e-12);
        assert!((phase - oracle).norm() < 1e-9);
    }

    #[test]
    fn profile_rejects_non_monotone_path() {
        let out = ModulationProfile::from_samples(vec![(0.0, 1.0), (1.0, 1.0), (0.5, 1.0)]);
        assert!(matches!(out, Err(Error::Profile(_))));
    }

    #[test]
    fn winding_and_mode_sums_agree_on_reference_point() {
        let out = winding_vs_mode_sum(std::f64::consts::TAU, 1.0, 8, 8).unwrap();
        // Both faces evaluate to the same theta value; reference computed
        // from the two independent sums at high precision.
        assert!((out.mode_sum - 0.282123973456762).abs() < 1e-14);
        assert!(out.difference < 1e-12);
    }

    #[test]
    fn long_time_limit_keeps_only_the_zero_mode() {
        let l = 3.0;
        let out = winding_vs_mode_sum(l, 50.0, 8, 8).unwrap();
        assert!((out.mode_sum - 1.0 / l).abs() < 1e-15);
        // At large t the winding face needs many images; the automatic
        // cutoffs restore the duality.
        let balanced = heat_kernel_duality(l, 50.0).unwrap();
        assert!(balanced.difference < 1e-12);
    }

    #[test]
    fn heat_kernel_scaling_relation() {
        // K(sL, s^2 t) = K(L, t) / s.
        let (l, t, s) = (2.5, 0.8, 2.0);
        let base = heat_kernel_duality(l, t).unwrap();
        let scaled = heat_kernel_duality(s * l, s * s * t).unwrap();
        assert!((scaled.mode_sum - base.mode_sum / s).abs() < 1e-14);
        assert!((scaled.winding_sum - base.winding_sum / s).abs() < 1e-14);
    }

    #[test]
    fn winding_rejects_degenerate_input() {
        assert!(matches!(
            winding_vs_mode_sum(0.0, 1.0, 4, 4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            winding_vs_mode_sum(1.0, 1.0, 0, 4),
            Err(Error::Argument(_))
        ));
    }
}
