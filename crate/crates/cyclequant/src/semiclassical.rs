//! The quantization engine: energy levels from the periodicity condition
//! `J(E) = closed integral of p dx = h (n + v)`.
//!
//! For each trial energy the classical region is located (two smooth turning
//! points, a hard wall plus a turning point, or two walls), the action is
//! integrated with a substitution that removes the square-root endpoint
//! singularities, and the level is found by bracketing plus bisection/secant
//! refinement on the strictly increasing `J(E)`.

use crate::numerics::gauss_legendre;
use crate::potentials::{PotentialKind, PotentialModel};
use crate::spectrum::{EnergyLevel, Method, Spectrum};
use crate::{Error, Result};

/// How an edge of the classical region terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurningPointKind {
    /// `V(x) = E` with finite slope; integrable square-root singularity.
    Smooth,
    /// Hard wall; the momentum stays finite there.
    Wall,
}

/// One edge of the classically allowed region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint {
    /// Coordinate of the edge.
    pub x: f64,
    /// Edge type.
    pub kind: TurningPointKind,
}

/// The classically allowed region `x_minus < x < x_plus` at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalRegion {
    /// Lower edge.
    pub lower: TurningPoint,
    /// Upper edge.
    pub upper: TurningPoint,
}

impl ClassicalRegion {
    /// The pair `(x_minus, x_plus)`.
    pub fn points(&self) -> (f64, f64) {
        (self.lower.x, self.upper.x)
    }
}

/// Quadrature result for the action `J(E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionResult {
    /// `J(E) = 2 * integral of sqrt(2 m (E - V)) dx` over the region.
    pub action: f64,
    /// `(x_minus, x_plus)`.
    pub turning_points: (f64, f64),
    /// Difference between the working rule and one of half the order.
    pub quadrature_error_estimate: f64,
}

/// Parameters of the quantization condition `J(E_n) = h (n + v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationRule {
    /// Morse index `v` in `[0, 1)`.
    pub morse_index: f64,
    /// Reduced Planck constant; the target uses `h = 2 pi hbar`.
    pub hbar: f64,
    /// Relative tolerance on `|J(E) - h (n + v)| / h`.
    pub root_tolerance: f64,
    /// Gauss-Legendre points for the action quadrature.
    pub quadrature_points: usize,
}

impl QuantizationRule {
    /// Validated constructor; the tolerance must lie in `(0, 1e-4]` and the
    /// quadrature order must be at least 16.
    pub fn new(
        morse_index: f64,
        hbar: f64,
        root_tolerance: f64,
        quadrature_points: usize,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&morse_index) {
            return Err(Error::Argument(format!(
                "Morse index must lie in [0, 1), got {morse_index}"
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Argument(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if !(root_tolerance > 0.0 && root_tolerance <= 1e-4) {
            return Err(Error::Argument(format!(
                "root tolerance must lie in (0, 1e-4], got {root_tolerance}"
            )));
        }
        if quadrature_points < 16 {
            return Err(Error::Argument(format!(
                "need at least 16 quadrature points, got {quadrature_points}"
            )));
        }
        Ok(Self {
            morse_index,
            hbar,
            root_tolerance,
            quadrature_points,
        })
    }

    /// Natural-unit defaults with the Morse index matched to the
    /// potential's turning-point structure.
    pub fn for_potential(potential: &PotentialModel) -> Self {
        Self {
            morse_index: potential.default_morse(),
            hbar: 1.0,
            root_tolerance: 1e-10,
            quadrature_points: 128,
        }
    }

    /// The target's Planck constant `h = 2 pi hbar`.
    pub fn planck(&self) -> f64 {
        std::f64::consts::TAU * self.hbar
    }
}

const SCAN_HALF_POINTS: usize = 2048;

/// Classical turning points of `V` at energy `E`.
///
/// The domain is scanned outward from the potential minimum and each sign
/// change of `V - E` is refined by bisection; a hard wall bounds the region
/// wherever the motion reaches it. More than two edges is reported as an
/// unsupported multi-well configuration.
pub fn turning_points(potential: &PotentialModel, energy: f64) -> Result<ClassicalRegion> {
    let (x_min, v_min) = potential.minimum();
    if energy <= v_min || energy.is_nan() {
        return Err(Error::NoClassicalMotion { energy, v_min });
    }
    if let PotentialKind::CoulombRadial { z, l, langer } = potential.kind() {
        return coulomb_turning_points(potential, energy, *z, *l, *langer);
    }

    let (lo, hi) = potential.domain();
    let inset = (hi - lo) * 1e-12;
    let (a, b) = (lo + inset, hi - inset);
    let x_mid = x_min.clamp(a, b);
    let f = |x: f64| -> Result<f64> { Ok(potential.evaluate(x)? - energy) };
    if f(x_mid)? >= 0.0 {
        return Err(Error::NoClassicalMotion { energy, v_min });
    }

    let wall_at = |x: f64| {
        potential
            .walls()
            .iter()
            .any(|w| (w - x).abs() <= 2.0 * inset.max(f64::MIN_POSITIVE))
    };

    // Walk each half of the domain away from the minimum and collect the
    // sign changes of V - E.
    let mut crossings_left = scan_crossings(&f, a, x_mid, SCAN_HALF_POINTS)?;
    let crossings_right = scan_crossings(&f, x_mid, b, SCAN_HALF_POINTS)?;
    let total = crossings_left.len() + crossings_right.len();
    if total > 2 {
        return Err(Error::MultiWell(total));
    }

    let lower = if let Some(bracket) = crossings_left.pop() {
        if crossings_left.is_empty() {
            TurningPoint {
                x: refine_crossing(&f, bracket)?,
                kind: TurningPointKind::Smooth,
            }
        } else {
            return Err(Error::MultiWell(total));
        }
    } else if wall_at(lo) && f(a)? < 0.0 {
        TurningPoint {
            x: lo,
            kind: TurningPointKind::Wall,
        }
    } else {
        return Err(Error::Domain(format!(
            "classical region reaches the domain edge at x = {lo} without a wall"
        )));
    };

    let upper = if let Some(bracket) = crossings_right.first().copied() {
        if crossings_right.len() == 1 {
            TurningPoint {
                x: refine_crossing(&f, bracket)?,
                kind: TurningPointKind::Smooth,
            }
        } else {
            return Err(Error::MultiWell(total));
        }
    } else if wall_at(hi) && f(b)? < 0.0 {
        TurningPoint {
            x: hi,
            kind: TurningPointKind::Wall,
        }
    } else {
        return Err(Error::Domain(format!(
            "classical region reaches the domain edge at x = {hi} without a wall"
        )));
    };

    if lower.x >= upper.x {
        return Err(Error::Consistency(format!(
            "degenerate classical region [{}, {}]",
            lower.x, upper.x
        )));
    }
    Ok(ClassicalRegion { lower, upper })
}

/// Brackets where `f` changes sign on a uniform walk from `a` to `b`.
fn scan_crossings<F: Fn(f64) -> Result<f64>>(
    f: &F,
    a: f64,
    b: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    if b <= a {
        return Ok(out);
    }
    let mut x_prev = a;
    let mut f_prev = f(a)?;
    for i in 1..=steps {
        let x = a + (b - a) * i as f64 / steps as f64;
        let fx = f(x)?;
        if f_prev.signum() != fx.signum() && (f_prev != 0.0 || fx != 0.0) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(out)
}

fn refine_crossing<F: Fn(f64) -> Result<f64>>(f: &F, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let mut f_lo = f(lo)?;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if (f_lo <= 0.0) == (fm <= 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Analytic turning points of the effective radial Coulomb potential; the
/// condition `V_eff(r) = E` is a quadratic in `r`.
fn coulomb_turning_points(
    potential: &PotentialModel,
    energy: f64,
    z: f64,
    l: u32,
    langer: bool,
) -> Result<ClassicalRegion> {
    if energy >= 0.0 {
        return Err(Error::Domain(format!(
            "no bound radial orbit at E = {energy} >= 0"
        )));
    }
    let lf = l as f64;
    let cf = if langer {
        (lf + 0.5) * (lf + 0.5)
    } else {
        (lf * (lf + 1.0)).max(0.25)
    };
    let disc = z * z + 2.0 * energy * cf;
    if disc <= 0.0 {
        let (_, v_min) = potential.minimum();
        return Err(Error::NoClassicalMotion { energy, v_min });
    }
    let sqrt_disc = disc.sqrt();
    let r_minus = (-z + sqrt_disc) / (2.0 * energy);
    let r_plus = (-z - sqrt_disc) / (2.0 * energy);
    let (lo, hi) = potential.domain();
    if r_minus < lo || r_plus > hi {
        return Err(Error::Domain(format!(
            "radial turning points [{r_minus}, {r_plus}] leave the domain [{lo}, {hi}]"
        )));
    }
    Ok(ClassicalRegion {
        lower: TurningPoint {
            x: r_minus,
            kind: TurningPointKind::Smooth,
        },
        upper: TurningPoint {
            x: r_plus,
            kind: TurningPointKind::Smooth,
        },
    })
}

/// Action integral `J(E) = 2 * integral of sqrt(2 m (E - V(x))) dx` over the
/// classical region.
///
/// Smooth turning points are absorbed by `x = c + r sin(theta)` (two smooth
/// edges) or `x = x_wall_side + width s^2` (one wall), which turns the
/// square-root behavior into an analytic integrand for Gauss-Legendre. A
/// pair of walls needs no substitution. The error estimate compares the
/// working order with half of it.
pub fn action_integral(
    potential: &PotentialModel,
    energy: f64,
    mass: f64,
    quadrature_points: usize,
) -> Result<ActionResult> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {mass}")));
    }
    let region = turning_points(potential, energy)?;
    let coarse = action_on_region(potential, energy, mass, &region, quadrature_points / 2)?;
    let fine = action_on_region(potential, energy, mass, &region, quadrature_points)?;
    Ok(ActionResult {
        action: fine,
        turning_points: region.points(),
        quadrature_error_estimate: (fine - coarse).abs(),
    })
}

fn action_on_region(
    potential: &PotentialModel,
    energy: f64,
    mass: f64,
    region: &ClassicalRegion,
    points: usize,
) -> Result<f64> {
    let (x_minus, x_plus) = region.points();
    let momentum = |x: f64| -> Result<f64> {
        let v = potential.evaluate(x)?;
        let k = 2.0 * mass * (energy - v);
        if k < -1e-10 * (1.0 + energy.abs()) * 2.0 * mass {
            return Err(Error::Consistency(format!(
                "E - V negative inside the classical region at x = {x}"
            )));
        }
        Ok(k.max(0.0).sqrt())
    };
    let (nodes, weights) = gauss_legendre(points.max(8));
    let mut sum = 0.0;
    use TurningPointKind::{Smooth, Wall};
    match (region.lower.kind, region.upper.kind) {
        (Smooth, Smooth) => {
            // x = c + r sin(theta); the momentum vanishes like cos(theta)
            // at both ends, cancelling the Jacobian's endpoint zeros.
            let c = 0.5 * (x_minus + x_plus);
            let r = 0.5 * (x_plus - x_minus);
            let half = std::f64::consts::FRAC_PI_2;
            for (u, w) in nodes.iter().zip(weights.iter()) {
                let theta = half * u;
                let x = c + r * theta.sin();
                sum += w * momentum(x)? * r * theta.cos();
            }
            sum *= half;
        }
        (Wall, Smooth) => {
            // x = x_plus - D s^2 maps s in [0, 1]; sqrt(x_plus - x) ~ s.
            let width = x_plus - x_minus;
            for (u, w) in nodes.iter().zip(weights.iter()) {
                let s = 0.5 * (u + 1.0);
                let x = x_plus - width * s * s;
                sum += w * momentum(x)? * 2.0 * width * s;
            }
            sum *= 0.5;
        }
        (Smooth, Wall) => {
            let width = x_plus - x_minus;
            for (u, w) in nodes.iter().zip(weights.iter()) {
                let s = 0.5 * (u + 1.0);
                let x = x_minus + width * s * s;
                sum += w * momentum(x)? * 2.0 * width * s;
            }
            sum *= 0.5;
        }
        (Wall, Wall) => {
            let c = 0.5 * (x_minus + x_plus);
            let r = 0.5 * (x_plus - x_minus);
            for (u, w) in nodes.iter().zip(weights.iter()) {
                sum += w * momentum(c + r * u)? * r;
            }
        }
    }
    Ok(2.0 * sum)
}

/// Solves `J(E_n) = h (n + v)` for one level.
///
/// The root is bracketed by geometric expansion from just above the
/// potential minimum (capped by the potential value at non-wall domain
/// edges), narrowed by bisection to 1e-3 relative width, and polished by
/// bracket-safeguarded secant steps until the action residual meets the
/// rule tolerance.
pub fn quantize_level(
    potential: &PotentialModel,
    n: u32,
    rule: &QuantizationRule,
    mass: f64,
) -> Result<EnergyLevel> {
    let target = rule.planck() * (n as f64 + rule.morse_index);
    if target <= 0.0 {
        return Err(Error::Argument(format!(
            "quantization target h (n + v) must be positive; n = {n}, v = {}",
            rule.morse_index
        )));
    }
    let action = |e: f64| -> Result<f64> {
        Ok(action_integral(potential, e, mass, rule.quadrature_points)?.action)
    };
    let (_, v_min) = potential.minimum();
    let cap = energy_cap(potential)?;

    // Geometric expansion of the energy fraction above the minimum.
    let span = if cap.is_finite() {
        cap - v_min
    } else {
        v_min.abs().max(1.0)
    };
    let mut frac = 1e-9;
    let mut e_lo = v_min + frac * span;
    if action(e_lo)? >= target {
        // Ground target already below the first probe; tighten the floor.
        e_lo = v_min + 1e-15 * span;
        if action(e_lo)? >= target {
            return Err(Error::UnboundedSpectrum(format!(
                "action at the potential floor already exceeds h (n + v) = {target}"
            )));
        }
    }
    let mut e_hi = e_lo;
    let mut found = false;
    for _ in 0..200 {
        frac = if cap.is_finite() {
            // Double toward the cap, then halve the remaining gap.
            if frac < 0.5 {
                frac * 2.0
            } else {
                0.5 * (1.0 + frac)
            }
        } else {
            frac * 2.0
        };
        if cap.is_finite() && 1.0 - frac < 1e-13 {
            break;
        }
        let e = v_min + frac * span;
        if action(e)? >= target {
            e_hi = e;
            found = true;
            break;
        }
        e_lo = e;
    }
    if !found {
        return Err(Error::UnboundedSpectrum(format!(
            "could not bracket J(E) = {target} within the potential domain"
        )));
    }

    // Bisection to 1e-3 relative width.
    let g = |e: f64| -> Result<f64> { Ok(action(e)? - target) };
    let mut lo = e_lo;
    let mut hi = e_hi;
    let mut g_lo = g(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= 1e-3 * mid.abs().max(1e-300) {
            break;
        }
        let gm = g(mid)?;
        if (g_lo <= 0.0) == (gm <= 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }

    // Secant refinement, falling back to bisection when a step leaves the
    // bracket.
    let f_tol = rule.root_tolerance * rule.planck();
    let g_hi = g(hi)?;
    let (mut x0, mut x1) = (lo, hi);
    let (mut g0, mut g1) = (g_lo, g_hi);
    let mut best = (hi, g_hi.abs());
    for _ in 0..80 {
        if g1.abs() <= f_tol {
            best = (x1, g1.abs());
            break;
        }
        let denom = g1 - g0;
        let mut x2 = if denom != 0.0 {
            x1 - g1 * (x1 - x0) / denom
        } else {
            0.5 * (lo + hi)
        };
        if !(x2 > lo && x2 < hi) {
            x2 = 0.5 * (lo + hi);
        }
        let g2 = g(x2)?;
        if g2.abs() < best.1 {
            best = (x2, g2.abs());
        }
        if (g_lo <= 0.0) == (g2 <= 0.0) {
            lo = x2;
            g_lo = g2;
        } else {
            hi = x2;
        }
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g2;
        if (hi - lo).abs() <= f64::EPSILON * hi.abs().max(1e-300) {
            break;
        }
    }
    let (energy, residual) = best;
    if residual > f_tol {
        return Err(Error::UnboundedSpectrum(format!(
            "root refinement stalled: residual {residual} above tolerance {f_tol}"
        )));
    }
    Ok(EnergyLevel {
        n,
        energy,
        method: Method::Semiclassical,
        residual,
    })
}

/// Largest energy whose turning points are guaranteed inside the domain:
/// the potential value at non-wall domain edges (infinite when both edges
/// are walls).
fn energy_cap(potential: &PotentialModel) -> Result<f64> {
    let (lo, hi) = potential.domain();
    let inset = (hi - lo) * 1e-12;
    let mut cap = f64::INFINITY;
    for (edge, probe) in [(lo, lo + inset), (hi, hi - inset)] {
        let walled = potential.walls().iter().any(|w| (w - edge).abs() <= inset);
        if !walled {
            cap = cap.min(potential.evaluate(probe)?);
        }
    }
    Ok(cap)
}

/// Confirms `dJ/dE > 0` at a solved level by central finite differences.
fn check_action_slope(
    potential: &PotentialModel,
    level: &EnergyLevel,
    rule: &QuantizationRule,
    mass: f64,
) -> Result<()> {
    let delta = 1e-6 * level.energy.abs().max(1e-9);
    let j_plus = action_integral(
        potential,
        level.energy + delta,
        mass,
        rule.quadrature_points,
    )?;
    let j_minus = action_integral(
        potential,
        level.energy - delta,
        mass,
        rule.quadrature_points,
    )?;
    if j_plus.action <= j_minus.action {
        return Err(Error::Consistency(format!(
            "dJ/dE not positive at E_{} = {}",
            level.n, level.energy
        )));
    }
    Ok(())
}

/// Levels `first..=first + n_max` of the potential (`first` is 1 between two
/// walls, 0 otherwise), each checked for a positive `dJ/dE` slope.
pub fn spectrum(
    potential: &PotentialModel,
    n_max: u32,
    rule: &QuantizationRule,
    mass: f64,
) -> Result<Spectrum> {
    let first = potential.first_index();
    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for n in first..=first + n_max {
        let level = quantize_level(potential, n, rule, mass)?;
        check_action_slope(potential, &level, rule, mass)?;
        levels.push(level);
    }
    Spectrum::new(levels)
}

/// Hydrogen-like spectrum from the Langer-corrected radial action, labeled
/// by the principal quantum number `n = n_r + l + 1` (atomic units).
pub fn coulomb_spectrum(z: f64, n_max: u32, l: u32) -> Result<Spectrum> {
    if n_max < 1 {
        return Err(Error::Argument("n_max must be at least 1".into()));
    }
    if l >= n_max {
        return Err(Error::Argument(format!(
            "no bound level: l = {l} requires a principal number above {l}, have n_max = {n_max}"
        )));
    }
    let potential = PotentialModel::coulomb_radial(z, l)?;
    let rule = QuantizationRule {
        morse_index: 0.5,
        hbar: 1.0,
        root_tolerance: 1e-10,
        quadrature_points: 128,
    };
    let mut levels = Vec::new();
    for n in (l + 1)..=n_max {
        let radial = n - l - 1;
        let mut level = quantize_level(&potential, radial, &rule, 1.0)?;
        check_action_slope(&potential, &level, &rule, 1.0)?;
        level.n = n;
        levels.push(level);
    }
    Spectrum::new(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic() -> PotentialModel {
        PotentialModel::harmonic(1.0, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn harmonic_turning_points_at_unit_energy() {
        let region = turning_points(&harmonic(), 0.5).unwrap();
        let (lo, hi) = region.points();
        assert!((lo + 1.0).abs() < 1e-10 && (hi - 1.0).abs() < 1e-10);
        assert_eq!(region.lower.kind, TurningPointKind::Smooth);
    }

    #[test]
    fn linear_turning_points_wall_plus_smooth() {
        let v = PotentialModel::linear(1.0, 1.0).unwrap();
        let region = turning_points(&v, 2.0).unwrap();
        assert_eq!(region.lower.kind, TurningPointKind::Wall);
        assert_eq!(region.lower.x, 0.0);
        assert!((region.upper.x - 2.0).abs() < 1e-10);
    }

    #[test]
    fn quartic_turning_points_match_grid_scan_oracle() {
        let v = PotentialModel::anharmonic(1.0, 1.0, 0.1).unwrap();
        let region = turning_points(&v, 1.0).unwrap();
        // Independent fine-grid scan plus interval halving on
        // 0.5 x^2 + 0.1 x^4 - 1.
        let f = |x: f64| 0.5 * x * x + 0.1 * x.powi(4) - 1.0;
        let mut oracle = Vec::new();
        let (mut x_prev, mut f_prev) = (-3.0, f(-3.0));
        for i in 1..=600_000 {
            let x = -3.0 + 6.0 * i as f64 / 600_000.0;
            let fx = f(x);
            if f_prev.signum() != fx.signum() {
                let (mut a, mut b) = (x_prev, x);
                for _ in 0..80 {
                    let m = 0.5 * (a + b);
                    if (f(a) <= 0.0) == (f(m) <= 0.0) {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                oracle.push(0.5 * (a + b));
            }
            x_prev = x;
            f_prev = fx;
        }
        assert_eq!(oracle.len(), 2);
        assert!((region.lower.x - oracle[0]).abs() < 1e-10);
        assert!((region.upper.x - oracle[1]).abs() < 1e-10);
    }

    #[test]
    fn below_minimum_is_rejected() {
        assert!(matches!(
            turning_points(&harmonic(), 0.0),
            Err(Error::NoClassicalMotion { .. })
        ));
        assert!(matches!(
            turning_points(&harmonic(), -1.0),
            Err(Error::NoClassicalMotion { .. })
        ));
    }

    #[test]
    fn double_well_is_rejected() {
        // Tabulated W shape: two wells at +-1.5.
        let xs: Vec<f64> = (0..=400).map(|i| -3.0 + 6.0 * i as f64 / 400.0).collect();
        let vs: Vec<f64> = xs.iter().map(|x| (x * x - 2.25).powi(2) / 4.0).collect();
        let v = PotentialModel::tabulated(xs, vs).unwrap();
        assert!(matches!(turning_points(&v, 0.4), Err(Error::MultiWell(_))));
    }

    #[test]
    fn harmonic_action_is_two_pi_e() {
        let v = harmonic();
        for e in [0.5, 1.5, 7.5] {
            let out = action_integral(&v, e, 1.0, 128).unwrap();
            assert!(
                rel(out.action, std::f64::consts::TAU * e) < 1e-10,
                "J({e}) = {}",
                out.action
            );
            assert!(out.quadrature_error_estimate < 1e-9);
        }
    }

    #[test]
    fn linear_action_closed_form() {
        let v = PotentialModel::linear(1.0, 1.0).unwrap();
        let e = 1.0;
        let out = action_integral(&v, e, 1.0, 128).unwrap();
        let exact = 4.0 * 2.0f64.sqrt() / 3.0 * e.powf(1.5);
        assert!(rel(out.action, exact) < 1e-10, "J = {}", out.action);
    }

    #[test]
    fn box_action_is_exact() {
        let l = std::f64::consts::PI;
        let v = PotentialModel::square_box(l).unwrap();
        let e = 2.0;
        let out = action_integral(&v, e, 1.0, 64).unwrap();
        let exact = 2.0 * l * (2.0 * e).sqrt();
        assert!(rel(out.action, exact) < 1e-13);
    }

    #[test]
    fn harmonic_levels_are_half_integers() {
        let v = harmonic();
        let rule = QuantizationRule::for_potential(&v);
        assert_eq!(rule.morse_index, 0.5);
        let e0 = quantize_level(&v, 0, &rule, 1.0).unwrap();
        let e3 = quantize_level(&v, 3, &rule, 1.0).unwrap();
        assert!(rel(e0.energy, 0.5) < 1e-10, "E0 = {}", e0.energy);
        assert!(rel(e3.energy, 3.5) < 1e-10, "E3 = {}", e3.energy);
        assert!(e0.residual / rule.planck() < rule.root_tolerance);
    }

    #[test]
    fn linear_ground_level_three_quarter_index() {
        let v = PotentialModel::linear(1.0, 1.0).unwrap();
        let rule = QuantizationRule::for_potential(&v);
        assert_eq!(rule.morse_index, 0.75);
        let e0 = quantize_level(&v, 0, &rule, 1.0).unwrap();
        assert!(
            rel(e0.energy, 1.841_584_276_176_433) < 1e-9,
            "E0 = {}",
            e0.energy
        );
    }

    #[test]
    fn box_levels_quadratic_from_one() {
        let v = PotentialModel::square_box(std::f64::consts::PI).unwrap();
        let rule = QuantizationRule::for_potential(&v);
        let s = spectrum(&v, 4, &rule, 1.0).unwrap();
        for level in s.levels() {
            let exact = 0.5 * (level.n as f64) * (level.n as f64);
            assert!(rel(level.energy, exact) < 1e-10, "n = {}", level.n);
        }
        assert_eq!(s.levels()[0].n, 1);
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn harmonic_spectrum_ten_levels() {
        let v = harmonic();
        let rule = QuantizationRule::for_potential(&v);
        let s = spectrum(&v, 9, &rule, 1.0).unwrap();
        for level in s.levels() {
            assert!(rel(level.energy, level.n as f64 + 0.5) < 1e-9);
        }
    }

    #[test]
    fn residuals_meet_rule_tolerance() {
        let v = PotentialModel::anharmonic(1.0, 1.0, 0.01).unwrap();
        let rule = QuantizationRule::for_potential(&v);
        let s = spectrum(&v, 5, &rule, 1.0).unwrap();
        for level in s.levels() {
            assert!(level.residual / rule.planck() < rule.root_tolerance);
        }
    }

    #[test]
    fn coulomb_levels_match_rydberg_to_1e8() {
        for l in 0..3u32 {
            let s = coulomb_spectrum(1.0, 3, l).unwrap();
            for level in s.levels() {
                let exact = -0.5 / (level.n as f64 * level.n as f64);
                assert!(
                    ((level.energy - exact) / exact).abs() < 1e-8,
                    "n = {}, l = {l}: {} vs {exact}",
                    level.n,
                    level.energy
                );
            }
        }
    }

    #[test]
    fn coulomb_z2_scaling() {
        let h1 = coulomb_spectrum(1.0, 1, 0).unwrap();
        let he = coulomb_spectrum(2.0, 1, 0).unwrap();
        let ratio = he.level(1).unwrap().energy / h1.level(1).unwrap().energy;
        assert!(rel(ratio, 4.0) < 1e-8);
    }

    #[test]
    fn coulomb_rejects_l_at_or_above_n_max() {
        assert!(matches!(
            coulomb_spectrum(1.0, 2, 2),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn rule_validation() {
        assert!(QuantizationRule::new(0.5, 1.0, 1e-10, 64).is_ok());
        assert!(QuantizationRule::new(1.0, 1.0, 1e-10, 64).is_err());
        assert!(QuantizationRule::new(0.5, 1.0, 1e-3, 64).is_err());
        assert!(QuantizationRule::new(0.5, 1.0, 1e-10, 8).is_err());
    }

    #[test]
    fn linear_error_vs_airy_oracle_decreases_in_n() {
        // Dirichlet levels of V = x on the half line relate to the negated
        // Airy zeros as E_n = a_(n+1) / 2^(1/3); zeros from published
        // tables.
        let airy_zeros = [
            2.338_107_410_459_767,
            4.087_949_444_130_97,
            5.520_559_828_095_551,
            6.786_708_090_071_759,
            7.944_133_587_120_853,
            9.022_650_853_340_98,
            10.040_174_341_558_085,
            11.008_524_303_733_262,
            11.936_015_563_236_262,
            12.828_776_752_865_757,
        ];
        let v = PotentialModel::linear(1.0, 1.0).unwrap();
        let rule = QuantizationRule::for_potential(&v);
        let s = spectrum(&v, 9, &rule, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for (i, level) in s.levels().iter().enumerate() {
            let exact = airy_zeros[i] / 2.0f64.cbrt();
            let err = ((level.energy - exact) / exact).abs();
            assert!(err < prev, "error not decreasing at n = {i}");
            prev = err;
        }
        // Endpoints of the accuracy claim.
        let e0 = s.levels()[0].energy;
        let e9 = s.levels()[9].energy;
        assert!(rel(e0, airy_zeros[0] / 2.0f64.cbrt()) < 0.01);
        assert!(rel(e9, airy_zeros[9] / 2.0f64.cbrt()) < 5e-4);
    }
}
