//! Independent spectral oracle: central finite differences for the 1D
//! time-independent Schrödinger equation and a self-contained
//! symmetric-tridiagonal eigensolver (Sturm-sequence counting plus
//! bisection).
//!
//! The oracle shares nothing with the semiclassical engine beyond the
//! potential itself, so agreement between the two is a real cross-check.

use crate::potentials::PotentialModel;
use crate::spectrum::{EnergyLevel, Method, Spectrum};
use crate::{Error, Result};

/// Uniform Dirichlet grid with `n_interior` interior points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    n_interior: usize,
}

impl GridSpec {
    /// Validated constructor; production grids use at least 64 interior
    /// points.
    pub fn new(x_min: f64, x_max: f64, n_interior: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::Grid(format!("invalid interval [{x_min}, {x_max}]")));
        }
        if n_interior < 64 {
            return Err(Error::Grid(format!(
                "need at least 64 interior points, got {n_interior}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_interior,
        })
    }

    #[cfg(test)]
    pub(crate) fn raw(x_min: f64, x_max: f64, n_interior: usize) -> Self {
        Self {
            x_min,
            x_max,
            n_interior,
        }
    }

    /// Lower boundary.
    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Upper boundary.
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Interior point count.
    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    /// Grid spacing `(x_max - x_min) / (n + 1)`.
    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_interior as f64 + 1.0)
    }

    /// The `i`-th interior point.
    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.spacing() * (i as f64 + 1.0)
    }

    /// Grid with exactly halved spacing (`n -> 2n + 1`), for Richardson
    /// extrapolation.
    pub fn refined(&self) -> Self {
        Self {
            x_min: self.x_min,
            x_max: self.x_max,
            n_interior: 2 * self.n_interior + 1,
        }
    }
}

/// Symmetric tridiagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl TridiagonalOperator {
    /// Builds the operator from its diagonal and off-diagonal; symmetry is
    /// structural.
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::Argument(format!(
                "need N diagonal and N-1 off-diagonal entries, got {} and {}",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
        })
    }

    /// Dimension.
    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    /// True for the (disallowed) empty operator, kept for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Main diagonal.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// Sub/super-diagonal.
    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    /// Number of eigenvalues strictly below `shift`, by counting negative
    /// pivots of the shifted LDL^T factorization.
    pub fn sturm_count(&self, shift: f64) -> usize {
        let pivmin = self.pivot_guard();
        let mut count = 0;
        let mut q = self.diagonal[0] - shift;
        if q <= pivmin {
            count += 1;
            q = q.min(-pivmin);
        }
        for i in 1..self.diagonal.len() {
            let e = self.off_diagonal[i - 1];
            q = (self.diagonal[i] - shift) - e * e / q;
            if q <= pivmin {
                count += 1;
                q = q.min(-pivmin);
            }
        }
        count
    }

    fn pivot_guard(&self) -> f64 {
        let max_e2 = self
            .off_diagonal
            .iter()
            .fold(1.0f64, |acc, e| acc.max(e * e));
        f64::MIN_POSITIVE * max_e2
    }

    /// Gershgorin enclosure of the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i < n - 1 {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }
}

/// Eigenvalues of a discretized problem, with the optional
/// Richardson-improved values.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Ascending eigenvalues of the working grid.
    pub eigenvalues: Vec<f64>,
    /// Grid the operator came from, when known.
    pub grid: Option<GridSpec>,
    /// `(4 E(h/2) - E(h)) / 3` per level, when requested.
    pub extrapolated: Option<Vec<f64>>,
}

/// Central-difference discretization of
/// `-(hbar^2 / 2m) d^2/dx^2 + V` on the grid with Dirichlet boundaries:
/// diagonal `hbar^2/(m h^2) + V(x_i)`, off-diagonal `-hbar^2/(2 m h^2)`.
pub fn discretize(
    potential: &PotentialModel,
    grid: &GridSpec,
    mass: f64,
    hbar: f64,
) -> Result<TridiagonalOperator> {
    if !(mass.is_finite() && mass > 0.0 && hbar.is_finite() && hbar > 0.0) {
        return Err(Error::Domain(format!(
            "mass and hbar must be positive, got m = {mass}, hbar = {hbar}"
        )));
    }
    let (lo, hi) = potential.domain();
    if grid.x_min < lo || grid.x_max > hi {
        return Err(Error::Grid(format!(
            "grid [{}, {}] leaves the potential domain [{lo}, {hi}]",
            grid.x_min, grid.x_max
        )));
    }
    for &w in potential.walls() {
        if w > grid.x_min && w < grid.x_max {
            return Err(Error::Grid(format!(
                "hard wall at {w} lies strictly inside the grid [{}, {}]",
                grid.x_min, grid.x_max
            )));
        }
    }
    let h = grid.spacing();
    let kinetic = hbar * hbar / (mass * h * h);
    let n = grid.n_interior;
    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        diagonal.push(kinetic + potential.evaluate(grid.point(i))?);
    }
    TridiagonalOperator::new(diagonal, vec![-0.5 * kinetic; n - 1])
}

/// The `k` smallest eigenvalues by Sturm bisection inside the Gershgorin
/// bounds, ascending, to about 1e-12 relative accuracy.
pub fn eigenvalues_lowest(op: &TridiagonalOperator, k: usize) -> Result<EigenResult> {
    let n = op.len();
    if k == 0 || k > n {
        return Err(Error::Argument(format!(
            "need 1 <= k <= {n} eigenvalues, got {k}"
        )));
    }
    let (mut glo, mut ghi) = op.gershgorin_bounds();
    let pad = 1e-12 * (ghi - glo).abs().max(1.0);
    glo -= pad;
    ghi += pad;
    let mut eigenvalues = Vec::with_capacity(k);
    for index in 0..k {
        let (mut lo, mut hi) = (glo, ghi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let width = hi - lo;
            if width <= 1e-13 * mid.abs().max(1e-300) || width <= f64::EPSILON * (ghi - glo) {
                break;
            }
            if op.sturm_count(mid) <= index {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eigenvalues.push(0.5 * (lo + hi));
    }
    Ok(EigenResult {
        eigenvalues,
        grid: None,
        extrapolated: None,
    })
}

/// Discretizes, solves for the `k` lowest levels, and (optionally) improves
/// them by Richardson extrapolation from the half-spacing grid (the
/// discretization error is proportional to the spacing squared).
pub fn eigen_levels(
    potential: &PotentialModel,
    grid: &GridSpec,
    k: usize,
    mass: f64,
    hbar: f64,
    richardson: bool,
) -> Result<EigenResult> {
    let op = discretize(potential, grid, mass, hbar)?;
    let mut result = eigenvalues_lowest(&op, k)?;
    result.grid = Some(*grid);
    if richardson {
        let fine_grid = grid.refined();
        let fine_op = discretize(potential, &fine_grid, mass, hbar)?;
        let fine = eigenvalues_lowest(&fine_op, k)?;
        let extrapolated = fine
            .eigenvalues
            .iter()
            .zip(result.eigenvalues.iter())
            .map(|(f, c)| (4.0 * f - c) / 3.0)
            .collect();
        result.extrapolated = Some(extrapolated);
    }
    Ok(result)
}

/// Oracle spectrum in the shared [`Spectrum`] schema. Levels are labeled
/// from the potential's first quantum number; with Richardson enabled the
/// improved values are reported and the residual field carries the
/// `|E(h/2) - E(h)| / 3` error estimate.
pub fn oracle_spectrum(
    potential: &PotentialModel,
    grid: &GridSpec,
    k: usize,
    mass: f64,
    hbar: f64,
    richardson: bool,
) -> Result<Spectrum> {
    let result = eigen_levels(potential, grid, k, mass, hbar, richardson)?;
    let first = potential.first_index();
    let levels = match &result.extrapolated {
        Some(improved) => improved
            .iter()
            .zip(result.eigenvalues.iter())
            .enumerate()
            .map(|(j, (e, coarse))| EnergyLevel {
                n: first + j as u32,
                energy: *e,
                method: Method::Oracle,
                residual: (e - coarse).abs() * 0.75, // = |E(h/2) - E(h)| / 3
            })
            .collect(),
        None => result
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, e)| EnergyLevel {
                n: first + j as u32,
                energy: *e,
                method: Method::Oracle,
                residual: 0.0,
            })
            .collect(),
    };
    Spectrum::new(levels)
}

/// Grows a box around the potential minimum, holding the grid spacing
/// fixed, until the requested levels are insensitive to the boundary
/// (shift below 1e-8 when the box grows by 25%). Hard walls pin their side
/// of the grid. Confining potentials decay eigenfunctions exponentially, so
/// the walk terminates quickly.
pub fn auto_domain(
    potential: &PotentialModel,
    k: usize,
    mass: f64,
    hbar: f64,
    spacing: f64,
) -> Result<GridSpec> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::Grid(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    let (dom_lo, dom_hi) = potential.domain();
    let (x_min_pos, _) = potential.minimum();
    let wall_lo = potential.walls().contains(&dom_lo);
    let wall_hi = potential.walls().contains(&dom_hi);
    let grid_for = |lo: f64, hi: f64| -> Result<GridSpec> {
        let n = (((hi - lo) / spacing).round() as usize).max(65) - 1;
        GridSpec::new(lo, hi, n)
    };
    if wall_lo && wall_hi {
        return grid_for(dom_lo, dom_hi);
    }
    let mut half = (spacing * 128.0).max(1.0);
    let mut previous: Option<Vec<f64>> = None;
    for _ in 0..80 {
        let lo = if wall_lo {
            dom_lo
        } else {
            (x_min_pos - half).max(dom_lo)
        };
        let hi = if wall_hi {
            dom_hi
        } else {
            (x_min_pos + half).min(dom_hi)
        };
        let grid = grid_for(lo, hi)?;
        let result = eigen_levels(potential, &grid, k, mass, hbar, false)?;
        if let Some(prev) = &previous {
            let converged = prev
                .iter()
                .zip(result.eigenvalues.iter())
                .all(|(a, b)| (a - b).abs() <= 1e-8 * b.abs().max(1.0));
            if converged {
                return Ok(grid);
            }
        }
        previous = Some(result.eigenvalues);
        if lo == dom_lo && hi == dom_hi {
            return Ok(grid);
        }
        half *= 1.25;
    }
    Err(Error::Grid(
        "auto domain did not converge within the potential domain".into(),
    ))
}
