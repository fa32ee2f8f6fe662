//! Crate error type.

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid argument (counts, cutoffs, indices).
    #[error("argument error: {0}")]
    Argument(String),

    /// First-order weak-field formula applied outside its validity range.
    #[error("weak-field violation: GM/(r c^2) = {0} exceeds 0.1")]
    WeakFieldViolation(f64),

    /// Two cyclic states do not share a fundamental periodicity.
    #[error("incompatible states: {0}")]
    IncompatibleStates(String),

    /// Modulation profile is not a monotone path.
    #[error("profile error: {0}")]
    Profile(String),

    /// Energy at or below the potential minimum: no classical motion.
    #[error("no classical motion at E = {energy} (min V = {v_min})")]
    NoClassicalMotion { energy: f64, v_min: f64 },

    /// More than two classical turning points.
    #[error("multi-well potential unsupported: found {0} turning points")]
    MultiWell(usize),

    /// Energy bracketing for the quantization condition failed.
    #[error("unbounded spectrum: {0}")]
    UnboundedSpectrum(String),

    /// Quadrature integrand inconsistent with the classical region.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Discretization grid conflicts with the potential's walls or domain.
    #[error("grid error: {0}")]
    Grid(String),

    /// Coordinate at or beyond a hard wall.
    #[error("wall error: x = {x} is at or beyond the wall at {wall}")]
    Wall { x: f64, wall: f64 },

    /// No closed-form reference spectrum for this potential.
    #[error("no closed-form spectrum available for this potential")]
    NoneAvailable,
}
