//! Numerics for quantization by intrinsic periodicity.
//!
//! The crate treats a particle's recurrence in time and space as the primary
//! object and derives observable spectra from it along several independent
//! routes that can be cross-checked against each other:
//!
//! - [`kinematics`] — periodicity four-vectors, Lorentz boosts, phase
//!   harmony, Doppler-shifted harmonic spectra, weak-field redshift.
//! - [`modes`] — harmonic mode algebra on a compact cycle: inner products,
//!   unitary evolution, commutator identities, modulated phases, and the
//!   winding-sum / mode-sum faces of the heat kernel on a circle.
//! - [`potentials`] — a catalogue of 1D potentials with closed-form
//!   reference spectra.
//! - [`semiclassical`] — the quantization engine: turning points, action
//!   quadrature, and root-finding for the condition `J(E) = h (n + v)`.
//! - [`oracle`] — an independent finite-difference Schrödinger eigensolver
//!   (Sturm-sequence bisection on the symmetric tridiagonal operator).
//! - [`thermal`] — Boltzmann level populations, Planck mean energy, and
//!   black-body limits.
//!
//! All engine-side computations use natural units (`hbar = 1`, so `h = 2*pi`,
//! and `c = 1`); SI values enter and leave only through
//! [`constants::PhysicalConstants`].

pub mod constants;
pub mod error;
pub mod kinematics;
pub mod modes;
pub mod numerics;
pub mod oracle;
pub mod potentials;
pub mod semiclassical;
pub mod spectrum;
pub mod thermal;

pub use constants::PhysicalConstants;
pub use error::Error;
pub use spectrum::{EnergyLevel, Method, Spectrum};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn value_types_are_shareable_across_threads() {
        assert_send_sync::<crate::constants::PhysicalConstants>();
        assert_send_sync::<crate::kinematics::PeriodicityFourVector>();
        assert_send_sync::<crate::kinematics::FourMomentum>();
        assert_send_sync::<crate::modes::CyclicFieldState>();
        assert_send_sync::<crate::potentials::PotentialModel>();
        assert_send_sync::<crate::semiclassical::QuantizationRule>();
        assert_send_sync::<crate::oracle::TridiagonalOperator>();
        assert_send_sync::<crate::thermal::ThermalMode>();
        assert_send_sync::<crate::spectrum::Spectrum>();
    }
}
