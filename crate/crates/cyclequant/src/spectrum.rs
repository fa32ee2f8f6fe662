//! Energy levels and spectra with provenance.

use crate::{Error, Result};

/// How an energy level was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Root of the action quantization condition.
    Semiclassical,
    /// Finite-difference Schrödinger eigenvalue.
    Oracle,
    /// Closed-form reference formula.
    ClosedForm,
}

impl Method {
    /// Stable lowercase name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Method::Semiclassical => "semiclassical",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// A single quantized level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Quantum number.
    pub n: u32,
    /// Energy in the unit system of the producing module.
    pub energy: f64,
    /// Provenance of the value.
    pub method: Method,
    /// For semiclassical levels, `|J(E) - h (n + v)|`; for oracle levels the
    /// discretization error estimate when available; zero for closed forms.
    pub residual: f64,
}

/// Ordered energy levels sharing one provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    levels: Vec<EnergyLevel>,
}

impl Spectrum {
    /// Builds a spectrum, requiring quantum numbers and energies to be
    /// strictly increasing.
    pub fn new(levels: Vec<EnergyLevel>) -> Result<Self> {
        for pair in levels.windows(2) {
            if pair[1].n <= pair[0].n {
                return Err(Error::Argument(format!(
                    "level indices must increase: {} then {}",
                    pair[0].n, pair[1].n
                )));
            }
            if pair[1].energy <= pair[0].energy {
                return Err(Error::Consistency(format!(
                    "levels not strictly increasing: E_{} = {} then E_{} = {}",
                    pair[0].n, pair[0].energy, pair[1].n, pair[1].energy
                )));
            }
        }
        Ok(Self { levels })
    }

    /// All levels in ascending order.
    pub fn levels(&self) -> &[EnergyLevel] {
        &self.levels
    }

    /// Level with quantum number `n`, if present.
    pub fn level(&self, n: u32) -> Option<&EnergyLevel> {
        self.levels.iter().find(|l| l.n == n)
    }

    /// Number of levels.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    /// True when the spectrum holds no levels.
    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(n: u32, e: f64) -> EnergyLevel {
        EnergyLevel {
            n,
            energy: e,
            method: Method::ClosedForm,
            residual: 0.0,
        }
    }

    #[test]
    fn rejects_non_monotone_energies() {
        let out = Spectrum::new(vec![level(0, 1.0), level(1, 0.5)]);
        assert!(matches!(out, Err(Error::Consistency(_))));
    }

    #[test]
    fn rejects_duplicate_indices() {
        let out = Spectrum::new(vec![level(2, 1.0), level(2, 2.0)]);
        assert!(matches!(out, Err(Error::Argument(_))));
    }

    #[test]
    fn lookup_by_quantum_number() {
        let s = Spectrum::new(vec![level(1, 0.5), level(2, 2.0)]).unwrap();
        assert_eq!(s.level(2).unwrap().energy, 2.0);
        assert!(s.level(3).is_none());
        assert_eq!(s.len(), 2);
    }
}
