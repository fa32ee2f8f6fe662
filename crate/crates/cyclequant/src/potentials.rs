//! Built-in 1D potential catalogue with closed-form reference spectra.
//!
//! These are the regression targets for the quantization engine. All
//! potentials are expressed in natural units (`hbar = 1`); the Coulomb
//! radial potential additionally assumes atomic units (`m = 1`, energies in
//! hartree).

use crate::constants::HARTREE_EV;
use crate::spectrum::{EnergyLevel, Method};
use crate::{Error, Result};

/// Default Morse index for the one-wall linear potential; the standard
/// turning-point count (one smooth turning point, one hard wall). See
/// [`PotentialModel::linear_reference_with_morse`] for the alternative
/// quarter-index convention.
pub const LINEAR_MORSE_DEFAULT: f64 = 0.75;

/// Shape-preserving monotone cubic interpolant (Fritsch-Carlson slopes).
#[derive(Debug, Clone, PartialEq)]
struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 4 {
            return Err(Error::Argument(
                "tabulated potential needs at least 4 (x, V) samples".into(),
            ));
        }
        for pair in xs.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::Argument(format!(
                    "tabulated grid must be strictly increasing: {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Argument("non-finite tabulated sample".into()));
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        Ok(Self { xs, ys, slopes: d })
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1]
    }
}

/// One-sided endpoint slope with the usual monotonicity clamps.
fn edge_slope(h0: f64, h1: f64, delta0: f64, delta1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * delta0 - h0 * delta1) / (h0 + h1);
    if d * delta0 <= 0.0 {
        0.0
    } else if delta0 * delta1 < 0.0 && d.abs() > 3.0 * delta0.abs() {
        3.0 * delta0
    } else {
        d
    }
}

/// The functional form of a potential.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    /// `V = m omega^2 x^2 / 2`.
    Harmonic { mass: f64, omega: f64 },
    /// `V = m g x` for `x >= 0`, hard wall at the origin.
    Linear { mass: f64, slope: f64 },
    /// `V = m omega^2 x^2 / 2 + eps m^2 omega^3 x^4`, i.e. a quartic
    /// perturbation `eps (x/l)^4` in oscillator units `l = (m omega)^(-1/2)`.
    Anharmonic { mass: f64, omega: f64, epsilon: f64 },
    /// Effective radial potential `-Z/r + c_l/(2 r^2)` in atomic units with
    /// the centrifugal coefficient `c_l = (l + 1/2)^2` (Langer) or
    /// `l (l + 1)` (bare).
    CoulombRadial { z: f64, l: u32, langer: bool },
    /// `V = 0` between hard walls at `0` and `length`.
    Box { length: f64 },
    /// Monotone-cubic interpolation of `(x, V)` samples.
    Tabulated,
}

/// An evaluable 1D potential with its domain and hard-wall metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialModel {
    kind: PotentialKind,
    domain: (f64, f64),
    walls: Vec<f64>,
    table: Option<MonotoneCubic>,
}

impl PotentialModel {
    /// Harmonic oscillator `V = m omega^2 x^2 / 2`.
    pub fn harmonic(mass: f64, omega: f64) -> Result<Self> {
        require_positive("mass", mass)?;
        require_positive("omega", omega)?;
        let scale = 1.0 / (mass * omega).sqrt();
        Ok(Self {
            kind: PotentialKind::Harmonic { mass, omega },
            domain: (-1e3 * scale, 1e3 * scale),
            walls: Vec::new(),
            table: None,
        })
    }

    /// Linear potential `V = m g x` with a hard wall at the origin.
    pub fn linear(mass: f64, slope: f64) -> Result<Self> {
        require_positive("mass", mass)?;
        require_positive("slope", slope)?;
        let scale = (1.0 / (mass * mass * slope)).cbrt();
        Ok(Self {
            kind: PotentialKind::Linear { mass, slope },
            domain: (0.0, 1e4 * scale),
            walls: vec![0.0],
            table: None,
        })
    }

    /// Quartic-perturbed oscillator with dimensionless strength `epsilon`.
    pub fn anharmonic(mass: f64, omega: f64, epsilon: f64) -> Result<Self> {
        require_positive("mass", mass)?;
        require_positive("omega", omega)?;
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::Domain(format!(
                "epsilon must be non-negative, got {epsilon}"
            )));
        }
        let scale = 1.0 / (mass * omega).sqrt();
        Ok(Self {
            kind: PotentialKind::Anharmonic {
                mass,
                omega,
                epsilon,
            },
            domain: (-1e3 * scale, 1e3 * scale),
            walls: Vec::new(),
            table: None,
        })
    }

    /// Langer-corrected effective radial Coulomb potential in atomic units.
    pub fn coulomb_radial(z: f64, l: u32) -> Result<Self> {
        Self::coulomb_radial_with_centrifugal(z, l, true)
    }

    /// Radial Coulomb potential with a selectable centrifugal term:
    /// `(l + 1/2)^2` when `langer`, `l (l + 1)` otherwise.
    pub fn coulomb_radial_with_centrifugal(z: f64, l: u32, langer: bool) -> Result<Self> {
        require_positive("Z", z)?;
        let cf = centrifugal_coefficient(l, langer).max(0.25);
        Ok(Self {
            kind: PotentialKind::CoulombRadial { z, l, langer },
            domain: (1e-6 * cf / z, 1e6 * cf / z),
            walls: Vec::new(),
            table: None,
        })
    }

    /// Infinite square well of the given width, walls at `0` and `length`.
    pub fn square_box(length: f64) -> Result<Self> {
        require_positive("length", length)?;
        Ok(Self {
            kind: PotentialKind::Box { length },
            domain: (0.0, length),
            walls: vec![0.0, length],
            table: None,
        })
    }

    /// Tabulated potential interpolated by a shape-preserving monotone
    /// cubic, avoiding spurious wells between samples.
    pub fn tabulated(xs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        let table = MonotoneCubic::new(xs, vs)?;
        let domain = (table.xs[0], *table.xs.last().unwrap());
        Ok(Self {
            kind: PotentialKind::Tabulated,
            domain,
            walls: Vec::new(),
            table: Some(table),
        })
    }

    /// Parses a two-column `x V` text table; `#` starts a comment.
    pub fn tabulated_from_text(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut fields = body.split_whitespace();
            let parse = |field: Option<&str>| -> Result<f64> {
                field
                    .ok_or_else(|| {
                        Error::Argument(format!("line {}: expected two columns", idx + 1))
                    })?
                    .parse::<f64>()
                    .map_err(|e| Error::Argument(format!("line {}: {e}", idx + 1)))
            };
            xs.push(parse(fields.next())?);
            vs.push(parse(fields.next())?);
            if fields.next().is_some() {
                return Err(Error::Argument(format!(
                    "line {}: expected exactly two columns",
                    idx + 1
                )));
            }
        }
        Self::tabulated(xs, vs)
    }

    /// Overrides the working domain (what scans and brackets may touch).
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain(format!("invalid domain [{lo}, {hi}]")));
        }
        self.domain = (lo, hi);
        Ok(self)
    }

    /// The functional form.
    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    /// Working domain `(lo, hi)`.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Hard-wall coordinates (always at domain boundaries).
    pub fn walls(&self) -> &[f64] {
        &self.walls
    }

    /// True when `x` sits at or beyond a hard wall.
    fn behind_wall(&self, x: f64) -> Option<f64> {
        for &w in &self.walls {
            let lower = (w - self.domain.0).abs() <= (w - self.domain.1).abs();
            if (lower && x <= w) || (!lower && x >= w) {
                return Some(w);
            }
        }
        None
    }

    /// Potential value at `x`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if let Some(wall) = self.behind_wall(x) {
            return Err(Error::Wall { x, wall });
        }
        if !(x >= self.domain.0 && x <= self.domain.1) {
            return Err(Error::Domain(format!(
                "x = {x} outside domain [{}, {}]",
                self.domain.0, self.domain.1
            )));
        }
        Ok(match &self.kind {
            PotentialKind::Harmonic { mass, omega } => 0.5 * mass * omega * omega * x * x,
            PotentialKind::Linear { mass, slope } => mass * slope * x,
            PotentialKind::Anharmonic {
                mass,
                omega,
                epsilon,
            } => {
                let quadratic = 0.5 * mass * omega * omega * x * x;
                let quartic = epsilon * mass * mass * omega.powi(3) * x.powi(4);
                quadratic + quartic
            }
            PotentialKind::CoulombRadial { z, l, langer } => {
                let cf = centrifugal_coefficient(*l, *langer);
                -z / x + cf / (2.0 * x * x)
            }
            PotentialKind::Box { .. } => 0.0,
            PotentialKind::Tabulated => self.table.as_ref().expect("tabulated").eval(x),
        })
    }

    /// Location and value of the potential minimum over the domain.
    pub fn minimum(&self) -> (f64, f64) {
        match &self.kind {
            PotentialKind::Harmonic { .. } | PotentialKind::Anharmonic { .. } => (0.0, 0.0),
            PotentialKind::Linear { .. } | PotentialKind::Box { .. } => (self.domain.0, 0.0),
            PotentialKind::CoulombRadial { z, l, langer } => {
                let cf = centrifugal_coefficient(*l, *langer).max(0.25);
                (cf / z, -z * z / (2.0 * cf))
            }
            PotentialKind::Tabulated => {
                let table = self.table.as_ref().expect("tabulated");
                let mut best = (table.xs[0], table.ys[0]);
                let samples = 8192;
                for i in 0..=samples {
                    let x =
                        self.domain.0 + (self.domain.1 - self.domain.0) * i as f64 / samples as f64;
                    let v = table.eval(x);
                    if v < best.1 {
                        best = (x, v);
                    }
                }
                best
            }
        }
    }

    /// First quantum number of the spectrum (1 between two hard walls,
    /// otherwise 0).
    pub fn first_index(&self) -> u32 {
        if self.walls.len() == 2 {
            1
        } else {
            0
        }
    }

    /// Default Morse index from the turning-point structure: 1/2 for two
    /// smooth turning points, 3/4 for one hard wall, 0 for two hard walls.
    pub fn default_morse(&self) -> f64 {
        match self.walls.len() {
            0 => 0.5,
            1 => LINEAR_MORSE_DEFAULT,
            _ => 0.0,
        }
    }

    /// Closed-form reference level, when the catalogue has one.
    ///
    /// Natural units; the box assumes unit mass, the Coulomb entry atomic
    /// units. Tabulated potentials report [`Error::NoneAvailable`].
    pub fn reference_spectrum(&self, n: u32) -> Result<EnergyLevel> {
        let energy = match &self.kind {
            PotentialKind::Harmonic { omega, .. } => omega * (n as f64 + 0.5),
            PotentialKind::Linear { .. } => {
                return self.linear_reference_with_morse(n, LINEAR_MORSE_DEFAULT);
            }
            PotentialKind::Anharmonic { omega, epsilon, .. } => {
                // First-order perturbation theory; valid to O(eps^2).
                omega * (n as f64 + 0.5)
                    + epsilon * omega * (1.5 * (n as f64 * n as f64 + n as f64) + 0.75)
            }
            PotentialKind::CoulombRadial { z, l, .. } => {
                if n < l + 1 {
                    return Err(Error::Argument(format!(
                        "no bound level: principal number {n} needs n >= l + 1 = {}",
                        l + 1
                    )));
                }
                -z * z / (2.0 * (n as f64) * (n as f64))
            }
            PotentialKind::Box { length } => {
                if n < 1 {
                    return Err(Error::Argument("box levels are indexed from n = 1".into()));
                }
                let k = n as f64 * std::f64::consts::PI / length;
                0.5 * k * k
            }
            PotentialKind::Tabulated => return Err(Error::NoneAvailable),
        };
        Ok(EnergyLevel {
            n,
            energy,
            method: Method::ClosedForm,
            residual: 0.0,
        })
    }

    /// Linear-potential closed form `E_n = [3 pi (n + v)]^(2/3) / 2 *
    /// (hbar^2 m g^2)^(1/3)` with an explicit Morse index, exposing both the
    /// three-quarter and the quarter conventions.
    pub fn linear_reference_with_morse(&self, n: u32, morse: f64) -> Result<EnergyLevel> {
        let PotentialKind::Linear { mass, slope } = self.kind else {
            return Err(Error::Argument(
                "quarter-index reference only applies to the linear potential".into(),
            ));
        };
        let force = mass * slope;
        let unit = (force * force / mass).cbrt();
        let energy = 0.5 * (3.0 * std::f64::consts::PI * (n as f64 + morse)).powf(2.0 / 3.0) * unit;
        Ok(EnergyLevel {
            n,
            energy,
            method: Method::ClosedForm,
            residual: 0.0,
        })
    }
}

fn centrifugal_coefficient(l: u32, langer: bool) -> f64 {
    let lf = l as f64;
    if langer {
        (lf + 0.5) * (lf + 0.5)
    } else {
        lf * (lf + 1.0)
    }
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be strictly positive, got {value}"
        )))
    }
}

/// Which closed-form family backs a reference spectrum, with its validity
/// notes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum {
    /// Stable formula identifier.
    pub formula: &'static str,
    /// Parameters the formula is evaluated with.
    pub parameters: Vec<(&'static str, f64)>,
    /// Where the formula is exact and where it is only a leading-order
    /// target.
    pub validity: &'static str,
}

impl PotentialModel {
    /// Metadata for the closed form behind [`Self::reference_spectrum`].
    pub fn closed_form_info(&self) -> Result<ClosedFormSpectrum> {
        match &self.kind {
            PotentialKind::Harmonic { mass, omega } => Ok(ClosedFormSpectrum {
                formula: "harmonic_ladder",
                parameters: vec![("mass", *mass), ("omega", *omega)],
                validity: "exact; the action is linear in the energy",
            }),
            PotentialKind::Linear { mass, slope } => Ok(ClosedFormSpectrum {
                formula: "linear_wall_wkb",
                parameters: vec![
                    ("mass", *mass),
                    ("slope", *slope),
                    ("morse", LINEAR_MORSE_DEFAULT),
                ],
                validity: "semiclassical; error vs the Dirichlet (Airy) levels \
                           falls off as the inverse square of n + 3/4",
            }),
            PotentialKind::Anharmonic {
                mass,
                omega,
                epsilon,
            } => Ok(ClosedFormSpectrum {
                formula: "quartic_first_order",
                parameters: vec![("mass", *mass), ("omega", *omega), ("epsilon", *epsilon)],
                validity: "first order in epsilon only; remainder grows like \
                           epsilon^2 (n + 1/2)^3",
            }),
            PotentialKind::CoulombRadial { z, l, .. } => Ok(ClosedFormSpectrum {
                formula: "rydberg",
                parameters: vec![("z", *z), ("l", *l as f64)],
                validity: "exact for the Langer-corrected radial action",
            }),
            PotentialKind::Box { length } => Ok(ClosedFormSpectrum {
                formula: "particle_in_box",
                parameters: vec![("length", *length), ("mass", 1.0)],
                validity: "exact at unit mass; levels indexed from n = 1",
            }),
            PotentialKind::Tabulated => Err(Error::NoneAvailable),
        }
    }
}

/// The n-dependent first-order anharmonic deviation
/// `Delta E_n = (3/2) eps (n^2 + n)` in units of `hbar omega`.
///
/// The constant `3/4 eps` offset of full first-order perturbation theory is
/// deliberately excluded: the n-independent part belongs with the Morse
/// factors of the quantization condition.
pub fn anharmonic_shift(n: u32, epsilon: f64) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::Domain(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let nf = n as f64;
    Ok(1.5 * epsilon * (nf * nf + nf))
}

/// Hydrogen-like level in electronvolts, for reporting.
pub fn coulomb_level_ev(z: f64, n: u32) -> f64 {
    -z * z * HARTREE_EV / (2.0 * (n as f64) * (n as f64))
}
