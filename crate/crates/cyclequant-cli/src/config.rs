//! Run configuration: a UTF-8 `key = value` file merged under command-line
//! flags (flags win). Unknown keys are rejected with their location.

use std::collections::HashMap;
use std::path::Path;

use cyclequant::PhysicalConstants;

use crate::CliError;

/// Keys the configuration vocabulary accepts. Dashes and underscores are
/// interchangeable in the file; flags use the dashed spelling.
const KNOWN_KEYS: &[&str] = &[
    "units",
    "format",
    "out",
    "seed",
    "potential",
    "m",
    "mass",
    "omega",
    "g",
    "epsilon",
    "L",
    "z",
    "l",
    "table",
    "levels",
    "morse",
    "hbar",
    "quadrature_points",
    "xmin",
    "xmax",
    "grid_n",
    "richardson",
    "centrifugal",
    "beta",
    "t",
    "k_cut",
    "w_cut",
    "x_grid",
    // SI constant overrides (kinematics interface).
    "h",
    "c",
    "k_B",
    "electron_rest_energy",
];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    column: usize,
}

/// Parsed configuration file.
#[derive(Debug, Default, Clone)]
pub struct RunConfig {
    entries: HashMap<String, Entry>,
}

fn normalize(key: &str) -> String {
    // "L" and "l" are distinct; multi-character keys fold '-' to '_'.
    key.replace('-', "_")
}

impl RunConfig {
    /// Loads `path` if given, else the `CYCLEQUANT_CONFIG` fallback, else
    /// an empty configuration.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let chosen = match path {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os("CYCLEQUANT_CONFIG").map(std::path::PathBuf::from),
        };
        let Some(file) = chosen else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(&file)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", file.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))
    }

    /// Parses `key = value` lines; `#` starts a comment; blank lines are
    /// skipped. Errors carry `line:column` of the offending key.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some(eq) = body.find('=') else {
                let col = column_of(raw, body.trim());
                return Err(format!("{line_no}:{col}: expected `key = value`"));
            };
            let key_raw = body[..eq].trim();
            let value = body[eq + 1..].trim().to_string();
            let column = column_of(raw, key_raw);
            if key_raw.is_empty() {
                return Err(format!("{line_no}:{column}: empty key"));
            }
            let key = normalize(key_raw);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("{line_no}:{column}: unknown key `{key_raw}`"));
            }
            if value.is_empty() {
                return Err(format!("{line_no}:{column}: key `{key_raw}` has no value"));
            }
            entries.insert(
                key,
                Entry {
                    value,
                    line: line_no,
                    column,
                },
            );
        }
        Ok(Self { entries })
    }

    pub fn get_str(&self, key: &str) -> Option<String> {
        self.entries.get(&normalize(key)).map(|e| e.value.clone())
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.typed(key, "number", |v| v.parse::<f64>().ok())
    }

    pub fn get_u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        self.typed(key, "integer", |v| v.parse::<u32>().ok())
    }

    pub fn get_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.typed(key, "integer", |v| v.parse::<u64>().ok())
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.typed(key, "integer", |v| v.parse::<usize>().ok())
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        self.typed(key, "boolean", |v| match v {
            "true" | "1" | "yes" => Some(true),
            "false" | "0" | "no" => Some(false),
            _ => None,
        })
    }

    fn typed<T>(
        &self,
        key: &str,
        kind: &str,
        parse: impl Fn(&str) -> Option<T>,
    ) -> Result<Option<T>, CliError> {
        match self.entries.get(&normalize(key)) {
            None => Ok(None),
            Some(entry) => parse(&entry.value).map(Some).ok_or_else(|| {
                CliError::Usage(format!(
                    "config {}:{}: key `{key}` expects a {kind}, got `{}`",
                    entry.line, entry.column, entry.value
                ))
            }),
        }
    }

    /// Physical constants: the unit system selected by `units` (or the
    /// per-command default), with any explicit SI overrides applied on top.
    pub fn constants(&self, units: &str) -> Result<PhysicalConstants, CliError> {
        let base = match units {
            "natural" => PhysicalConstants::natural(),
            "si" => PhysicalConstants::si(),
            other => {
                return Err(CliError::Usage(format!(
                    "units must be `natural` or `si`, got `{other}`"
                )))
            }
        };
        let h = self.get_f64("h")?.unwrap_or(base.planck());
        let c = self.get_f64("c")?.unwrap_or(base.speed_of_light());
        let k_b = self.get_f64("k_B")?.unwrap_or(base.boltzmann());
        let mec2 = self
            .get_f64("electron_rest_energy")?
            .unwrap_or(base.electron_rest_energy());
        PhysicalConstants::new(h, c, k_b, mec2)
            .map_err(|e| CliError::Usage(format!("constants override: {e}")))
    }
}

fn column_of(raw: &str, token: &str) -> usize {
    raw.find(token).map_or(1, |i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_and_comments() {
        let cfg =
            RunConfig::parse("# comment\npotential = harmonic\nm = 2.5\nlevels = 7\n").unwrap();
        assert_eq!(cfg.get_str("potential").as_deref(), Some("harmonic"));
        assert_eq!(cfg.get_f64("m").unwrap(), Some(2.5));
        assert_eq!(cfg.get_u32("levels").unwrap(), Some(7));
        assert_eq!(cfg.get_f64("omega").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_key_with_location() {
        let err = RunConfig::parse("potential = box\n  wibble = 3\n").unwrap_err();
        assert!(err.starts_with("2:3"), "got {err}");
        assert!(err.contains("wibble"));
    }

    #[test]
    fn rejects_malformed_line_with_location() {
        let err = RunConfig::parse("potential harmonic\n").unwrap_err();
        assert!(err.starts_with("1:1"), "got {err}");
    }

    #[test]
    fn case_sensitive_l_and_big_l() {
        let cfg = RunConfig::parse("L = 3.0\nl = 2\n").unwrap();
        assert_eq!(cfg.get_f64("L").unwrap(), Some(3.0));
        assert_eq!(cfg.get_u32("l").unwrap(), Some(2));
    }

    #[test]
    fn constants_override_applies_to_base() {
        let cfg = RunConfig::parse("h = 1.0\n").unwrap();
        let c = cfg.constants("si").unwrap();
        assert_eq!(c.planck(), 1.0);
        assert_eq!(c.speed_of_light(), 299792458.0);
    }
}
