//! Output settings and the `key = value` configuration file.
//!
//! Precedence, highest first: command-line flag, `GENTRIG_PRECISION` (for the
//! precision only), configuration file, built-in default.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use gentrig::DoubleDouble;

use crate::error::{CliError, CliResult};
use crate::input;

pub const PRECISION_ENV: &str = "GENTRIG_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// Aligned columns.
    #[default]
    Text,
    /// One JSON object per line.
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "text" | "pretty" => Ok(Format::Text),
            "json" | "jsonl" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::usage(format!("unknown format {other:?} (text, json, csv)"))),
        }
    }
}

/// Working precision of the expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    Single,
    #[default]
    Double,
    /// Double-double, about 32 significant digits.
    Extended,
}

impl FromStr for Precision {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "single" | "f32" => Ok(Precision::Single),
            "double" | "f64" => Ok(Precision::Double),
            "extended" | "dd" | "double-double" => Ok(Precision::Extended),
            other => Err(CliError::usage(format!("unknown precision {other:?} (single, double, extended)"))),
        }
    }
}

/// Parsed `key = value` lines; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "format", "precision", "a", "z", "z_complex", "args", "orders", "phase_orders", "zero_a", "alpha", "k",
    "zmax", "samples", "p",
];

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if !KNOWN_KEYS.contains(&k) {
                return Err(CliError::usage(format!("config line {}: unknown key {k:?}", i + 1)));
            }
            entries.insert(k.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Parameter ranges for `verify`; defaults are the acceptance grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub a: Vec<DoubleDouble>,
    /// Real evaluation points.
    pub z: Vec<DoubleDouble>,
    /// Moduli of the complex points for `f`, `g`, `M²`.
    pub z_complex: Vec<DoubleDouble>,
    /// Arguments of the complex points, radians.
    pub args: Vec<DoubleDouble>,
    pub orders: RangeInclusive<i64>,
    pub phase_orders: RangeInclusive<i64>,
    pub zero_a: Vec<DoubleDouble>,
    pub alpha: Vec<DoubleDouble>,
    pub k: RangeInclusive<i64>,
    /// Upper end of the zero-counting interval.
    pub zmax: DoubleDouble,
    pub samples: usize,
    /// Real terminant orders.
    pub p: Vec<DoubleDouble>,
}

fn dd(xs: &[f64]) -> Vec<DoubleDouble> {
    xs.iter().map(|&x| DoubleDouble::from(x)).collect()
}

impl Default for Grid {
    fn default() -> Self {
        let eighth = DoubleDouble::PI / DoubleDouble::from(8.0);
        Grid {
            a: dd(&[-2.5, -1.0, 0.0, 0.5, 0.9]),
            z: dd(&[5.0, 10.0, 20.0, 50.0]),
            z_complex: dd(&[8.0, 20.0]),
            args: (1..=3).map(|k| eighth * DoubleDouble::from(k as f64)).collect(),
            orders: 1..=8,
            phase_orders: 1..=6,
            zero_a: dd(&[-2.0, 0.0, 0.5]),
            alpha: dd(&[0.0, 0.25, 0.5]),
            k: 3..=12,
            zmax: DoubleDouble::from(40.0),
            samples: 4000,
            p: dd(&[0.5, 1.0, 2.0, 5.0]),
        }
    }
}

impl Grid {
    pub fn from_config(cfg: &ConfigFile) -> CliResult<Self> {
        let mut g = Grid::default();
        let reals = |key: &str, dst: &mut Vec<DoubleDouble>| -> CliResult<()> {
            if let Some(v) = cfg.get(key) {
                *dst = input::real_list(v)?;
                if dst.is_empty() {
                    return Err(CliError::usage(format!("config key {key} is empty")));
                }
            }
            Ok(())
        };
        reals("a", &mut g.a)?;
        reals("z", &mut g.z)?;
        reals("z_complex", &mut g.z_complex)?;
        reals("zero_a", &mut g.zero_a)?;
        reals("alpha", &mut g.alpha)?;
        reals("p", &mut g.p)?;
        if let Some(v) = cfg.get("args") {
            g.args = input::angle_list(v)?;
        }
        if let Some(v) = cfg.get("orders") {
            g.orders = input::int_range(v)?;
        }
        if let Some(v) = cfg.get("phase_orders") {
            g.phase_orders = input::int_range(v)?;
        }
        if let Some(v) = cfg.get("k") {
            g.k = input::int_range(v)?;
        }
        if let Some(v) = cfg.get("zmax") {
            g.zmax = input::real(v)?;
        }
        if let Some(v) = cfg.get("samples") {
            g.samples = v.parse().map_err(|_| CliError::usage(format!("samples must be a positive integer, got {v:?}")))?;
        }
        if *g.orders.start() < 0 || *g.phase_orders.start() < 0 {
            return Err(CliError::usage("truncation orders must be non-negative"));
        }
        Ok(g)
    }
}

/// Everything the commands need besides their own arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub format: Format,
    pub precision: Precision,
    pub grid: Grid,
}

impl Settings {
    pub fn resolve(
        format_flag: Option<&str>,
        precision_flag: Option<&str>,
        precision_env: Option<&str>,
        config: Option<&ConfigFile>,
    ) -> CliResult<Self> {
        let from_cfg = |k: &str| config.and_then(|c| c.get(k));
        let format = match format_flag.or_else(|| from_cfg("format")) {
            Some(s) => s.parse()?,
            None => Format::default(),
        };
        let precision = match precision_flag.or(precision_env.filter(|s| !s.trim().is_empty())).or_else(|| from_cfg("precision")) {
            Some(s) => s.parse()?,
            None => Precision::default(),
        };
        let grid = match config {
            Some(c) => Grid::from_config(c)?,
            None => Grid::default(),
        };
        Ok(Settings { format, precision, grid })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let c = ConfigFile::parse("# grid\nformat = csv\n\na = 0, 0.5  # two values\nk = 3..5\n").unwrap();
        assert_eq!(c.get("format"), Some("csv"));
        let g = Grid::from_config(&c).unwrap();
        assert_eq!(g.a.len(), 2);
        assert_eq!(g.k, 3..=5);
        assert!(ConfigFile::parse("colour = red").is_err());
        assert!(ConfigFile::parse("a 1").is_err());
    }

    #[test]
    fn precedence() {
        let c = ConfigFile::parse("precision = single\nformat = json").unwrap();
        let s = Settings::resolve(None, None, None, Some(&c)).unwrap();
        assert_eq!((s.format, s.precision), (Format::Json, Precision::Single));
        let s = Settings::resolve(None, None, Some("extended"), Some(&c)).unwrap();
        assert_eq!(s.precision, Precision::Extended);
        let s = Settings::resolve(Some("csv"), Some("double"), Some("extended"), Some(&c)).unwrap();
        assert_eq!((s.format, s.precision), (Format::Csv, Precision::Double));
        assert!(Settings::resolve(None, None, Some("quad"), None).is_err());
    }
}
