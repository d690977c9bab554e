//! Flat `key=value` run configuration.
//!
//! Energies are in units of `c²`; lengths and times are atomic units.

use std::fmt;
use std::path::PathBuf;

use pairwell_core::{
    Numerics, PotentialMode, SignConvention, WellParameters, WellShape, SPEED_OF_LIGHT,
};

/// Environment variable that overrides the worker count from a config file.
pub const WORKERS_ENV: &str = "PAIRWELL_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub vs_over_c2: f64,
    pub vo_over_c2: f64,
    pub omega_over_c2: f64,
    pub width: f64,
    pub edge: f64,
    pub shape: WellShape,
    pub sign: SignConvention,
    pub speed_of_light: f64,
    pub length: f64,
    pub points: usize,
    pub cutoff_over_c2: Option<f64>,
    pub dt: f64,
    pub total_time: f64,
    pub midpoint_sampling: bool,
    pub mode: PotentialMode,
    /// Empty means 21 evenly spaced times over `[0, T]`.
    pub snapshot_times: Vec<f64>,
    pub output_dir: PathBuf,
    /// `None` uses every available core.
    pub workers: Option<usize>,
    /// Replaces `Nz` and `dt` with the coarse preset.
    pub fast: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let n = Numerics::default();
        let w = WellParameters::default();
        Self {
            vs_over_c2: 0.0,
            vo_over_c2: w.oscillating_depth / (SPEED_OF_LIGHT * SPEED_OF_LIGHT),
            omega_over_c2: 1.5,
            width: w.width,
            edge: w.edge,
            shape: w.shape,
            sign: w.sign,
            speed_of_light: n.speed_of_light,
            length: n.length,
            points: n.points,
            cutoff_over_c2: n.cutoff_over_c2,
            dt: n.dt,
            total_time: n.total_time,
            midpoint_sampling: n.midpoint_sampling,
            mode: PotentialMode::Combined,
            snapshot_times: Vec::new(),
            output_dir: PathBuf::from("."),
            workers: None,
            fast: false,
        }
    }
}

pub const KEYS: &[&str] = &[
    "Vs",
    "Vo",
    "omega",
    "D",
    "W",
    "shape",
    "sign",
    "c",
    "L",
    "Nz",
    "cutoff",
    "dt",
    "T",
    "midpoint",
    "mode",
    "snapshot_times",
    "output_dir",
    "workers",
    "fast",
];

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError(format!("{key}: cannot parse '{value}'")))
}

fn shape_name(s: WellShape) -> &'static str {
    match s {
        WellShape::Well => "well",
        WellShape::Step => "step",
    }
}

fn sign_name(s: SignConvention) -> &'static str {
    match s {
        SignConvention::AsPrinted => "as_printed",
        SignConvention::Negated => "negated",
    }
}

fn mode_name(m: PotentialMode) -> &'static str {
    match m {
        PotentialMode::Combined => "combined",
        PotentialMode::StaticOnly => "static",
        PotentialMode::OscillatingOnly => "oscillating",
    }
}

impl RunConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key.trim() {
            "Vs" => self.vs_over_c2 = number(key, value)?,
            "Vo" => self.vo_over_c2 = number(key, value)?,
            "omega" => self.omega_over_c2 = number(key, value)?,
            "D" => self.width = number(key, value)?,
            "W" => self.edge = number(key, value)?,
            "c" => self.speed_of_light = number(key, value)?,
            "L" => self.length = number(key, value)?,
            "Nz" => self.points = number(key, value)?,
            "dt" => self.dt = number(key, value)?,
            "T" => self.total_time = number(key, value)?,
            "midpoint" => self.midpoint_sampling = number(key, value)?,
            "fast" => self.fast = number(key, value)?,
            "cutoff" => {
                self.cutoff_over_c2 = match value {
                    "none" => None,
                    v => Some(number(key, v)?),
                }
            }
            "workers" => {
                self.workers = match value {
                    "auto" => None,
                    v => match number::<usize>(key, v)? {
                        0 => return Err(ConfigError("workers: must be positive or 'auto'".into())),
                        n => Some(n),
                    },
                }
            }
            "shape" => {
                self.shape = match value {
                    "well" => WellShape::Well,
                    "step" => WellShape::Step,
                    _ => {
                        return Err(ConfigError(format!(
                            "shape: expected well|step, got '{value}'"
                        )))
                    }
                }
            }
            "sign" => {
                self.sign = match value {
                    "as_printed" => SignConvention::AsPrinted,
                    "negated" => SignConvention::Negated,
                    _ => {
                        return Err(ConfigError(format!(
                            "sign: expected as_printed|negated, got '{value}'"
                        )))
                    }
                }
            }
            "mode" => {
                self.mode = match value {
                    "combined" => PotentialMode::Combined,
                    "static" => PotentialMode::StaticOnly,
                    "oscillating" => PotentialMode::OscillatingOnly,
                    _ => {
                        return Err(ConfigError(format!(
                            "mode: expected combined|static|oscillating, got '{value}'"
                        )))
                    }
                }
            }
            "snapshot_times" => {
                self.snapshot_times = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| number(key, s))
                    .collect::<Result<_, _>>()?
            }
            "output_dir" => self.output_dir = PathBuf::from(value),
            other => return Err(ConfigError(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies a `key=value` assignment as written on the command line.
    pub fn assign(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("expected key=value, got '{assignment}'")))?;
        self.set(k, v)
    }

    /// Parses config text on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply(text)?;
        Ok(cfg)
    }

    /// Applies config text on top of `self`.
    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.assign(line)
                .map_err(|e| ConfigError(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let times: Vec<String> = self.snapshot_times.iter().map(f64::to_string).collect();
        let values = [
            self.vs_over_c2.to_string(),
            self.vo_over_c2.to_string(),
            self.omega_over_c2.to_string(),
            self.width.to_string(),
            self.edge.to_string(),
            shape_name(self.shape).to_string(),
            sign_name(self.sign).to_string(),
            self.speed_of_light.to_string(),
            self.length.to_string(),
            self.points.to_string(),
            self.cutoff_over_c2.map_or("none".into(), |x| x.to_string()),
            self.dt.to_string(),
            self.total_time.to_string(),
            self.midpoint_sampling.to_string(),
            mode_name(self.mode).to_string(),
            times.join(","),
            self.output_dir.display().to_string(),
            self.workers.map_or("auto".into(), |n| n.to_string()),
            self.fast.to_string(),
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn well(&self) -> WellParameters {
        let c2 = self.speed_of_light * self.speed_of_light;
        WellParameters {
            static_depth: self.vs_over_c2 * c2,
            oscillating_depth: self.vo_over_c2 * c2,
            omega: self.omega_over_c2 * c2,
            width: self.width,
            edge: self.edge,
            shape: self.shape,
            sign: self.sign,
        }
    }

    pub fn numerics(&self) -> Numerics {
        let (points, dt) = if self.fast {
            let f = Numerics::fast();
            (f.points, f.dt)
        } else {
            (self.points, self.dt)
        };
        Numerics {
            length: self.length,
            points,
            speed_of_light: self.speed_of_light,
            cutoff_over_c2: self.cutoff_over_c2,
            dt,
            total_time: self.total_time,
            midpoint_sampling: self.midpoint_sampling,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_characteristic_well() {
        let cfg = RunConfig::default();
        let c = 137.036;
        assert_eq!(cfg.speed_of_light, c);
        assert_eq!(cfg.length, 1.2);
        assert_eq!(cfg.total_time, 0.002);
        assert!((cfg.vo_over_c2 - 1.47).abs() < 1e-15);
        assert!((cfg.width - 10.0 / c).abs() < 1e-15);
        assert!((cfg.edge - 0.3 / c).abs() < 1e-15);
    }

    #[test]
    fn render_lists_every_key_once() {
        let text = RunConfig::default().render();
        for key in KEYS {
            let prefix = format!("{key}=");
            assert_eq!(text.lines().filter(|l| l.starts_with(&prefix)).count(), 1);
        }
    }

    #[test]
    fn comments_blanks_and_errors() {
        let cfg = RunConfig::parse("# header\n\nVs = 2.1  # deep\nmode=static\n").unwrap();
        assert_eq!(cfg.vs_over_c2, 2.1);
        assert_eq!(cfg.mode, PotentialMode::StaticOnly);
        for bad in [
            "Vs",
            "Vs=deep",
            "colour=red",
            "mode=both",
            "workers=0",
            "Nz=-3",
        ] {
            let err = RunConfig::parse(bad).unwrap_err();
            assert!(err.0.starts_with("line 1"), "{err}");
        }
    }

    #[test]
    fn fast_replaces_resolution() {
        let cfg = RunConfig::parse("fast=true\nNz=512").unwrap();
        let n = cfg.numerics();
        assert_eq!((n.points, n.dt), (128, 2e-7));
        assert_eq!(cfg.points, 512);
    }
}
