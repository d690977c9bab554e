//! Discretization settings shared by every run that must be comparable.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::grid::{FreeModeBasis, NumericalGrid, SPEED_OF_LIGHT};
use crate::potential::WellParameters;
use crate::propagator::StepperConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerics {
    pub length: f64,
    pub points: usize,
    pub speed_of_light: f64,
    /// Optional energy cutoff in units of `c²`.
    pub cutoff_over_c2: Option<f64>,
    pub dt: f64,
    pub total_time: f64,
    pub midpoint_sampling: bool,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            length: 1.2,
            points: 256,
            speed_of_light: SPEED_OF_LIGHT,
            cutoff_over_c2: None,
            dt: 1e-7,
            total_time: 0.002,
            midpoint_sampling: true,
        }
    }
}

impl Numerics {
    /// Coarse preset for wide scans: 128 points, `dt = 2e-7`.
    pub fn fast() -> Self {
        Self {
            points: 128,
            dt: 2e-7,
            ..Self::default()
        }
    }

    pub fn grid(&self) -> Result<NumericalGrid> {
        NumericalGrid::new(self.length, self.points)
    }

    pub fn basis(&self) -> Result<FreeModeBasis> {
        let c2 = self.speed_of_light * self.speed_of_light;
        FreeModeBasis::new(
            &self.grid()?,
            self.speed_of_light,
            self.cutoff_over_c2.map(|x| x * c2),
        )
    }

    pub fn stepper(&self) -> Result<StepperConfig> {
        let mut s = StepperConfig::new(self.dt, self.total_time)?;
        s.midpoint_sampling = self.midpoint_sampling;
        Ok(s)
    }

    /// Hex SHA-256 over the exact bits of the numerics and the fixed well
    /// parameters (everything except depth and frequency).
    pub fn digest(&self, fixed: &WellParameters) -> String {
        let mut text = String::new();
        let mut put = |key: &str, x: f64| {
            let _ = write!(text, "{key}={:016x};", x.to_bits());
        };
        put("length", self.length);
        put("points", self.points as f64);
        put("c", self.speed_of_light);
        put("cutoff", self.cutoff_over_c2.unwrap_or(-1.0));
        put("dt", self.dt);
        put("T", self.total_time);
        put("midpoint", if self.midpoint_sampling { 1.0 } else { 0.0 });
        put("Vo", fixed.oscillating_depth);
        put("D", fixed.width);
        put("W", fixed.edge);
        let _ = write!(text, "shape={:?};sign={:?}", fixed.shape, fixed.sign);
        let hash = Sha256::digest(text.as_bytes());
        hash.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}
