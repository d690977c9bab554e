//! Sauter well shape and the combined static + oscillating potential.

use crate::error::{Error, Result};
use crate::grid::{NumericalGrid, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WellShape {
    /// `{tanh[(z+D/2)/W] - tanh[(z-D/2)/W]}/2`, a localized well.
    Well,
    /// `{tanh[(z-D/2)/W] + tanh[(z+D/2)/W]}/2`, a step from -1 to +1.
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignConvention {
    /// `+V` inside the well.
    AsPrinted,
    /// `-V` inside the well.
    Negated,
}

impl SignConvention {
    pub fn factor(self) -> f64 {
        match self {
            SignConvention::AsPrinted => 1.0,
            SignConvention::Negated => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SignConvention::AsPrinted => SignConvention::Negated,
            SignConvention::Negated => SignConvention::AsPrinted,
        }
    }
}

/// Which terms of the combined potential act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialMode {
    Combined,
    StaticOnly,
    OscillatingOnly,
}

impl PotentialMode {
    pub fn label(self) -> &'static str {
        match self {
            PotentialMode::Combined => "combined",
            PotentialMode::StaticOnly => "static_only",
            PotentialMode::OscillatingOnly => "oscillating_only",
        }
    }
}

/// Physical knobs of `V(z,t) = σ (V_s + V_o sin ωt) S(z)`, all in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParameters {
    pub static_depth: f64,
    pub oscillating_depth: f64,
    pub omega: f64,
    pub width: f64,
    pub edge: f64,
    pub shape: WellShape,
    pub sign: SignConvention,
}

impl Default for WellParameters {
    fn default() -> Self {
        let c = SPEED_OF_LIGHT;
        Self {
            static_depth: 0.0,
            oscillating_depth: 1.47 * c * c,
            omega: 0.0,
            width: 10.0 / c,
            edge: 0.3 / c,
            shape: WellShape::Well,
            sign: SignConvention::AsPrinted,
        }
    }
}

impl WellParameters {
    /// Characteristic well with depths and frequency given in units of `c²`.
    pub fn in_c2_units(static_depth: f64, oscillating_depth: f64, omega: f64) -> Self {
        let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
        Self {
            static_depth: static_depth * c2,
            oscillating_depth: oscillating_depth * c2,
            omega: omega * c2,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.width > 0.0, "well width D must be positive"),
            (self.edge > 0.0, "edge width W must be positive"),
            (
                self.oscillating_depth >= 0.0,
                "oscillating depth must be non-negative",
            ),
            (
                self.static_depth >= 0.0,
                "static depth must be non-negative",
            ),
            (self.omega >= 0.0, "frequency must be non-negative"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::InvalidParameter(msg.into()));
            }
        }
        let all_finite = [
            self.static_depth,
            self.oscillating_depth,
            self.omega,
            self.width,
            self.edge,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !all_finite {
            return Err(Error::InvalidParameter(
                "well parameters must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Dimensionless profile `S(z)`.
    pub fn shape_at(&self, z: f64) -> f64 {
        let half = 0.5 * self.width;
        let inner = ((z + half) / self.edge).tanh();
        let outer = ((z - half) / self.edge).tanh();
        match self.shape {
            WellShape::Well => 0.5 * (inner - outer),
            WellShape::Step => 0.5 * (inner + outer),
        }
    }

    /// Static and oscillating amplitudes `(V_s, V_o sin ωt)` with the
    /// inactive term set to zero.
    pub fn amplitudes(&self, t: f64, mode: PotentialMode) -> (f64, f64) {
        let osc = || self.oscillating_depth * (self.omega * t).sin();
        match mode {
            PotentialMode::Combined => (self.static_depth, osc()),
            PotentialMode::StaticOnly => (self.static_depth, 0.0),
            PotentialMode::OscillatingOnly => (0.0, osc()),
        }
    }

    /// `V(z,t)` inside the switching window, evaluated as the sum of the
    /// static and oscillating terms so that the combined value is exactly
    /// the sum of the single-well values.
    pub fn potential_at(&self, z: f64, t: f64, mode: PotentialMode) -> f64 {
        let (stat, osc) = self.amplitudes(t, mode);
        let profile = self.sign.factor() * self.shape_at(z);
        stat * profile + osc * profile
    }

    /// Largest `|V|` the given mode can reach.
    pub fn max_abs_potential(&self, mode: PotentialMode) -> f64 {
        let osc = if self.omega == 0.0 {
            0.0
        } else {
            self.oscillating_depth
        };
        match mode {
            PotentialMode::Combined => self.static_depth + osc,
            PotentialMode::StaticOnly => self.static_depth,
            PotentialMode::OscillatingOnly => osc,
        }
    }

    /// `σ S(z_j)` sampled on the grid.
    pub fn signed_profile(&self, grid: &NumericalGrid) -> Vec<f64> {
        let sign = self.sign.factor();
        (0..grid.points())
            .map(|j| sign * self.shape_at(grid.z(j)))
            .collect()
    }
}

/// Potential with abrupt switching: `V(z,t)` for `0 ≤ t ≤ T`, zero outside.
pub fn switched_potential(
    params: &WellParameters,
    z: f64,
    t: f64,
    total_time: f64,
    mode: PotentialMode,
) -> f64 {
    if (0.0..=total_time).contains(&t) {
        params.potential_at(z, t, mode)
    } else {
        0.0
    }
}
