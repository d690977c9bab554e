//! Periodic position grid, conjugate momentum grid and the free Dirac mode basis.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Speed of light in atomic units.
pub const SPEED_OF_LIGHT: f64 = 137.036;

/// Periodic box `[-L/2, L/2)` sampled at `n` points.
///
/// Momentum bins follow FFT order: bin `m` carries the integer wave number
/// `k = m` for `m < n/2` and `k = m - n` otherwise, so `p = 2πk/L` with
/// `k ∈ [-n/2, n/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericalGrid {
    length: f64,
    points: usize,
    dz: f64,
}

impl NumericalGrid {
    pub fn new(length: f64, points: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box length must be positive, got {length}"
            )));
        }
        if points < 8 || points % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "point count must be even and at least 8, got {points}"
            )));
        }
        Ok(Self {
            length,
            points,
            dz: length / points as f64,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn z(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.dz
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.z(j)).collect()
    }

    /// Integer wave number of FFT bin `m`.
    pub fn wave_number(&self, bin: usize) -> i64 {
        let n = self.points as i64;
        let m = bin as i64;
        if m < n / 2 {
            m
        } else {
            m - n
        }
    }

    /// FFT bin holding integer wave number `k`.
    pub fn bin_of(&self, k: i64) -> usize {
        k.rem_euclid(self.points as i64) as usize
    }

    pub fn momentum(&self, bin: usize) -> f64 {
        2.0 * PI * self.wave_number(bin) as f64 / self.length
    }

    /// Bins sorted by ascending wave number, `-n/2 .. n/2`.
    pub fn bins_ascending(&self) -> Vec<usize> {
        let half = (self.points / 2) as i64;
        (-half..half).map(|k| self.bin_of(k)).collect()
    }

    pub fn same_as(&self, other: &NumericalGrid) -> bool {
        self.points == other.points && self.length == other.length
    }
}

/// Two-component spinor sampled on the grid. Norm is `Σ_j |ψ_j|² dz`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    dz: f64,
}

impl SpinorField {
    pub fn zeros(grid: &NumericalGrid) -> Self {
        let n = grid.points();
        Self {
            upper: vec![Complex64::new(0.0, 0.0); n],
            lower: vec![Complex64::new(0.0, 0.0); n],
            dz: grid.dz(),
        }
    }

    pub fn from_components(
        grid: &NumericalGrid,
        upper: Vec<Complex64>,
        lower: Vec<Complex64>,
    ) -> Result<Self> {
        let n = grid.points();
        if upper.len() != n || lower.len() != n {
            return Err(Error::GridMismatch {
                field: upper.len().max(lower.len()),
                basis: n,
            });
        }
        Ok(Self {
            upper,
            lower,
            dz: grid.dz(),
        })
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn norm_sqr(&self) -> f64 {
        let s: f64 = self
            .upper
            .iter()
            .chain(self.lower.iter())
            .map(|c| c.norm_sqr())
            .sum();
        s * self.dz
    }

    pub fn scale(&mut self, factor: f64) {
        for c in self.upper.iter_mut().chain(self.lower.iter_mut()) {
            *c *= factor;
        }
    }

    /// Largest pointwise component difference.
    pub fn max_abs_diff(&self, other: &SpinorField) -> f64 {
        self.upper
            .iter()
            .zip(&other.upper)
            .chain(self.lower.iter().zip(&other.lower))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Free-particle spinor data for one momentum bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeMode {
    pub bin: usize,
    pub wave_number: i64,
    pub momentum: f64,
    pub energy: f64,
    /// Upper component of the positive-energy spinor `(a, b)`.
    pub a: f64,
    /// Lower component of the positive-energy spinor `(a, b)`.
    pub b: f64,
}

impl FreeMode {
    fn new(bin: usize, wave_number: i64, momentum: f64, c: f64) -> Self {
        let c2 = c * c;
        let energy = (c2 * c2 + c2 * momentum * momentum).sqrt();
        let a = ((energy + c2) / (2.0 * energy)).sqrt();
        let b = c * momentum / (2.0 * energy * (energy + c2)).sqrt();
        Self {
            bin,
            wave_number,
            momentum,
            energy,
            a,
            b,
        }
    }

    /// `H₀(p) = [[c², cp], [cp, -c²]]`.
    pub fn hamiltonian(&self, c: f64) -> [[f64; 2]; 2] {
        let c2 = c * c;
        let cp = c * self.momentum;
        [[c2, cp], [cp, -c2]]
    }
}

/// Field-free eigenmodes: `u_p = (a_p, b_p) e^{ipz}/√L` with energy `E_p`
/// and `v_p = (-b_p, a_p) e^{ipz}/√L` with energy `-E_p`.
///
/// Retained modes are ordered by ascending wave number.
#[derive(Clone)]
pub struct FreeModeBasis {
    grid: NumericalGrid,
    c: f64,
    cutoff: Option<f64>,
    modes: Vec<FreeMode>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FreeModeBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeModeBasis")
            .field("grid", &self.grid)
            .field("c", &self.c)
            .field("cutoff", &self.cutoff)
            .field("modes", &self.modes.len())
            .finish()
    }
}

impl FreeModeBasis {
    pub fn new(grid: &NumericalGrid, c: f64, cutoff: Option<f64>) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "speed of light must be positive, got {c}"
            )));
        }
        if let Some(cut) = cutoff {
            if !(cut >= c * c) {
                return Err(Error::InvalidParameter(format!(
                    "energy cutoff {cut} is below the rest energy {}",
                    c * c
                )));
            }
        }
        let modes: Vec<FreeMode> = grid
            .bins_ascending()
            .into_iter()
            .map(|bin| FreeMode::new(bin, grid.wave_number(bin), grid.momentum(bin), c))
            .filter(|m| cutoff.map_or(true, |cut| m.energy <= cut))
            .collect();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(grid.points());
        let ifft = planner.plan_fft_inverse(grid.points());
        Ok(Self {
            grid: grid.clone(),
            c,
            cutoff,
            modes,
            fft,
            ifft,
        })
    }

    pub fn grid(&self) -> &NumericalGrid {
        &self.grid
    }

    pub fn speed_of_light(&self) -> f64 {
        self.c
    }

    pub fn cutoff(&self) -> Option<f64> {
        self.cutoff
    }

    pub fn modes(&self) -> &[FreeMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Free data for every grid bin, indexed by FFT bin, ignoring the cutoff.
    pub fn all_bins(&self) -> Vec<FreeMode> {
        (0..self.grid.points())
            .map(|bin| {
                FreeMode::new(
                    bin,
                    self.grid.wave_number(bin),
                    self.grid.momentum(bin),
                    self.c,
                )
            })
            .collect()
    }

    pub(crate) fn fft(&self) -> &Arc<dyn Fft<f64>> {
        &self.fft
    }

    pub(crate) fn ifft(&self) -> &Arc<dyn Fft<f64>> {
        &self.ifft
    }

    /// Positive-energy mode `u_p` sampled on the grid.
    pub fn positive_mode(&self, index: usize) -> SpinorField {
        let m = self.modes[index];
        self.plane_wave(m.wave_number, m.a, m.b)
    }

    /// Negative-energy mode `v_p` sampled on the grid.
    pub fn negative_mode(&self, index: usize) -> SpinorField {
        let m = self.modes[index];
        self.plane_wave(m.wave_number, -m.b, m.a)
    }

    fn plane_wave(&self, k: i64, up: f64, down: f64) -> SpinorField {
        let norm = 1.0 / self.grid.length().sqrt();
        let p = 2.0 * PI * k as f64 / self.grid.length();
        let phases: Vec<Complex64> = (0..self.grid.points())
            .map(|j| Complex64::from_polar(norm, p * self.grid.z(j)))
            .collect();
        SpinorField {
            upper: phases.iter().map(|e| e * up).collect(),
            lower: phases.iter().map(|e| e * down).collect(),
            dz: self.grid.dz(),
        }
    }

    /// Mode coefficients `c⁺_p = ⟨u_p|ψ⟩`, `c⁻_p = ⟨v_p|ψ⟩` via one DFT per component.
    pub fn project(&self, field: &SpinorField) -> Result<ModeCoefficients> {
        let n = self.grid.points();
        if field.len() != n {
            return Err(Error::GridMismatch {
                field: field.len(),
                basis: n,
            });
        }
        let mut up = field.upper.clone();
        let mut down = field.lower.clone();
        self.fft.process(&mut up);
        self.fft.process(&mut down);
        let scale = self.grid.dz() / self.grid.length().sqrt();
        let (positive, negative) = self
            .modes
            .iter()
            .map(|m| {
                let s = if m.wave_number % 2 == 0 {
                    scale
                } else {
                    -scale
                };
                let fu = up[m.bin] * s;
                let fd = down[m.bin] * s;
                (fu * m.a + fd * m.b, fd * m.a - fu * m.b)
            })
            .unzip();
        Ok(ModeCoefficients { positive, negative })
    }

    /// Inverse of [`project`](Self::project): `Σ_p c⁺_p u_p + c⁻_p v_p`.
    pub fn synthesize(&self, coeffs: &ModeCoefficients) -> Result<SpinorField> {
        if coeffs.positive.len() != self.len() || coeffs.negative.len() != self.len() {
            return Err(Error::GridMismatch {
                field: coeffs.positive.len(),
                basis: self.len(),
            });
        }
        let n = self.grid.points();
        let zero = Complex64::new(0.0, 0.0);
        let mut up = vec![zero; n];
        let mut down = vec![zero; n];
        let norm = 1.0 / self.grid.length().sqrt();
        for (i, m) in self.modes.iter().enumerate() {
            let s = if m.wave_number % 2 == 0 { norm } else { -norm };
            let cp = coeffs.positive[i];
            let cn = coeffs.negative[i];
            up[m.bin] = (cp * m.a - cn * m.b) * s;
            down[m.bin] = (cp * m.b + cn * m.a) * s;
        }
        self.ifft.process(&mut up);
        self.ifft.process(&mut down);
        Ok(SpinorField {
            upper: up,
            lower: down,
            dz: self.grid.dz(),
        })
    }
}

/// Projections of a field onto the retained positive and negative modes,
/// in the basis's mode order.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    pub positive: Vec<Complex64>,
    pub negative: Vec<Complex64>,
}

impl ModeCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.positive
            .iter()
            .chain(self.negative.iter())
            .map(|c| c.norm_sqr())
            .sum()
    }
}
