//! Pair-number bookkeeping: evolve every negative-energy mode, project onto
//! the free positive-energy modes and reduce `|U_pn|²` in a fixed order.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{FreeMode, FreeModeBasis};
use crate::potential::{PotentialMode, WellParameters};
use crate::propagator::{native_norm, Propagator, StepperConfig, INSTABILITY_DRIFT};

/// Bogoliubov amplitudes `U_pn = ⟨u_p|Û(t)|v_n⟩`, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovMatrix {
    pub time: f64,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl BogoliubovMatrix {
    pub fn zeros(rows: usize, cols: usize, time: f64) -> Self {
        Self {
            time,
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, p: usize, n: usize) -> Complex64 {
        self.data[n * self.rows + p]
    }

    pub fn set(&mut self, p: usize, n: usize, value: Complex64) {
        self.data[n * self.rows + p] = value;
    }

    pub fn column(&self, n: usize) -> &[Complex64] {
        &self.data[n * self.rows..(n + 1) * self.rows]
    }

    /// `Σ_p |U_pn|²` for column `n`, summed in ascending `p`.
    pub fn column_weight(&self, n: usize) -> f64 {
        self.column(n).iter().map(|u| u.norm_sqr()).sum()
    }

    /// `Σ_n Σ_p |U_pn|²`, `n` outer and `p` inner, both ascending.
    pub fn pair_number(&self) -> f64 {
        (0..self.cols).map(|n| self.column_weight(n)).sum()
    }
}

/// Time series, final density and final count of created electrons.
#[derive(Debug, Clone, PartialEq)]
pub struct PairObservables {
    pub mode: PotentialMode,
    pub series: Vec<(f64, f64)>,
    pub positions: Vec<f64>,
    pub density: Vec<f64>,
    pub final_number: f64,
}

#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub observables: PairObservables,
    pub matrix: BogoliubovMatrix,
    /// Norm of each evolved negative-energy mode at `T`.
    pub evolved_norms: Vec<f64>,
    /// `Σ_p |U_pn|² + Σ_n' |U_n'n|²` per column.
    pub completeness: Vec<f64>,
}

/// Which family of free modes is evolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Negative,
    Positive,
}

/// Per-column results of one evolution sweep over the basis.
struct ColumnRun {
    /// `[snapshot][column]` weights onto the opposite family.
    snapshots: Vec<Vec<f64>>,
    /// Final native states, one per column, when requested.
    finals: Option<Vec<Vec<Complex64>>>,
    /// Final weight per column.
    weights: Vec<f64>,
}

fn native_initial(mode: &FreeMode, family: Family, points: usize) -> Vec<Complex64> {
    let mut w = vec![Complex64::new(0.0, 0.0); 2 * points];
    let sign = if mode.wave_number % 2 == 0 { 1.0 } else { -1.0 };
    let (up, down) = match family {
        Family::Negative => (-mode.b, mode.a),
        Family::Positive => (mode.a, mode.b),
    };
    w[mode.bin] = Complex64::new(sign * up, 0.0);
    w[points + mode.bin] = Complex64::new(sign * down, 0.0);
    w
}

/// Amplitude of a native state on the free mode of the given family.
#[inline]
fn amplitude(state: &[Complex64], points: usize, mode: &FreeMode, family: Family) -> Complex64 {
    let sign = if mode.wave_number % 2 == 0 { 1.0 } else { -1.0 };
    let up = state[mode.bin];
    let down = state[points + mode.bin];
    let v = match family {
        Family::Positive => up * mode.a + down * mode.b,
        Family::Negative => down * mode.a - up * mode.b,
    };
    v * sign
}

fn weight_onto(state: &[Complex64], points: usize, modes: &[FreeMode], family: Family) -> f64 {
    modes
        .iter()
        .map(|m| amplitude(state, points, m, family).norm_sqr())
        .sum()
}

fn opposite(family: Family) -> Family {
    match family {
        Family::Negative => Family::Positive,
        Family::Positive => Family::Negative,
    }
}

/// Evolves every retained mode of `family` over `[0, T]` and records the
/// weight on the opposite family at `snapshot_steps`.
fn evolve_columns(
    propagator: &Propagator,
    family: Family,
    snapshot_steps: &[usize],
    keep_finals: bool,
) -> Result<ColumnRun> {
    let basis = propagator.basis();
    let modes = basis.modes();
    if modes.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let points = basis.grid().points();
    let steps = propagator.stepper().steps();
    let target = opposite(family);
    let workers = rayon::current_num_threads().max(1);
    let chunk = modes.len().div_ceil(workers);

    let chunks: Vec<Result<(Vec<Vec<f64>>, Vec<Vec<Complex64>>, Vec<f64>)>> = modes
        .par_chunks(chunk)
        .enumerate()
        .map(|(ci, block)| {
            let mut states: Vec<Complex64> = block
                .iter()
                .flat_map(|m| native_initial(m, family, points))
                .collect();
            let mut snaps = vec![Vec::with_capacity(block.len()); snapshot_steps.len()];
            let record = |step: usize, states: &[Complex64], snaps: &mut Vec<Vec<f64>>| {
                for (k, _) in snapshot_steps
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s == step)
                {
                    snaps[k] = states
                        .chunks_exact(2 * points)
                        .map(|st| weight_onto(st, points, modes, target))
                        .collect();
                }
            };
            record(0, &states, &mut snaps);
            let mut ws = propagator.workspace();
            propagator.evolve_native(&mut states, 0, steps, snapshot_steps, &mut ws, |s, st| {
                if s < steps {
                    record(s, st, &mut snaps)
                }
            });
            let mut weights = Vec::with_capacity(block.len());
            for (i, st) in states.chunks_exact(2 * points).enumerate() {
                let drift = (native_norm(st) - 1.0).abs();
                if !(drift <= INSTABILITY_DRIFT) {
                    return Err(Error::Instability {
                        mode: ci * chunk + i,
                        drift,
                    });
                }
                weights.push(weight_onto(st, points, modes, target));
            }
            record(steps, &states, &mut snaps);
            let finals = if keep_finals {
                states
                    .chunks_exact(2 * points)
                    .map(|s| s.to_vec())
                    .collect()
            } else {
                Vec::new()
            };
            Ok((snaps, finals, weights))
        })
        .collect();

    let mut snapshots = vec![Vec::with_capacity(modes.len()); snapshot_steps.len()];
    let mut finals = keep_finals.then(|| Vec::with_capacity(modes.len()));
    let mut weights = Vec::with_capacity(modes.len());
    for part in chunks {
        let (snaps, states, w) = part?;
        for (dst, src) in snapshots.iter_mut().zip(snaps) {
            dst.extend(src);
        }
        if let Some(f) = finals.as_mut() {
            f.extend(states);
        }
        weights.extend(w);
    }
    Ok(ColumnRun {
        snapshots,
        finals,
        weights,
    })
}

/// `N(t)` sample times: 21 evenly spaced times from 0 to `T` on the step lattice.
pub fn default_snapshot_times(stepper: &StepperConfig) -> Vec<f64> {
    let steps = stepper.steps();
    (0..=20)
        .map(|k| stepper.time_of_step((k * steps + 10) / 20))
        .collect()
}

fn snapshot_steps(stepper: &StepperConfig, times: &[f64]) -> Result<Vec<usize>> {
    let mut steps = times
        .iter()
        .map(|&t| {
            let s = (t / stepper.dt()).round();
            if !(0.0..=stepper.steps() as f64).contains(&s) {
                return Err(Error::InvalidParameter(format!(
                    "snapshot time {t} is outside [0, {}]",
                    stepper.total_time()
                )));
            }
            Ok(s as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    steps.sort_unstable();
    steps.dedup();
    Ok(steps)
}

/// Full run: evolves all negative modes, assembles `U_pn` at `T`, the
/// `N(t)` series at the snapshot times and `ρ_e(z, T)`.
pub fn run_simulation(
    params: &WellParameters,
    mode: PotentialMode,
    basis: &FreeModeBasis,
    stepper: &StepperConfig,
    snapshot_times: &[f64],
) -> Result<SimulationOutput> {
    let propagator = Propagator::new(basis, params, mode, stepper)?;
    let steps = snapshot_steps(stepper, snapshot_times)?;
    let run = evolve_columns(&propagator, Family::Negative, &steps, true)?;
    let finals = run.finals.expect("finals requested");

    let modes = basis.modes();
    let points = basis.grid().points();
    let mut matrix = BogoliubovMatrix::zeros(modes.len(), modes.len(), stepper.total_time());
    let mut completeness = Vec::with_capacity(modes.len());
    let mut evolved_norms = Vec::with_capacity(modes.len());
    for (n, state) in finals.iter().enumerate() {
        for (p, m) in modes.iter().enumerate() {
            matrix.set(p, n, amplitude(state, points, m, Family::Positive));
        }
        let stay = weight_onto(state, points, modes, Family::Negative);
        completeness.push(matrix.column_weight(n) + stay);
        evolved_norms.push(native_norm(state));
    }
    let final_number = matrix.pair_number();

    let series = steps
        .iter()
        .zip(&run.snapshots)
        .map(|(&s, col)| {
            let value = if s == stepper.steps() {
                final_number
            } else {
                col.iter().sum()
            };
            (stepper.time_of_step(s), value)
        })
        .collect();

    let density = electron_density(&matrix, basis)?;
    Ok(SimulationOutput {
        observables: PairObservables {
            mode,
            series,
            positions: basis.grid().positions(),
            density,
            final_number,
        },
        matrix,
        evolved_norms,
        completeness,
    })
}

/// `N(T)` alone, without storing `U_pn`.
pub fn final_pair_number(
    params: &WellParameters,
    mode: PotentialMode,
    basis: &FreeModeBasis,
    stepper: &StepperConfig,
) -> Result<f64> {
    let propagator = Propagator::new(basis, params, mode, stepper)?;
    let run = evolve_columns(&propagator, Family::Negative, &[], false)?;
    Ok(run.weights.iter().sum())
}

/// Positron count `Σ_n Σ_p |U_np|²` from evolving the positive modes and
/// projecting onto the negative ones.
pub fn positron_number(
    params: &WellParameters,
    mode: PotentialMode,
    basis: &FreeModeBasis,
    stepper: &StepperConfig,
) -> Result<f64> {
    let propagator = Propagator::new(basis, params, mode, stepper)?;
    let run = evolve_columns(&propagator, Family::Positive, &[], false)?;
    Ok(run.weights.iter().sum())
}

/// `ρ_e(z) = Σ_n |Σ_p U_pn u_p(z)|²` on the grid.
pub fn electron_density(matrix: &BogoliubovMatrix, basis: &FreeModeBasis) -> Result<Vec<f64>> {
    let modes = basis.modes();
    if matrix.rows() != modes.len() {
        return Err(Error::GridMismatch {
            field: matrix.rows(),
            basis: modes.len(),
        });
    }
    let points = basis.grid().points();
    let scale = 1.0 / basis.grid().length().sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let mut density = vec![0.0; points];
    let mut buf = vec![zero; 2 * points];
    for n in 0..matrix.cols() {
        buf.iter_mut().for_each(|x| *x = zero);
        let column = matrix.column(n);
        if column.iter().all(|u| *u == zero) {
            continue;
        }
        for (u, m) in column.iter().zip(modes) {
            let s = if m.wave_number % 2 == 0 {
                scale
            } else {
                -scale
            };
            buf[m.bin] = u * (m.a * s);
            buf[points + m.bin] = u * (m.b * s);
        }
        basis.ifft().process(&mut buf);
        let (up, down) = buf.split_at(points);
        for ((rho, u), d) in density.iter_mut().zip(up).zip(down) {
            *rho += u.norm_sqr() + d.norm_sqr();
        }
    }
    Ok(density)
}

/// `N(T)` for one potential, or exactly zero when the potential vanishes identically.
fn single_well_number(
    params: &WellParameters,
    mode: PotentialMode,
    basis: &FreeModeBasis,
    stepper: &StepperConfig,
) -> Result<f64> {
    if params.max_abs_potential(mode) == 0.0 {
        return Ok(0.0);
    }
    final_pair_number(params, mode, basis, stepper)
}

/// Pair numbers for the combined well and each single well at `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainResult {
    pub combined: f64,
    pub static_only: f64,
    pub oscillating_only: f64,
    pub gain: f64,
}

impl GainResult {
    pub fn new(combined: f64, static_only: f64, oscillating_only: f64) -> Self {
        Self {
            combined,
            static_only,
            oscillating_only,
            gain: combined - static_only - oscillating_only,
        }
    }
}

/// `ΔN = N_c − N_s − N_o` from three runs sharing grid, basis and stepper.
pub fn gain_number(
    params: &WellParameters,
    basis: &FreeModeBasis,
    stepper: &StepperConfig,
) -> Result<GainResult> {
    let run = |mode| single_well_number(params, mode, basis, stepper);
    Ok(GainResult::new(
        run(PotentialMode::Combined)?,
        run(PotentialMode::StaticOnly)?,
        run(PotentialMode::OscillatingOnly)?,
    ))
}

/// Trapezoid integral of a periodic density sampled on the grid.
pub fn integrate_density(density: &[f64], dz: f64) -> f64 {
    density.iter().sum::<f64>() * dz
}
