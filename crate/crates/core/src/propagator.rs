//! Strang-split time evolution of the Dirac equation with a scalar potential.
//!
//! States are advanced in "native" momentum variables `w_m = ψ̃_k (-1)^k`
//! stored in FFT bin order, so that the unnormalized inverse FFT of `w`
//! gives `√L ψ(z_j)`. One state occupies `2n` consecutive values: the upper
//! component bins followed by the lower component bins.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{FreeModeBasis, SpinorField};
use crate::potential::{PotentialMode, WellParameters};

/// Norm drift that aborts a run.
pub const INSTABILITY_DRIFT: f64 = 1e-6;

/// Steps advanced per state while its buffer stays cache resident.
const PHASE_BLOCK: usize = 64;

/// Largest potential phase `dt·max|V|` accepted per step.
pub const MAX_PHASE_PER_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepperConfig {
    dt: f64,
    total_time: f64,
    steps: usize,
    pub midpoint_sampling: bool,
}

impl Default for StepperConfig {
    fn default() -> Self {
        Self::new(1e-7, 0.002).expect("default stepper is valid")
    }
}

impl StepperConfig {
    /// Builds a stepper whose step divides `total_time` exactly; the
    /// requested `dt` is rounded to the nearest such value.
    pub fn new(dt: f64, total_time: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive, got {dt}"
            )));
        }
        if !(total_time.is_finite() && total_time > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "total time must be positive, got {total_time}"
            )));
        }
        let steps = (total_time / dt).round().max(1.0) as usize;
        Ok(Self {
            dt: total_time / steps as f64,
            total_time,
            steps,
            midpoint_sampling: true,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn time_of_step(&self, step: usize) -> f64 {
        if step == self.steps {
            self.total_time
        } else {
            step as f64 * self.dt
        }
    }

    /// Step index nearest to `t`, or an error when `t` is not on the step lattice.
    pub fn step_of_time(&self, t: f64) -> Result<usize> {
        let s = t / self.dt;
        let r = s.round();
        if !(r >= 0.0 && r <= self.steps as f64) || (s - r).abs() > 1e-6 {
            return Err(Error::InvalidParameter(format!(
                "time {t} is not a multiple of dt={} inside [0, {}]",
                self.dt, self.total_time
            )));
        }
        Ok(r as usize)
    }

    /// Accuracy guard on the per-step potential phase.
    pub fn check_phase(&self, params: &WellParameters, mode: PotentialMode) -> Result<()> {
        let phase = self.dt * params.max_abs_potential(mode);
        if phase > MAX_PHASE_PER_STEP {
            return Err(Error::InvalidParameter(format!(
                "potential phase per step {phase:.3e} exceeds {MAX_PHASE_PER_STEP}; reduce dt"
            )));
        }
        Ok(())
    }
}

/// 2×2 kinetic propagator `exp(-i H₀(p) τ)` stored as `(m00, m01 = m10, m11)`.
#[derive(Debug, Clone, Copy)]
struct KineticFactor {
    m00: Complex64,
    m01: Complex64,
    m11: Complex64,
}

impl KineticFactor {
    fn new(c: f64, momentum: f64, energy: f64, tau: f64) -> Self {
        let (sin, cos) = (energy * tau).sin_cos();
        let s = sin / energy;
        let c2 = c * c;
        Self {
            m00: Complex64::new(cos, -s * c2),
            m01: Complex64::new(0.0, -s * c * momentum),
            m11: Complex64::new(cos, s * c2),
        }
    }

    #[inline(always)]
    fn apply(&self, up: &mut Complex64, down: &mut Complex64) {
        let u = *up;
        let d = *down;
        // m01 is purely imaginary
        let q = self.m01.im;
        *up = self.m00 * u + Complex64::new(-q * d.im, q * d.re);
        *down = Complex64::new(-q * u.im, q * u.re) + self.m11 * d;
    }
}

/// Scratch space for one worker.
pub(crate) struct Workspace {
    scratch: Vec<Complex64>,
    phase: Vec<Complex64>,
}

/// Split-operator evolution for one potential configuration.
#[derive(Debug, Clone)]
pub struct Propagator {
    basis: FreeModeBasis,
    params: WellParameters,
    mode: PotentialMode,
    stepper: StepperConfig,
    profile: Vec<f64>,
    full: Vec<KineticFactor>,
    half: Vec<KineticFactor>,
}

impl Propagator {
    pub fn new(
        basis: &FreeModeBasis,
        params: &WellParameters,
        mode: PotentialMode,
        stepper: &StepperConfig,
    ) -> Result<Self> {
        params.validate()?;
        stepper.check_phase(params, mode)?;
        let dt = stepper.dt();
        Ok(Self {
            basis: basis.clone(),
            params: *params,
            mode,
            stepper: *stepper,
            profile: params.signed_profile(basis.grid()),
            full: Self::factors(basis, dt),
            half: Self::factors(basis, 0.5 * dt),
        })
    }

    fn factors(basis: &FreeModeBasis, tau: f64) -> Vec<KineticFactor> {
        let c = basis.speed_of_light();
        basis
            .all_bins()
            .iter()
            .map(|m| KineticFactor::new(c, m.momentum, m.energy, tau))
            .collect()
    }

    pub fn basis(&self) -> &FreeModeBasis {
        &self.basis
    }

    pub fn params(&self) -> &WellParameters {
        &self.params
    }

    pub fn mode(&self) -> PotentialMode {
        self.mode
    }

    pub fn stepper(&self) -> &StepperConfig {
        &self.stepper
    }

    fn points(&self) -> usize {
        self.basis.grid().points()
    }

    pub(crate) fn workspace(&self) -> Workspace {
        let n = self.points();
        let len = self
            .basis
            .fft()
            .get_inplace_scratch_len()
            .max(self.basis.ifft().get_inplace_scratch_len());
        Workspace {
            scratch: vec![Complex64::new(0.0, 0.0); len],
            phase: vec![Complex64::new(0.0, 0.0); n * PHASE_BLOCK],
        }
    }

    /// Position field to native momentum variables.
    pub(crate) fn to_native(&self, field: &SpinorField) -> Result<Vec<Complex64>> {
        let n = self.points();
        if field.len() != n {
            return Err(Error::GridMismatch {
                field: field.len(),
                basis: n,
            });
        }
        let grid = self.basis.grid();
        let scale = grid.dz() / grid.length().sqrt();
        let mut w = Vec::with_capacity(2 * n);
        w.extend_from_slice(&field.upper);
        w.extend_from_slice(&field.lower);
        self.basis.fft().process(&mut w);
        for x in w.iter_mut() {
            *x *= scale;
        }
        Ok(w)
    }

    pub(crate) fn from_native(&self, w: &[Complex64]) -> SpinorField {
        let n = self.points();
        let mut y = w.to_vec();
        self.basis.ifft().process(&mut y);
        let scale = 1.0 / self.basis.grid().length().sqrt();
        for x in y.iter_mut() {
            *x *= scale;
        }
        let lower = y.split_off(n);
        SpinorField::from_components(self.basis.grid(), y, lower)
            .expect("native buffer has grid size")
    }

    /// Applies `exp(-i H₀ τ)` exactly, mode by mode.
    pub fn kinetic_step(&self, field: &SpinorField, tau: f64) -> Result<SpinorField> {
        let factors = Self::factors(&self.basis, tau);
        let mut w = self.to_native(field)?;
        let n = self.points();
        let (up, down) = w.split_at_mut(n);
        for ((u, d), k) in up.iter_mut().zip(down.iter_mut()).zip(&factors) {
            k.apply(u, d);
        }
        Ok(self.from_native(&w))
    }

    /// Multiplies both components by `exp(-i V(z_j, t) dt)`.
    pub fn potential_step(&self, field: &SpinorField, t: f64, dt: f64) -> SpinorField {
        let (stat, osc) = self.params.amplitudes(t, self.mode);
        let mut out = field.clone();
        for (j, &s) in self.profile.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -(stat * s + osc * s) * dt);
            out.upper[j] *= phase;
            out.lower[j] *= phase;
        }
        out
    }

    /// Evolves from `t = 0` to `t = T`.
    pub fn evolve(&self, field: &SpinorField) -> Result<SpinorField> {
        self.evolve_interval(field, 0.0, self.stepper.total_time())
    }

    /// Evolves from `t0` to `t1`; both must lie on the step lattice.
    pub fn evolve_interval(&self, field: &SpinorField, t0: f64, t1: f64) -> Result<SpinorField> {
        let first = self.stepper.step_of_time(t0)?;
        let last = self.stepper.step_of_time(t1)?;
        if last < first {
            return Err(Error::InvalidParameter(format!(
                "cannot evolve backwards from {t0} to {t1}"
            )));
        }
        let mut w = self.to_native(field)?;
        let mut ws = self.workspace();
        self.evolve_native(&mut w, first, last - first, &[], &mut ws, |_, _| {});
        self.finish(&mut w)?;
        Ok(self.from_native(&w))
    }

    fn finish(&self, w: &[Complex64]) -> Result<()> {
        let drift = (native_norm(w) - 1.0).abs();
        if drift > INSTABILITY_DRIFT {
            return Err(Error::Instability { mode: 0, drift });
        }
        Ok(())
    }

    /// Advances a batch of native states by `steps` Strang steps starting at
    /// global step `first`: `K(dt/2) [V(dt) K(dt)]… V(dt) K(dt/2)`.
    ///
    /// `observer(step, states)` runs after each global step listed in
    /// `breakpoints`; at that point every state still owes a trailing half
    /// kinetic step, which changes mode amplitudes only by a phase.
    pub(crate) fn evolve_native<F>(
        &self,
        states: &mut [Complex64],
        first: usize,
        steps: usize,
        breakpoints: &[usize],
        ws: &mut Workspace,
        mut observer: F,
    ) where
        F: FnMut(usize, &[Complex64]),
    {
        let n = self.points();
        debug_assert_eq!(states.len() % (2 * n), 0);
        if steps == 0 {
            return;
        }
        let end = first + steps;
        self.apply_kinetic(states, &self.half);
        let mut start = first;
        while start < end {
            let mut stop = (start + PHASE_BLOCK).min(end);
            if let Some(&b) = breakpoints.iter().find(|&&b| b > start && b < stop) {
                stop = b;
            }
            self.fill_phases(start, stop, ws);
            for state in states.chunks_exact_mut(2 * n) {
                for (i, s) in (start..stop).enumerate() {
                    let phase = &ws.phase[i * n..(i + 1) * n];
                    let kinetic = if s + 1 == end { &self.half } else { &self.full };
                    self.basis
                        .ifft()
                        .process_with_scratch(state, &mut ws.scratch);
                    let (up, down) = state.split_at_mut(n);
                    for ((u, d), p) in up.iter_mut().zip(down.iter_mut()).zip(phase) {
                        *u *= p;
                        *d *= p;
                    }
                    self.basis
                        .fft()
                        .process_with_scratch(state, &mut ws.scratch);
                    let (up, down) = state.split_at_mut(n);
                    for ((u, d), k) in up.iter_mut().zip(down.iter_mut()).zip(kinetic) {
                        k.apply(u, d);
                    }
                }
            }
            if breakpoints.contains(&stop) {
                observer(stop, states);
            }
            start = stop;
        }
    }

    /// Potential phases `exp(-i V(z_j, t_s) dt)/n` for steps `start..stop`.
    fn fill_phases(&self, start: usize, stop: usize, ws: &mut Workspace) {
        let n = self.points();
        let dt = self.stepper.dt();
        let inv_n = 1.0 / n as f64;
        for (i, s) in (start..stop).enumerate() {
            let t = if self.stepper.midpoint_sampling {
                (s as f64 + 0.5) * dt
            } else {
                s as f64 * dt
            };
            let (stat, osc) = self.params.amplitudes(t, self.mode);
            for (p, &prof) in ws.phase[i * n..(i + 1) * n].iter_mut().zip(&self.profile) {
                *p = Complex64::from_polar(inv_n, -(stat * prof + osc * prof) * dt);
            }
        }
    }

    fn apply_kinetic(&self, states: &mut [Complex64], factors: &[KineticFactor]) {
        let n = self.points();
        for state in states.chunks_exact_mut(2 * n) {
            let (up, down) = state.split_at_mut(n);
            for ((u, d), k) in up.iter_mut().zip(down.iter_mut()).zip(factors) {
                k.apply(u, d);
            }
        }
    }
}

/// `Σ|w|²`, the norm of a single native state.
pub(crate) fn native_norm(w: &[Complex64]) -> f64 {
    w.iter().map(|c| c.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{NumericalGrid, SPEED_OF_LIGHT};

    fn setup(points: usize) -> (FreeModeBasis, StepperConfig) {
        let grid = NumericalGrid::new(1.2, points).unwrap();
        let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
        (basis, StepperConfig::new(1e-7, 2e-5).unwrap())
    }

    #[test]
    fn stepper_divides_total_time() {
        let s = StepperConfig::new(3e-7, 0.002).unwrap();
        assert_eq!(s.steps(), 6667);
        assert!((s.dt() * s.steps() as f64 - 0.002).abs() < 1e-15);
        assert_eq!(StepperConfig::default().steps(), 20_000);
        assert!(StepperConfig::new(0.0, 0.002).is_err());
        assert!(StepperConfig::new(1e-7, -1.0).is_err());
        assert!(s.step_of_time(0.001).is_err());
        assert!(StepperConfig::default().step_of_time(0.001).unwrap() == 10_000);
        assert!(StepperConfig::default().step_of_time(0.00100003).is_err());
    }

    #[test]
    fn phase_guard() {
        let s = StepperConfig::new(1e-6, 0.002).unwrap();
        let p = WellParameters::in_c2_units(3.0, 1.47, 1.0);
        assert!(s.check_phase(&p, PotentialMode::Combined).is_err());
        assert!(StepperConfig::default()
            .check_phase(&p, PotentialMode::Combined)
            .is_ok());
    }

    #[test]
    fn kinetic_step_on_eigenmodes_is_a_phase() {
        let (basis, stepper) = setup(32);
        let prop = Propagator::new(
            &basis,
            &WellParameters::in_c2_units(0.0, 0.0, 0.0),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let tau = 3.3e-5;
        for idx in [0, 5, 16, 31] {
            let e = basis.modes()[idx].energy;
            let u = basis.positive_mode(idx);
            let out = prop.kinetic_step(&u, tau).unwrap();
            let mut want = u.clone();
            let ph = Complex64::from_polar(1.0, -e * tau);
            want.upper
                .iter_mut()
                .chain(want.lower.iter_mut())
                .for_each(|x| *x *= ph);
            assert!(out.max_abs_diff(&want) < 1e-12, "u mode {idx}");

            let v = basis.negative_mode(idx);
            let out = prop.kinetic_step(&v, tau).unwrap();
            let mut want = v.clone();
            let ph = Complex64::from_polar(1.0, e * tau);
            want.upper
                .iter_mut()
                .chain(want.lower.iter_mut())
                .for_each(|x| *x *= ph);
            assert!(out.max_abs_diff(&want) < 1e-12, "v mode {idx}");
            assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn potential_step_is_pure_phase() {
        let (basis, stepper) = setup(32);
        let zero = Propagator::new(
            &basis,
            &WellParameters::in_c2_units(0.0, 0.0, 0.0),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let mut field = basis.positive_mode(3);
        let v = basis.negative_mode(9);
        for (a, b) in field.upper.iter_mut().zip(&v.upper) {
            *a = (*a + b) / 2f64.sqrt();
        }
        for (a, b) in field.lower.iter_mut().zip(&v.lower) {
            *a = (*a + b) / 2f64.sqrt();
        }
        assert_eq!(zero.potential_step(&field, 1e-4, 1e-7), field);

        let well = Propagator::new(
            &basis,
            &WellParameters::in_c2_units(2.0, 1.47, 1.5),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let out = well.potential_step(&field, 1e-4, 1e-7);
        assert!((out.norm_sqr() - field.norm_sqr()).abs() < 1e-12);
        for j in 0..field.len() {
            let ratio_u = out.upper[j] / field.upper[j];
            let ratio_d = out.lower[j] / field.lower[j];
            assert!((ratio_u - ratio_d).norm() < 1e-12);
        }
    }

    #[test]
    fn free_evolution_keeps_negative_modes() {
        let (basis, stepper) = setup(32);
        let prop = Propagator::new(
            &basis,
            &WellParameters::in_c2_units(0.0, 0.0, 0.0),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let v = basis.negative_mode(11);
        let out = prop.evolve(&v).unwrap();
        let c = basis.project(&out).unwrap();
        assert!(c.positive.iter().all(|x| x.norm() < 1e-10));
        assert!((c.negative[11].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolution_is_unitary_and_time_ordered() {
        let (basis, stepper) = setup(64);
        let prop = Propagator::new(
            &basis,
            &WellParameters::in_c2_units(2.5, 1.47, 1.5),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let field = basis.negative_mode(30);
        let whole = prop.evolve(&field).unwrap();
        assert!((whole.norm_sqr() - 1.0).abs() < 1e-8);
        let t_half = 0.5 * stepper.total_time();
        let first = prop.evolve_interval(&field, 0.0, t_half).unwrap();
        let split = prop
            .evolve_interval(&first, t_half, stepper.total_time())
            .unwrap();
        assert!(whole.max_abs_diff(&split) < 1e-10);
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let (basis, stepper) = setup(32);
        let prop = Propagator::new(
            &basis,
            &WellParameters::default(),
            PotentialMode::Combined,
            &stepper,
        )
        .unwrap();
        let other = NumericalGrid::new(1.2, 16).unwrap();
        assert!(prop.evolve(&SpinorField::zeros(&other)).is_err());
    }
}
