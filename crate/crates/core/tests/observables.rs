use num_complex::Complex64;
use pairwell_core::observables::{default_snapshot_times, integrate_density, positron_number};
use pairwell_core::{
    electron_density, final_pair_number, gain_number, run_simulation, BogoliubovMatrix,
    FreeModeBasis, NumericalGrid, PotentialMode, SignConvention, StepperConfig, WellParameters,
    SPEED_OF_LIGHT,
};

fn small() -> (FreeModeBasis, StepperConfig) {
    let grid = NumericalGrid::new(1.2, 64).unwrap();
    let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
    (basis, StepperConfig::new(2e-7, 4e-4).unwrap())
}

#[test]
fn free_vacuum_is_stable() {
    let (basis, stepper) = small();
    let params = WellParameters::in_c2_units(0.0, 0.0, 0.0);
    let out = run_simulation(
        &params,
        PotentialMode::Combined,
        &basis,
        &stepper,
        &default_snapshot_times(&stepper),
    )
    .unwrap();
    assert!(out.observables.final_number < 1e-10);
    assert!(out.observables.series.iter().all(|&(_, n)| n < 1e-10));
}

#[test]
fn uniform_potential_creates_nothing() {
    // A well much wider than the box is a constant: a global phase only.
    let (basis, stepper) = small();
    let params = WellParameters {
        width: 100.0,
        ..WellParameters::in_c2_units(2.5, 1.47, 1.5)
    };
    let n = final_pair_number(&params, PotentialMode::Combined, &basis, &stepper).unwrap();
    assert!(n < 1e-10, "{n}");
}

#[test]
fn series_density_and_completeness() {
    let (basis, stepper) = small();
    let params = WellParameters::in_c2_units(2.5, 1.47, 1.5);
    let times = default_snapshot_times(&stepper);
    assert_eq!(times.len(), 21);
    let out = run_simulation(&params, PotentialMode::Combined, &basis, &stepper, &times).unwrap();
    let obs = &out.observables;
    assert_eq!(obs.series.len(), 21);
    assert_eq!(obs.series[0], (0.0, 0.0));
    assert_eq!(obs.series.last().unwrap().0, stepper.total_time());
    assert_eq!(obs.series.last().unwrap().1, obs.final_number);
    assert!(obs.series.iter().all(|&(_, n)| n >= 0.0));
    assert!(obs.final_number > 0.0 && obs.final_number < basis.len() as f64);

    let integral = integrate_density(&obs.density, basis.grid().dz());
    assert!((integral / obs.final_number - 1.0).abs() < 1e-8);
    assert!(obs.density.iter().all(|&r| r >= 0.0));

    for (n, (&norm, &full)) in out.evolved_norms.iter().zip(&out.completeness).enumerate() {
        assert!((norm - 1.0).abs() < 1e-8);
        assert!((full - 1.0).abs() < 1e-8);
        assert!(out.matrix.column_weight(n) <= 1.0 + 1e-8);
    }
    assert_eq!(out.matrix.pair_number(), obs.final_number);

    let direct = final_pair_number(&params, PotentialMode::Combined, &basis, &stepper).unwrap();
    assert_eq!(direct, obs.final_number);
}

#[test]
fn density_of_simple_matrices() {
    let (basis, _) = small();
    let modes = basis.len();
    let zero = BogoliubovMatrix::zeros(modes, modes, 0.0);
    assert!(electron_density(&zero, &basis)
        .unwrap()
        .iter()
        .all(|&r| r == 0.0));

    let mut single = BogoliubovMatrix::zeros(modes, modes, 0.0);
    let alpha = Complex64::new(0.3, -0.4);
    single.set(5, 17, alpha);
    let rho = electron_density(&single, &basis).unwrap();
    let want = alpha.norm_sqr() / basis.grid().length();
    assert!(rho
        .iter()
        .all(|&r| (r - want).abs() < 1e-12 * want.max(1.0)));

    let wrong = BogoliubovMatrix::zeros(modes - 1, modes, 0.0);
    assert!(electron_density(&wrong, &basis).is_err());
}

#[test]
fn counts_survive_global_sign_flip() {
    let (basis, stepper) = small();
    let params = WellParameters::in_c2_units(2.5, 1.47, 1.5);
    let flipped = WellParameters {
        sign: SignConvention::Negated,
        ..params
    };
    let a = final_pair_number(&params, PotentialMode::Combined, &basis, &stepper).unwrap();
    let b = final_pair_number(&flipped, PotentialMode::Combined, &basis, &stepper).unwrap();
    assert!(((a - b) / a).abs() < 1e-6, "{a} vs {b}");
}

#[test]
fn electron_and_positron_counts_agree() {
    let (basis, stepper) = small();
    let params = WellParameters::in_c2_units(2.1, 1.47, 1.5);
    let e = final_pair_number(&params, PotentialMode::Combined, &basis, &stepper).unwrap();
    let p = positron_number(&params, PotentialMode::Combined, &basis, &stepper).unwrap();
    assert!(((e - p) / e).abs() < 1e-6, "{e} vs {p}");
}

#[test]
fn reduction_is_independent_of_worker_count() {
    let (basis, stepper) = small();
    let params = WellParameters::in_c2_units(2.5, 1.47, 2.5);
    let times = default_snapshot_times(&stepper);
    let run = |workers: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .unwrap()
            .install(|| {
                run_simulation(&params, PotentialMode::Combined, &basis, &stepper, &times).unwrap()
            })
    };
    let one = run(1);
    for k in [2, 3, 5] {
        let other = run(k);
        assert_eq!(one.observables, other.observables);
        assert_eq!(one.matrix, other.matrix);
    }
}

#[test]
fn gain_degenerates_for_single_wells() {
    let (basis, stepper) = small();
    let no_osc = WellParameters::in_c2_units(2.5, 0.0, 1.5);
    let g = gain_number(&no_osc, &basis, &stepper).unwrap();
    assert_eq!(g.combined, g.static_only);
    assert_eq!(g.oscillating_only, 0.0);
    assert_eq!(g.gain, 0.0);

    let no_static = WellParameters::in_c2_units(0.0, 1.47, 1.5);
    let g = gain_number(&no_static, &basis, &stepper).unwrap();
    assert_eq!(g.combined, g.oscillating_only);
    assert_eq!(g.static_only, 0.0);
    assert_eq!(g.gain, 0.0);
}

#[test]
fn cutoff_bounds_columns() {
    let grid = NumericalGrid::new(1.2, 64).unwrap();
    let basis =
        FreeModeBasis::new(&grid, SPEED_OF_LIGHT, Some(1.3 * SPEED_OF_LIGHT.powi(2))).unwrap();
    let stepper = StepperConfig::new(2e-7, 4e-4).unwrap();
    let params = WellParameters::in_c2_units(2.5, 1.47, 1.5);
    let out = run_simulation(&params, PotentialMode::Combined, &basis, &stepper, &[]).unwrap();
    assert_eq!(out.matrix.rows(), basis.len());
    for n in 0..out.matrix.cols() {
        assert!(out.completeness[n] <= 1.0 + 1e-8);
    }
}
