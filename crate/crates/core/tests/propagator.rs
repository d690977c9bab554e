use pairwell_core::{
    FreeModeBasis, NumericalGrid, PotentialMode, Propagator, SpinorField, StepperConfig,
    WellParameters, SPEED_OF_LIGHT,
};

fn basis(points: usize) -> FreeModeBasis {
    let grid = NumericalGrid::new(1.2, points).unwrap();
    FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap()
}

fn evolve(
    basis: &FreeModeBasis,
    params: &WellParameters,
    dt: f64,
    t: f64,
    field: &SpinorField,
) -> SpinorField {
    let stepper = StepperConfig::new(dt, t).unwrap();
    Propagator::new(basis, params, PotentialMode::Combined, &stepper)
        .unwrap()
        .evolve(field)
        .unwrap()
}

/// The deepest-lying negative mode near p = 0 couples most strongly to the well.
fn probe_state(basis: &FreeModeBasis) -> SpinorField {
    let idx = basis
        .modes()
        .iter()
        .position(|m| m.wave_number == 3)
        .unwrap();
    basis.negative_mode(idx)
}

#[test]
fn halving_dt_at_default_parameters() {
    let b = basis(256);
    let params = WellParameters::in_c2_units(2.5, 1.47, 1.5);
    let field = probe_state(&b);
    let coarse = evolve(&b, &params, 1e-7, 0.002, &field);
    let fine = evolve(&b, &params, 5e-8, 0.002, &field);
    let diff = coarse.max_abs_diff(&fine);
    assert!(diff < 1e-4, "{diff}");
    assert!((coarse.norm_sqr() - 1.0).abs() < 1e-8);
}

#[test]
fn strang_splitting_is_second_order() {
    let b = basis(128);
    let params = WellParameters::in_c2_units(2.5, 1.47, 2.5);
    let field = probe_state(&b);
    let t = 2e-4;
    let dt = 4e-7;
    let reference = evolve(&b, &params, dt / 8.0, t, &field);
    let e1 = evolve(&b, &params, dt, t, &field).max_abs_diff(&reference);
    let e2 = evolve(&b, &params, dt / 2.0, t, &field).max_abs_diff(&reference);
    // error(dt/8) is a 1/64 share of error(dt); correct for it.
    let ratio = (e1 - e1 / 64.0) / (e2 - e1 / 64.0);
    eprintln!("error ratio {ratio:.3} (e1={e1:.3e}, e2={e2:.3e})");
    assert!(
        (ratio - 4.0).abs() <= 1.0,
        "ratio {ratio} (e1={e1:e}, e2={e2:e})"
    );
}

#[test]
fn norm_is_conserved_for_every_mode_family() {
    let b = basis(64);
    let params = WellParameters::in_c2_units(3.0, 1.47, 0.7);
    for idx in [0, 17, 32, 63] {
        for field in [b.positive_mode(idx), b.negative_mode(idx)] {
            let out = evolve(&b, &params, 1e-7, 2e-4, &field);
            assert!((out.norm_sqr() - 1.0).abs() < 1e-8);
        }
    }
}
