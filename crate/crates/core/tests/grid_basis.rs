use std::f64::consts::PI;

use num_complex::Complex64;
use pairwell_core::{FreeModeBasis, NumericalGrid, SpinorField, SPEED_OF_LIGHT};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_field(grid: &NumericalGrid, seed: u64) -> SpinorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.points();
    let mut draw = || -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let (up, down) = (draw(), draw());
    let mut f = SpinorField::from_components(grid, up, down).unwrap();
    let norm = f.norm_sqr().sqrt();
    f.scale(1.0 / norm);
    f
}

/// `⟨u_p|ψ⟩` and `⟨v_p|ψ⟩` by explicit summation over the grid.
fn direct_projection(basis: &FreeModeBasis, field: &SpinorField) -> Vec<(Complex64, Complex64)> {
    let grid = basis.grid();
    let norm = 1.0 / grid.length().sqrt();
    basis
        .modes()
        .iter()
        .map(|m| {
            let (mut cp, mut cn) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for j in 0..grid.points() {
                let plane = Complex64::from_polar(norm, -m.momentum * grid.z(j)) * grid.dz();
                cp += plane * (field.upper[j] * m.a + field.lower[j] * m.b);
                cn += plane * (-field.upper[j] * m.b + field.lower[j] * m.a);
            }
            (cp, cn)
        })
        .collect()
}

#[test]
fn projection_matches_direct_sum_and_parseval() {
    let grid = NumericalGrid::new(1.2, 64).unwrap();
    let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
    for seed in 0..4 {
        let field = random_field(&grid, seed);
        let fast = basis.project(&field).unwrap();
        let slow = direct_projection(&basis, &field);
        for (i, (cp, cn)) in slow.iter().enumerate() {
            assert!((fast.positive[i] - cp).norm() < 1e-12);
            assert!((fast.negative[i] - cn).norm() < 1e-12);
        }
        let parseval: f64 = slow.iter().map(|(a, b)| a.norm_sqr() + b.norm_sqr()).sum();
        assert!((parseval - 1.0).abs() < 1e-10, "seed {seed}: {parseval}");
        assert!((fast.norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn modes_are_orthonormal() {
    let grid = NumericalGrid::new(1.2, 16).unwrap();
    let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
    let inner = |a: &SpinorField, b: &SpinorField| -> Complex64 {
        a.upper
            .iter()
            .zip(&b.upper)
            .chain(a.lower.iter().zip(&b.lower))
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            * grid.dz()
    };
    for p in 0..basis.len() {
        let up = basis.positive_mode(p);
        let vp = basis.negative_mode(p);
        for q in 0..basis.len() {
            let uq = basis.positive_mode(q);
            let vq = basis.negative_mode(q);
            let d = if p == q { 1.0 } else { 0.0 };
            assert!((inner(&up, &uq) - d).norm() < 1e-12);
            assert!((inner(&vp, &vq) - d).norm() < 1e-12);
            assert!(inner(&up, &vq).norm() < 1e-12);
        }
    }
}

#[test]
fn completeness_on_random_vectors() {
    // Σ_p u_p u_p† + v_p v_p† applied explicitly, mode by mode.
    let grid = NumericalGrid::new(1.2, 32).unwrap();
    let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
    let field = random_field(&grid, 11);
    let coeffs = direct_projection(&basis, &field);
    let mut rebuilt = SpinorField::zeros(&grid);
    for (i, (cp, cn)) in coeffs.iter().enumerate() {
        let u = basis.positive_mode(i);
        let v = basis.negative_mode(i);
        for j in 0..grid.points() {
            rebuilt.upper[j] += cp * u.upper[j] + cn * v.upper[j];
            rebuilt.lower[j] += cp * u.lower[j] + cn * v.lower[j];
        }
    }
    assert!(rebuilt.max_abs_diff(&field) < 1e-10);
}

#[test]
fn energies_bounded_below_by_rest_energy() {
    let grid = NumericalGrid::new(1.2, 256).unwrap();
    let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let at_rest: Vec<_> = basis.modes().iter().filter(|m| m.energy == c2).collect();
    assert_eq!(at_rest.len(), 1);
    assert_eq!(at_rest[0].momentum, 0.0);
    let top = basis
        .modes()
        .iter()
        .map(|m| m.momentum.abs())
        .fold(0.0, f64::max);
    assert!((top - PI * 256.0 / 1.2).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn synthesize_inverts_project(seed in any::<u64>(), half in 4usize..40) {
        let grid = NumericalGrid::new(1.2, 2 * half).unwrap();
        let basis = FreeModeBasis::new(&grid, SPEED_OF_LIGHT, None).unwrap();
        let field = random_field(&grid, seed);
        let coeffs = basis.project(&field).unwrap();
        prop_assert!((coeffs.norm_sqr() - field.norm_sqr()).abs() < 1e-10);
        let back = basis.synthesize(&coeffs).unwrap();
        prop_assert!(back.max_abs_diff(&field) < 1e-10);
    }

    #[test]
    fn spinor_normalization(k in -2000i64..2000) {
        let c = SPEED_OF_LIGHT;
        let grid = NumericalGrid::new(1.2, 4096).unwrap();
        let basis = FreeModeBasis::new(&grid, c, None).unwrap();
        let m = basis.all_bins()[grid.bin_of(k)];
        prop_assert!((m.a * m.a + m.b * m.b - 1.0).abs() < 1e-12);
        prop_assert!(m.a * (-m.b) + m.b * m.a == 0.0);
    }
}
