//! Bound-state spectrum of the static Dirac Hamiltonian `cσ₁p + σ₃c² + V_s S(z)`.
//!
//! The Hamiltonian is assembled in the plane-wave basis of the grid, which is
//! the same discrete operator the propagator integrates. Rows and columns are
//! ordered `[upper, lower]`, each block by ascending wave number.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{FreeModeBasis, NumericalGrid};
use crate::potential::{SignConvention, WellParameters};
use crate::sweep::format_sig9;

/// Relative distance from `±c²` below which a level counts as a continuum edge.
pub const GAP_EPSILON: f64 = 1e-6;

/// Fraction of a level's norm that must sit near the well for it to count as bound.
pub const LOCALIZATION_FRACTION: f64 = 0.9;

/// Localization window half-width in units of the edge width beyond `D/2`.
pub const LOCALIZATION_EDGES: f64 = 10.0;

/// Header of the spectrum CSV.
pub const SPECTRUM_CSV_HEADER: &str = "Vs_over_c2,level_index,energy_over_c2";

/// Minimum eigenvector overlap for a level to keep its index between depths.
pub const TRACKING_OVERLAP: f64 = 0.5;

/// Gap levels at one depth, in units of `c²`, ascending.
///
/// `level_index[i]` labels `levels_over_c2[i]` consistently across a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    pub depth_over_c2: f64,
    pub levels_over_c2: Vec<f64>,
    pub level_index: Vec<usize>,
}

pub type SpectrumCurve = Vec<SpectrumPoint>;

/// Eigen-decomposition of the static Hamiltonian at one depth.
#[derive(Debug, Clone)]
pub struct StaticSpectrum {
    /// Ascending eigenvalues, atomic units.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors in the plane-wave ordering, when computed.
    pub eigenvectors: Option<DMatrix<Complex64>>,
}

/// `Ṽ(q) = (1/n) Σ_j V(z_j) e^{-i p_q z_j}`, indexed by FFT bin of `q`.
fn potential_spectrum(
    static_depth: f64,
    grid: &NumericalGrid,
    params: &WellParameters,
) -> Vec<Complex64> {
    let n = grid.points();
    let mut buf: Vec<Complex64> = params
        .signed_profile(grid)
        .iter()
        .map(|s| Complex64::new(static_depth * s, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let inv_n = 1.0 / n as f64;
    buf.iter()
        .enumerate()
        .map(|(m, v)| {
            let sign = if grid.wave_number(m) % 2 == 0 {
                inv_n
            } else {
                -inv_n
            };
            v * sign
        })
        .collect()
}

/// Dense Hermitian `2n × 2n` Hamiltonian at static depth `static_depth` (a.u.).
pub fn assemble_hamiltonian(
    static_depth: f64,
    basis: &FreeModeBasis,
    params: &WellParameters,
) -> Result<DMatrix<Complex64>> {
    if !(static_depth >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "static depth must be non-negative, got {static_depth}"
        )));
    }
    params.validate()?;
    let grid = basis.grid();
    let n = grid.points();
    let c = basis.speed_of_light();
    let vq = potential_spectrum(static_depth, grid, params);
    let bins = grid.bins_ascending();
    let all = basis.all_bins();
    let mut h = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for (i, &bi) in bins.iter().enumerate() {
        let h0 = all[bi].hamiltonian(c);
        for s in 0..2 {
            for r in 0..2 {
                h[(s * n + i, r * n + i)] += Complex64::new(h0[s][r], 0.0);
            }
        }
        for (j, &bj) in bins.iter().enumerate() {
            let q = grid.bin_of(grid.wave_number(bi) - grid.wave_number(bj));
            let v = vq[q];
            h[(i, j)] += v;
            h[(n + i, n + j)] += v;
        }
    }
    let adjoint = h.adjoint();
    Ok((h + adjoint) * Complex64::new(0.5, 0.0))
}

/// Diagonalizes `h`; takes the real symmetric route when the imaginary part vanishes.
pub fn diagonalize(h: &DMatrix<Complex64>, vectors: bool) -> Result<StaticSpectrum> {
    let scale = h.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let real = h.iter().all(|x| x.im.abs() <= 1e-13 * scale);
    let check = |vals: &[f64]| -> Result<()> {
        if vals.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Eigen("non-finite eigenvalue".into()))
        }
    };
    if real {
        let hr = h.map(|x| x.re);
        if vectors {
            let eig = SymmetricEigen::try_new(hr, f64::EPSILON, 0)
                .ok_or_else(|| Error::Eigen("real symmetric solver did not converge".into()))?;
            let (vals, vecs) = sort_pairs(eig.eigenvalues.as_slice(), |k| {
                eig.eigenvectors.column(k).map(|x| Complex64::new(x, 0.0))
            });
            check(&vals)?;
            Ok(StaticSpectrum {
                eigenvalues: vals,
                eigenvectors: Some(vecs),
            })
        } else {
            let mut vals: Vec<f64> = hr.symmetric_eigenvalues().iter().copied().collect();
            vals.sort_by(f64::total_cmp);
            check(&vals)?;
            Ok(StaticSpectrum {
                eigenvalues: vals,
                eigenvectors: None,
            })
        }
    } else {
        let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
            .ok_or_else(|| Error::Eigen("hermitian solver did not converge".into()))?;
        let (vals, vecs) = sort_pairs(eig.eigenvalues.as_slice(), |k| {
            eig.eigenvectors.column(k).into_owned()
        });
        check(&vals)?;
        Ok(StaticSpectrum {
            eigenvalues: vals,
            eigenvectors: vectors.then_some(vecs),
        })
    }
}

fn sort_pairs<F>(values: &[f64], column: F) -> (Vec<f64>, DMatrix<Complex64>)
where
    F: Fn(usize) -> nalgebra::DVector<Complex64>,
{
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let vals = order.iter().map(|&k| values[k]).collect();
    let cols: Vec<_> = order.iter().map(|&k| column(k)).collect();
    (vals, DMatrix::from_columns(&cols))
}

/// Fraction of an eigenvector's norm within `|z| ≤ D/2 + 10W`.
pub fn localization(vector: &[Complex64], basis: &FreeModeBasis, params: &WellParameters) -> f64 {
    let grid = basis.grid();
    let n = grid.points();
    let bins = grid.bins_ascending();
    let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, &b) in bins.iter().enumerate() {
        // e^{i p_k z_j} = (-1)^k e^{2πi jk/n}
        let sign = if grid.wave_number(b) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        buf[b] = vector[i] * sign;
        buf[n + b] = vector[n + i] * sign;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let radius = 0.5 * params.width + LOCALIZATION_EDGES * params.edge;
    let (mut inside, mut total) = (0.0, 0.0);
    for j in 0..n {
        let w = buf[j].norm_sqr() + buf[n + j].norm_sqr();
        total += w;
        if grid.z(j).abs() <= radius {
            inside += w;
        }
    }
    if total > 0.0 {
        inside / total
    } else {
        0.0
    }
}

/// Localized gap levels at depth `static_depth` (a.u.) with their eigenvectors, ascending.
pub fn bound_states(
    static_depth: f64,
    basis: &FreeModeBasis,
    params: &WellParameters,
) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let c2 = basis.speed_of_light().powi(2);
    let h = assemble_hamiltonian(static_depth, basis, params)?;
    let spec = diagonalize(&h, true)?;
    let vecs = spec.eigenvectors.expect("vectors requested");
    let edge = c2 * (1.0 - GAP_EPSILON);
    Ok(spec
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &e)| e.abs() < edge)
        .map(|(k, &e)| (e, vecs.column(k).iter().copied().collect::<Vec<_>>()))
        .filter(|(_, v)| localization(v, basis, params) >= LOCALIZATION_FRACTION)
        .collect())
}

/// Localized levels strictly inside the mass gap at depth `static_depth` (a.u.), ascending, a.u.
pub fn bound_spectrum(
    static_depth: f64,
    basis: &FreeModeBasis,
    params: &WellParameters,
) -> Result<Vec<f64>> {
    Ok(bound_states(static_depth, basis, params)?
        .into_iter()
        .map(|(e, _)| e)
        .collect())
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm()
}

/// Gap levels for each depth (units of `c²` in and out).
///
/// Depths are diagonalized in parallel. Levels are then labelled in input
/// order: a level inherits the index of the previous depth's level it
/// overlaps most, if that overlap exceeds [`TRACKING_OVERLAP`] and the index
/// is still free; otherwise it gets a fresh index.
pub fn spectrum_curve(
    depths_over_c2: &[f64],
    basis: &FreeModeBasis,
    params: &WellParameters,
) -> Result<SpectrumCurve> {
    let c2 = basis.speed_of_light().powi(2);
    let states: Vec<Vec<(f64, Vec<Complex64>)>> = depths_over_c2
        .par_iter()
        .map(|&d| bound_states(d * c2, basis, params))
        .collect::<Result<_>>()?;

    let mut curve = Vec::with_capacity(states.len());
    let mut previous: Vec<(usize, Vec<Complex64>)> = Vec::new();
    let mut next_index = 0;
    for (&d, levels) in depths_over_c2.iter().zip(states) {
        let mut taken = vec![false; previous.len()];
        let mut labels = Vec::with_capacity(levels.len());
        for (_, v) in &levels {
            let best = previous
                .iter()
                .enumerate()
                .map(|(i, (_, w))| (i, overlap(w, v)))
                .filter(|&(i, o)| !taken[i] && o > TRACKING_OVERLAP)
                .max_by(|x, y| x.1.total_cmp(&y.1));
            let label = match best {
                Some((i, _)) => {
                    taken[i] = true;
                    previous[i].0
                }
                None => {
                    next_index += 1;
                    next_index - 1
                }
            };
            labels.push(label);
        }
        curve.push(SpectrumPoint {
            depth_over_c2: d,
            levels_over_c2: levels.iter().map(|(e, _)| e / c2).collect(),
            level_index: labels.clone(),
        });
        previous = labels
            .into_iter()
            .zip(levels.into_iter().map(|(_, v)| v))
            .collect();
    }
    Ok(curve)
}

/// Writes one row per level: `Vs_over_c2,level_index,energy_over_c2`.
pub fn write_spectrum_csv(path: &Path, curve: &[SpectrumPoint]) -> Result<()> {
    let mut out = String::from(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for point in curve {
        for (e, k) in point.levels_over_c2.iter().zip(&point.level_index) {
            out.push_str(&format!(
                "{},{},{}\n",
                format_sig9(point.depth_over_c2),
                k,
                format_sig9(*e)
            ));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Signed distance of the first diving level past its far continuum edge,
/// in units of `c²`; negative before the crossing, non-negative after.
///
/// With `+V` inside the well the eigenvalues rise monotonically with depth,
/// and the `n`-th one (0-based `n-1`) is the highest level emerging from the
/// negative continuum, so it is the first to reach `+c²`. The negated
/// convention mirrors this at `-c²`.
pub fn crossing_indicator(
    static_depth: f64,
    basis: &FreeModeBasis,
    params: &WellParameters,
) -> Result<f64> {
    let n = basis.grid().points();
    let c2 = basis.speed_of_light().powi(2);
    let h = assemble_hamiltonian(static_depth, basis, params)?;
    let spec = diagonalize(&h, false)?;
    let edge = 1.0 - GAP_EPSILON;
    Ok(match params.sign {
        SignConvention::AsPrinted => spec.eigenvalues[n - 1] / c2 - edge,
        SignConvention::Negated => -edge - spec.eigenvalues[n] / c2,
    })
}

/// Depth (units of `c²`) at which the first bound level dives into the
/// continuum, by bisection inside `[lo, hi]` to within `tol`.
pub fn critical_depth(
    basis: &FreeModeBasis,
    params: &WellParameters,
    bracket_over_c2: (f64, f64),
    tol_over_c2: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket_over_c2;
    if !(lo >= 0.0 && hi > lo && tol_over_c2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "invalid bracket [{lo}, {hi}] or tolerance {tol_over_c2}"
        )));
    }
    let c2 = basis.speed_of_light().powi(2);
    let f = |d: f64| crossing_indicator(d * c2, basis, params);
    if !(f(lo)? < 0.0 && f(hi)? >= 0.0) {
        return Err(Error::NoCrossing { lo, hi });
    }
    while hi - lo > tol_over_c2 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
