//! Subcommand bodies. Each writes its files and returns a short report.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use pairwell_core::observables::default_snapshot_times;
use pairwell_core::sweep::format_sig9;
use pairwell_core::{
    critical_depth, find_optimum, run_simulation, run_sweep, spectrum_curve, write_spectrum_csv,
    Axis, SpectrumPoint, SweepPlan, SweepRecord,
};

use crate::{CliError, CliResult, RunConfig};

pub const TIMESERIES_HEADER: &str = "t,N";
pub const DENSITY_HEADER: &str = "z,rho_e";

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateReport {
    pub final_number: f64,
    pub timeseries: PathBuf,
    pub density: PathBuf,
    pub summary: PathBuf,
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Numerics(format!("{}: {e}", dir.display())))
}

/// Evolves the sea for one configuration and writes
/// `timeseries.csv`, `density.csv` and `summary.txt` into the output directory.
///
/// The density file repeats the first sample at `z = L/2` so that a
/// trapezoid rule over its rows reproduces the periodic integral.
pub fn simulate(cfg: &RunConfig) -> CliResult<SimulateReport> {
    let started = Instant::now();
    let numerics = cfg.numerics();
    let basis = numerics.basis()?;
    let stepper = numerics.stepper()?;
    let times = if cfg.snapshot_times.is_empty() {
        default_snapshot_times(&stepper)
    } else {
        cfg.snapshot_times.clone()
    };
    let out = run_simulation(&cfg.well(), cfg.mode, &basis, &stepper, &times)?;
    let obs = &out.observables;

    ensure_dir(&cfg.output_dir)?;
    let timeseries = cfg.output_dir.join("timeseries.csv");
    let mut text = format!("{TIMESERIES_HEADER}\n");
    for (t, n) in &obs.series {
        text.push_str(&format!("{},{}\n", format_sig9(*t), format_sig9(*n)));
    }
    fs::write(&timeseries, text)?;

    let density = cfg.output_dir.join("density.csv");
    let mut text = format!("{DENSITY_HEADER}\n");
    for (z, r) in obs.positions.iter().zip(&obs.density) {
        text.push_str(&format!("{},{}\n", format_sig9(*z), format_sig9(*r)));
    }
    text.push_str(&format!(
        "{},{}\n",
        format_sig9(cfg.length / 2.0),
        format_sig9(obs.density[0])
    ));
    fs::write(&density, text)?;

    let summary = cfg.output_dir.join("summary.txt");
    let worst_norm = out
        .evolved_norms
        .iter()
        .chain(&out.completeness)
        .map(|x| (x - 1.0).abs())
        .fold(0.0, f64::max);
    let text = format!(
        "N_final={}\nmode={}\nT={}\nmodes={}\nmax_unitarity_error={:e}\nworkers={}\nwall_time_s={:.3}\n",
        obs.final_number,
        obs.mode.label(),
        stepper.total_time(),
        basis.len(),
        worst_norm,
        rayon::current_num_threads(),
        started.elapsed().as_secs_f64()
    );
    fs::write(&summary, text)?;
    Ok(SimulateReport {
        final_number: obs.final_number,
        timeseries,
        density,
        summary,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub csv: PathBuf,
    pub records: Vec<SweepRecord>,
    pub optimum: SweepRecord,
}

/// Runs a one- or two-axis scan and writes the CSV (plus journal and
/// metadata sidecar) to `csv`, or `sweep.csv` in the output directory.
pub fn sweep(
    cfg: &RunConfig,
    axes: &[String],
    csv: Option<&Path>,
    use_cache: bool,
) -> CliResult<SweepReport> {
    let axes: Vec<Axis> = axes
        .iter()
        .map(|a| a.parse().map_err(CliError::from))
        .collect::<CliResult<_>>()?;
    let csv = csv.map_or_else(|| cfg.output_dir.join("sweep.csv"), Path::to_path_buf);
    let mut plan = SweepPlan::new(axes, cfg.well(), cfg.numerics());
    plan.output = Some(csv.clone());
    plan.use_cache = use_cache;
    let records = run_sweep(&plan)?;
    let optimum = find_optimum(&records)?;
    Ok(SweepReport {
        csv,
        records,
        optimum,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub csv: PathBuf,
    pub curve: Vec<SpectrumPoint>,
    pub critical_depth: Option<f64>,
}

/// Default bisection bracket for the critical depth, units of `c²`.
pub const DEFAULT_BRACKET: (f64, f64) = (1.5, 2.5);

/// Gap levels over a depth axis (`Vs=start:stop:step` or `start:stop:step`)
/// written to `spectrum.csv`; optionally the critical depth.
pub fn spectrum(
    cfg: &RunConfig,
    depths: &str,
    critical: Option<((f64, f64), f64)>,
) -> CliResult<SpectrumReport> {
    let spec = if depths.contains('=') {
        depths.to_string()
    } else {
        format!("Vs={depths}")
    };
    let axis: Axis = spec.parse()?;
    if axis.param != pairwell_core::AxisParam::StaticDepth {
        return Err(CliError::Config("spectrum axis must scan Vs".into()));
    }
    let numerics = cfg.numerics();
    let basis = numerics.basis()?;
    let well = cfg.well();
    let curve = spectrum_curve(&axis.values(), &basis, &well)?;
    ensure_dir(&cfg.output_dir)?;
    let csv = cfg.output_dir.join("spectrum.csv");
    write_spectrum_csv(&csv, &curve)?;
    let critical_depth = match critical {
        Some((bracket, tol)) => Some(critical_depth(&basis, &well, bracket, tol)?),
        None => None,
    };
    Ok(SpectrumReport {
        csv,
        curve,
        critical_depth,
    })
}

/// Parses `lo:hi`.
pub fn parse_bracket(text: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Config(format!("bracket must be lo:hi, got '{text}'"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}
