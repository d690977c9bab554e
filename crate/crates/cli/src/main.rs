use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pairwell_cli::commands::{self, DEFAULT_BRACKET};
use pairwell_cli::config::WORKERS_ENV;
use pairwell_cli::{CliError, CliResult, RunConfig};

/// Pair creation in combined static and oscillating wells.
///
/// Energies (Vs, Vo, omega, cutoff) are in units of c²; lengths and times in
/// atomic units. Settings come from the defaults, then `--config`, then
/// the worker-count environment variable, then flags.
#[derive(Parser)]
#[command(name = "pairwell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the Dirac sea once; write timeseries.csv, density.csv, summary.txt.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Scan depth and/or frequency; write the sweep CSV and its metadata.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `Vs=start:stop:step`, `omega=start:stop:step` or a single value; at most two.
        #[arg(long = "axis", required = true)]
        axes: Vec<String>,
        /// CSV path; defaults to sweep.csv in the output directory.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Recompute single-well counts at every point.
        #[arg(long)]
        no_cache: bool,
    },
    /// Bound levels of the static well over a depth axis; write spectrum.csv.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Depth axis `start:stop:step` in units of c².
        #[arg(long, default_value = "0:3:0.05")]
        depths: String,
        /// Also locate the depth where the first level dives.
        #[arg(long)]
        critical: bool,
        /// Bisection bracket `lo:hi` for `--critical`.
        #[arg(long)]
        bracket: Option<String>,
        /// Bisection tolerance for `--critical`.
        #[arg(long, default_value_t = 0.005)]
        tol: f64,
    },
    /// Print the effective configuration.
    Config {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Flat key=value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Any config key, e.g. `--set W=0.003`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long = "vs")]
    vs: Option<String>,
    #[arg(long = "vo")]
    vo: Option<String>,
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    sign: Option<String>,
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    nz: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// Coarse numerics (Nz=128, dt=2e-7) for quick scans.
    #[arg(long)]
    fast: bool,
}

impl Common {
    fn resolve(&self) -> CliResult<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.apply(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        }
        if let Ok(n) = std::env::var(WORKERS_ENV) {
            cfg.set("workers", &n)
                .map_err(|e| CliError::Config(format!("{WORKERS_ENV}: {e}")))?;
        }
        for s in &self.set {
            cfg.assign(s)?;
        }
        let named = [
            ("Vs", &self.vs),
            ("Vo", &self.vo),
            ("omega", &self.omega),
            ("mode", &self.mode),
            ("sign", &self.sign),
            ("shape", &self.shape),
            ("Nz", &self.nz),
            ("dt", &self.dt),
            ("cutoff", &self.cutoff),
            ("output_dir", &self.out),
            ("workers", &self.workers),
        ];
        for (key, value) in named {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if self.fast {
            cfg.fast = true;
        }
        Ok(cfg)
    }
}

fn init_workers(cfg: &RunConfig) -> CliResult<()> {
    if let Some(n) = cfg.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Numerics(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { common } => {
            let cfg = common.resolve()?;
            init_workers(&cfg)?;
            let r = commands::simulate(&cfg)?;
            println!("N(T) = {}", r.final_number);
            println!("wrote {}", r.summary.display());
        }
        Command::Sweep {
            common,
            axes,
            csv,
            no_cache,
        } => {
            let cfg = common.resolve()?;
            init_workers(&cfg)?;
            let r = commands::sweep(&cfg, &axes, csv.as_deref(), !no_cache)?;
            let o = r.optimum;
            println!(
                "{} points; max dN = {} at Vs = {} c^2, omega = {} c^2",
                r.records.len(),
                o.gain,
                o.vs_over_c2,
                o.omega_over_c2
            );
            println!("wrote {}", r.csv.display());
        }
        Command::Spectrum {
            common,
            depths,
            critical,
            bracket,
            tol,
        } => {
            let cfg = common.resolve()?;
            init_workers(&cfg)?;
            let bracket = match bracket {
                Some(b) => commands::parse_bracket(&b)?,
                None => DEFAULT_BRACKET,
            };
            let r = commands::spectrum(&cfg, &depths, critical.then_some((bracket, tol)))?;
            if let Some(d) = r.critical_depth {
                println!("critical depth = {d} c^2");
            }
            println!("wrote {}", r.csv.display());
        }
        Command::Config { common } => {
            print!("{}", common.resolve()?.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pairwell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
