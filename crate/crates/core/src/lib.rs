//! Electron–positron pair creation from vacuum in combined static and
//! oscillating Sauter wells, computed by evolving the full Dirac sea.

pub mod error;
pub mod grid;
pub mod numerics;
pub mod observables;
pub mod potential;
pub mod propagator;
pub mod spectrum;
pub mod sweep;

pub use error::{Error, Result};
pub use grid::{
    FreeMode, FreeModeBasis, ModeCoefficients, NumericalGrid, SpinorField, SPEED_OF_LIGHT,
};
pub use numerics::Numerics;
pub use observables::{
    electron_density, final_pair_number, gain_number, run_simulation, BogoliubovMatrix, GainResult,
    PairObservables, SimulationOutput,
};
pub use potential::{PotentialMode, SignConvention, WellParameters, WellShape};
pub use propagator::{Propagator, StepperConfig};
pub use spectrum::{
    bound_spectrum, critical_depth, spectrum_curve, write_spectrum_csv, SpectrumPoint,
};
pub use sweep::{find_optimum, run_sweep, Axis, AxisParam, SweepPlan, SweepRecord};
