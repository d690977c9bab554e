use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid mismatch: field has {field} points, basis has {basis}")]
    GridMismatch { field: usize, basis: usize },
    #[error("norm drifted by {drift:e} while evolving mode {mode}")]
    Instability { mode: usize, drift: f64 },
    #[error("basis retains no modes")]
    EmptyBasis,
    #[error("bracket [{lo}, {hi}] (units of c^2) does not contain a level crossing")]
    NoCrossing { lo: f64, hi: f64 },
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("sweep point (Vs={vs_over_c2}, omega={omega_over_c2}) failed: {source}")]
    SweepPoint {
        vs_over_c2: f64,
        omega_over_c2: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("no records to search")]
    EmptyRecords,
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
