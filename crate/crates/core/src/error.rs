//! Crate-wide error type and the CLI exit-code mapping.

use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum ChordalError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Body failed validation (non-convex, unbounded, empty interior, ...).
    /// The reason carries the witness when one exists.
    #[error("invalid body: {reason}")]
    InvalidBody { reason: String },

    /// The query point is outside the body or too close to its boundary for
    /// the ray construction to be well conditioned.
    #[error("point is not strictly interior: margin {margin:.6e} < required {required:.6e}")]
    PointNotInterior { margin: f64, required: f64 },

    /// A ray from an interior point never left the body (malformed polytope).
    #[error("ray does not exit the body: {0}")]
    UnboundedRay(String),

    #[error("sampled functions live on different grids")]
    GridMismatch,

    #[error("map is not odd on the grid: antipodal-sum defect {defect:.6e} exceeds {limit:.6e}")]
    NotOdd { defect: f64, limit: f64 },

    /// Sign structure could not be resolved at the current sampling density.
    #[error("grid too coarse: {0}")]
    ResolutionTooCoarse(String),

    #[error("no feasible start point after {attempts} rejection-sampling attempts")]
    NoFeasibleStart { attempts: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed csv: {0}")]
    MalformedCsv(String),
}

impl ChordalError {
    /// Exit code used by the `chordal` binary: 2 for body validation
    /// failures, 3 for point preconditions, 4 for sampling-resolution
    /// failures, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ChordalError::InvalidBody { .. } => 2,
            ChordalError::PointNotInterior { .. } => 3,
            ChordalError::ResolutionTooCoarse(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, ChordalError>;
