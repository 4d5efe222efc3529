//! Error types shared across the crate.
//!
//! Every fatal condition in the pipeline maps to one variant and one CLI
//! exit code, so callers (and scripts driving the binary) can dispatch on
//! the failure class without parsing prose.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid cell id {id} (grid has {total} cells)")]
    InvalidCell { id: usize, total: usize },

    #[error("ingestion out of bounds: {0}")]
    IngestionOutOfBounds(String),

    #[error("malformed envelope: {0}")]
    MalformedEnvelope(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("cell {0} is not in the neighborhood")]
    NotInNeighborhood(usize),

    #[error("malformed solution: {0}")]
    MalformedSolution(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("neighborhood is not isolating")]
    NotIsolating,

    #[error("{0} is not an attractor at this resolution: {1}")]
    NotAttractor(String, String),

    #[error("trapping region verification failed: {0}")]
    NotTrapping(String),

    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    #[error("restriction invalid: {0}")]
    RestrictInvalid(String),

    #[error("Morse set {index} admits no isolating neighborhood at this resolution")]
    MorseSetNotIsolated { index: usize },

    #[error("coarsening invalid: {0}")]
    CoarseningInvalid(String),

    #[error("map values are not acyclic: violations at cells {0:?}")]
    ValuesNotAcyclic(Vec<usize>),

    #[error("chain carrier failure: {0}")]
    CarrierError(String),

    #[error("excision failure: inclusion not invertible in degree {degree}")]
    ExcisionFailure { degree: usize },

    #[error("polynomial not divisible by (1+t): {0}")]
    NotDivisible(String),

    #[error("negative coefficient in Q: {0}")]
    NegativeQ(String),

    #[error("Morse equation inconsistent: {0}")]
    EquationInconsistent(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable process exit code per error class (0 is success).
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            InvalidGrid(_) | InvalidCell { .. } | IngestionOutOfBounds(_)
            | MalformedEnvelope(_) | MalformedInput(_) | Json(_) => 2,
            NotIsolating | NotInNeighborhood(_) | MalformedSolution(_) | Precondition(_) => 3,
            ResolutionTooCoarse(_) | RestrictInvalid(_) | MorseSetNotIsolated { .. }
            | CoarseningInvalid(_) | NotTrapping(_) => 4,
            NotAttractor(..) => 5,
            ValuesNotAcyclic(_) => 6,
            CarrierError(_) => 7,
            ExcisionFailure { .. } => 8,
            NotDivisible(_) | NegativeQ(_) | EquationInconsistent(_) => 9,
            Io(_) => 10,
        }
    }

    /// Machine-readable diagnostic emitted by the CLI on stderr.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": self.class_name(),
            "detail": self.to_string(),
            "exit_code": self.exit_code(),
        })
    }

    fn class_name(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidGrid(_) => "InvalidGrid",
            InvalidCell { .. } => "InvalidCell",
            IngestionOutOfBounds(_) => "IngestionOutOfBounds",
            MalformedEnvelope(_) => "MalformedEnvelope",
            MalformedInput(_) => "MalformedInput",
            NotInNeighborhood(_) => "NotInNeighborhood",
            MalformedSolution(_) => "MalformedSolution",
            Precondition(_) => "Precondition",
            NotIsolating => "NotIsolating",
            NotAttractor(..) => "NotAttractor",
            NotTrapping(_) => "NotTrapping",
            ResolutionTooCoarse(_) => "ResolutionTooCoarse",
            RestrictInvalid(_) => "RestrictInvalid",
            MorseSetNotIsolated { .. } => "MorseSetNotIsolated",
            CoarseningInvalid(_) => "CoarseningInvalid",
            ValuesNotAcyclic(_) => "ValuesNotAcyclic",
            CarrierError(_) => "CarrierError",
            ExcisionFailure { .. } => "ExcisionFailure",
            NotDivisible(_) => "NotDivisible",
            NegativeQ(_) => "NegativeQ",
            EquationInconsistent(_) => "EquationInconsistent",
            Io(_) => "Io",
            Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
