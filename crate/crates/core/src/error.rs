use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("graph has no edges: {0}")]
    EmptyGraph(String),

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot draw {requested} test links: only {available} non-bridge edges available (short by {})", requested - available)]
    InsufficientRemovableEdges { requested: usize, available: usize },

    #[error("cannot sample {requested} negative pairs: only {available} candidate non-edges")]
    InsufficientNonEdges { requested: usize, available: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("training diverged at epoch {epoch} (loss is not finite)")]
    Divergence { epoch: usize },

    #[error("model has not been trained")]
    Untrained,

    #[error("dataset `{name}` not found at {path}; run scripts/fetch_datasets.py to download it")]
    MissingDataset { name: String, path: PathBuf },

    #[error("config error: {0}")]
    Config(String),

    #[error("persisted data is inconsistent: {0}")]
    Corrupt(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by input data rather than by the computation.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::EmptyGraph(_)
                | Error::UnknownLabel(_)
                | Error::MissingDataset { .. }
                | Error::Corrupt(_)
                | Error::Io { .. }
                | Error::Csv(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
