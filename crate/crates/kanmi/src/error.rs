//! Error type shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,

    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("attribute index {index} out of range (dataset has {num_attributes} attributes)")]
    AttributeOutOfRange {
        index: usize,
        num_attributes: usize,
    },

    #[error("records have different arities ({left} vs {right})")]
    ArityMismatch { left: usize, right: usize },

    #[error("labelings have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("labeling is empty")]
    EmptyLabeling,

    #[error("label ids must cover 0..k without gaps (id {missing} never occurs)")]
    NonContiguousLabels { missing: u32 },

    #[error("record set is empty")]
    EmptyRecordSet,

    #[error("histogram set has zero total")]
    ZeroTotal,

    #[error("no base labelings to average over")]
    EmptyBaseSet,

    #[error("need at least as many records as clusters (n = {n}, k = {k})")]
    TooFewRecords { n: usize, k: usize },

    #[error("k must be at least 2 (got {k})")]
    InvalidK { k: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("moving record {record} would empty cluster {cluster}")]
    WouldEmptyCluster { record: usize, cluster: usize },

    #[error("cluster id {id} out of range (k = {k})")]
    ClusterOutOfRange { id: u32, k: usize },

    #[error("record index {index} out of range (dataset has {len} records)")]
    RecordOutOfRange { index: usize, len: usize },

    #[error("histogram totals are inconsistent: {0}")]
    InconsistentTotals(String),

    #[error("invalid generator spec: {0}")]
    InvalidGeneratorSpec(String),

    #[error("dataset has no ground-truth classes")]
    MissingGroundTruth,

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("{}: {source}", path.display())]
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
    /// Wraps an I/O error with the path it occurred on.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
