use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed distribution JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Domain(#[from] giantmax_core::Error),
    #[error("{model} model needs a {expected} distribution")]
    ModelMismatch {
        model: &'static str,
        expected: &'static str,
    },
    #[error("invalid experiment: {0}")]
    InvalidSpec(String),
    #[error("refusing to allocate {half_edges:.3e} half-edges (limit {limit:.0e})")]
    ResourceGuard { half_edges: f64, limit: f64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("cannot write output: {0}")]
    Output(#[source] std::io::Error),
}

impl Error {
    /// 2 usage/parse, 3 domain, 4 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Json(_) | Error::EdgeList(_) => 2,
            Error::Domain(_) | Error::ModelMismatch { .. } | Error::InvalidSpec(_) => 3,
            Error::ResourceGuard { .. } => 4,
            Error::Csv(_) | Error::Output(_) => 2,
        }
    }
}
