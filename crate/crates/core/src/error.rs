use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV parse error at row {row}: {message}")]
    CsvParse { row: u64, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("CoNLL-U parse error at line {line}: {message}")]
    Conllu { line: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("data file {name}: {message}")]
    Data { name: String, message: String },

    #[error("stage {stage} failed{}: {message}", doc_id.as_ref().map(|d| format!(" on document {d}")).unwrap_or_default())]
    Stage {
        stage: &'static str,
        doc_id: Option<String>,
        message: String,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
