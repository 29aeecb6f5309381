use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("set has zero mass")]
    ZeroMass,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },
    #[error("incomplete at stage {stage}: {reason}")]
    Incomplete {
        stage: String,
        reason: String,
        partial: Vec<Vec<usize>>,
    },
    #[error("no graph on {0} vertices satisfies the property")]
    EmptyProperty(usize),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error("retries exhausted after {attempts} attempts: {diagnostics}")]
    RetriesExhausted { attempts: usize, diagnostics: String },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }

    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
