use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}", no_coverage_message(*.sentence))]
    NoCoverage { sentence: Option<usize> },

    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    #[error("transport solver exceeded {0} pivots")]
    SolverStalled(usize),

    #[error("sentences {a} and {b}: {source}")]
    Pair {
        a: usize,
        b: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn no_coverage_message(sentence: Option<usize>) -> String {
    match sentence {
        Some(id) => format!("sentence {id} has no in-vocabulary tokens"),
        None => "sentence has no in-vocabulary tokens".to_string(),
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Attach the pair of sentence ids that produced this error.
    pub(crate) fn for_pair(self, a: usize, b: usize) -> Self {
        Error::Pair {
            a,
            b,
            source: Box::new(self),
        }
    }
}
