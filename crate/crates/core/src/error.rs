use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown test id `{0}`")]
    UnknownTest(String),

    #[error("unknown program id `{0}`")]
    UnknownProgram(String),

    #[error("unknown mutant id `{0}`")]
    UnknownMutant(String),

    /// The input does not match its schema. `path` is a JSON-pointer-style
    /// location of the offending field.
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("no program with role `{0}`")]
    MissingRole(&'static str),

    #[error("program `{program}` must have role `{expected}`")]
    WrongRole {
        program: String,
        expected: &'static str,
    },

    #[error(
        "dimension {requested} exceeds the explicit lattice limit of {limit}; use implicit deviance queries instead"
    )]
    Capacity { requested: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("at least one mutant is required")]
    NoMutants,

    #[error("unknown similarity metric `{0}`")]
    UnknownMetric(String),

    #[error("unknown differentiator policy `{0}`")]
    UnknownPolicy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// JSON-pointer rendering of a deserializer path; the root is `/`.
pub(crate) fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub(crate) fn from_path_error(e: serde_path_to_error::Error<serde_json::Error>) -> Error {
    Error::Schema {
        path: json_pointer(e.path()),
        message: e.inner().to_string(),
    }
}
