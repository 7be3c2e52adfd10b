use thiserror::Error;

/// Errors raised by state construction, transforms, tomograms and checks.
///
/// The `Display` prefix of every variant is a stable kebab-case tag that the
/// command-line front end echoes in its diagnostics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum TomoError {
    #[error("invalid-state: {0}")]
    InvalidState(String),
    #[error("invalid-input: {0}")]
    InvalidInput(String),
    #[error("nonphysical-state: {0}")]
    NonphysicalState(String),
    #[error("nonphysical-matrix: {0}")]
    NonphysicalMatrix(String),
    #[error("invalid-parameter: {0}")]
    InvalidParameter(String),
    #[error("wrong-arity: expected {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("degenerate-frame: {0}")]
    DegenerateFrame(String),
    #[error("unsupported-source: {0}")]
    UnsupportedSource(String),
    #[error("normalization: {0}")]
    Normalization(String),
    #[error("transform-accuracy: {0}")]
    TransformAccuracy(String),
    #[error("{source} [{context}]")]
    InCheck {
        context: String,
        #[source]
        source: Box<TomoError>,
    },
}

impl TomoError {
    /// Attaches the parameters of the check that failed.
    pub fn in_check(self, context: impl Into<String>) -> Self {
        TomoError::InCheck { context: context.into(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, TomoError>;
