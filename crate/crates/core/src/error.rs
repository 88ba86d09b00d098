use thiserror::Error;

/// Failures when growing a context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    /// The domain already carries a definition.
    #[error("axiom violation: domain {domain} is already defined")]
    AxiomViolation { domain: String },
    /// The proposed domain is not invariant data in the context.
    #[error("invalid domain: {domain} is not invariant")]
    InvalidDomain { domain: String },
}

/// Strict literal reader failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed literal at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Failures while replaying a serialized context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Literal { line: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Context { line: usize, source: ContextError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("positive and negative samples must both be non-empty")]
    EmptySamples,
}
