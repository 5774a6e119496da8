use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid wreath recursion: {0}")]
    InvalidRecursion(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("preimage undefined for non-injective recursion")]
    PreimageUndefined,
    #[error("reduction requires injective recursion")]
    ReductionRequiresInjective,
    #[error("tower may not stabilize: injectivization needs a finite backend")]
    TowerMayNotStabilize,
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("target partition does not refine the diagram")]
    NotARefinement,
    #[error("context mismatch")]
    ContextMismatch,
    #[error("arity mismatch: range has {left} roots, domain has {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("label undefined at this interval")]
    LabelUndefined,
    #[error("depth too shallow: need at least {needed}")]
    DepthTooShallow { needed: usize },
    #[error("insufficient depth")]
    InsufficientDepth,
    #[error("precondition not certified: {0}")]
    NotCertified(String),
    #[error("enumeration cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
