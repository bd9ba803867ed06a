use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("point {point} out of range for ground set of size {ground_size}")]
    PointOutOfRange { point: usize, ground_size: usize },

    #[error("ground size mismatch: expected {expected}, got {got}")]
    GroundMismatch { expected: usize, got: usize },

    #[error("analysis requires a non-empty concept class")]
    EmptyClass,

    #[error("labeling is not a member of the class")]
    NotInClass,

    #[error("inconsistent condition: no concept extends the partial labeling")]
    InconsistentCondition,

    #[error("labeling is not a {k}-hype of the class")]
    NotAHype { k: usize },

    #[error("honest definitions need two anchors: |A| = {0}")]
    NeedsTwoAnchors(usize),

    #[error("alpha must lie in [1/2, 1), got {0}")]
    AlphaOutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds cap: {got} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn cap(what: &'static str, limit: usize, got: usize) -> Result<()> {
        if got > limit {
            Err(Error::CapExceeded { what, limit, got })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
