use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds the configured ceiling ({actual} > {limit})")]
    CeilingExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("not a subgroup: generator {witness} is not a member")]
    NotSubgroup { witness: String },

    #[error("not a normal subgroup: conjugate {witness} leaves the subgroup")]
    NotNormal { witness: String },

    #[error("group is not transitive on its points")]
    NotTransitive,

    #[error("group is not 2-transitive on its points")]
    NotTwoTransitive,

    #[error("invalid block system: {0}")]
    NotBlockSystem(String),

    #[error("not a 2-design: {0}")]
    NotADesign(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A mathematical statement the library checks failed to hold. This
    /// always indicates a bug; `witness` makes it independently checkable.
    #[error("assertion failed: {what} (witness: {witness})")]
    Assertion { what: String, witness: String },
}

impl Error {
    pub(crate) fn assertion(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Assertion {
            what: what.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::DegreeMismatch { .. } => 2,
            Error::CeilingExceeded { .. } => 3,
            Error::Assertion { .. } => 4,
            _ => 1,
        }
    }
}

/// Fails with [`Error::Assertion`] unless `cond` holds.
pub(crate) fn ensure(cond: bool, what: &str, witness: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::assertion(what, witness()))
    }
}

pub(crate) fn ceiling(what: &'static str, limit: u128, actual: u128) -> Result<()> {
    if actual > limit {
        Err(Error::CeilingExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
