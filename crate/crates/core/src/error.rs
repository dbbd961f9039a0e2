use thiserror::Error;

/// Errors shared by every module of the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A requested enumeration or brute-force sum is larger than the configured cap.
    #[error("{what}: requested {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// Malformed structural input (paths, trees, walks, parameter packs).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A non-marked step could not be resolved to a unique open edge.
    #[error(
        "gluing conflict at instant {instant}: vertex {vertex} has {open_edges} open edges \
         (expected exactly one)"
    )]
    GluingConflict {
        instant: usize,
        vertex: u32,
        open_edges: usize,
    },

    /// A witness choice produced a walk outside the family (loops, stray
    /// multiplicities, merged core edges).
    #[error("witness choice rejected: {0}")]
    Rejected(String),

    /// An exact rational was requested but the entry law only has a real value here.
    #[error("moment of order 2k = {order} is not rational for this profile")]
    NotRational { order: u32 },

    /// Monte Carlo produced a non-finite trace.
    #[error("non-finite trace in trial {trial}")]
    Overflow { trial: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn ensure_cap(what: &'static str, requested: u64, cap: u64) -> Result<()> {
    if requested > cap {
        Err(Error::CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
