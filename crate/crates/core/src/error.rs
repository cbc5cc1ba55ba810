//! Error type shared by every module.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator {generator} does not belong to the {basis} basis")]
    BasisMismatch { generator: String, basis: String },

    #[error("no basis conversion from {from} to {to}")]
    UnsupportedConversion { from: String, to: String },

    #[error("contraction diverges in [{x}, {y}]: term {term} carries epsilon^{exponent}")]
    Divergent {
        x: String,
        y: String,
        term: String,
        exponent: i32,
    },

    #[error("contraction is not a quotient: [{x}, {y}] keeps {term} while {x} or {y} vanishes")]
    NotAnIdeal { x: String, y: String, term: String },

    #[error("invalid contraction scaling: {0}")]
    InvalidScaling(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),

    #[error("margin {margin} is too small for order {order}; need at least {needed} (raise the truncation)")]
    MarginTooSmall {
        order: usize,
        margin: usize,
        needed: usize,
    },

    #[error("representation is missing generator {0}")]
    MissingGenerator(String),

    #[error("matrix exponential did not converge after {0} squarings")]
    NonConvergence(u32),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("archive {path} has {key} = {found}, expected {expected}")]
    ManifestMismatch {
        path: PathBuf,
        key: String,
        found: String,
        expected: String,
    },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
