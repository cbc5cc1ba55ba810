//! Exact algebra, explicit representations and phase-space transforms of the
//! canonical relativistic group CR(1,3) = U(1,3) ⋉ H(1,3).

// Index loops mirror the tensor notation of the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod casimir;
pub mod error;
pub mod io;
pub mod rep;
pub mod report;
pub mod sparse;
pub mod transforms;

pub use error::{Error, Result};
