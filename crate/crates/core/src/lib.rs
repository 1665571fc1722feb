//! Exact symmetric-power and Rankin-Selberg L-function algebra over GL(2)
//! Satake data, with a numerical laboratory for real zeros near `s = 1`.

pub mod analytic;
pub mod archimedean;
pub mod arith;
pub mod char_ring;
pub mod error;
pub mod forms;
pub mod local_factors;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
