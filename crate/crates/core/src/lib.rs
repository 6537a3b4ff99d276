//! Exact verification toolkit for reductions of two-dimensional crystalline
//! representations: p-adic number kernel, binomial-sum combinatorics,
//! symmetric-power modules, Hecke operators on compact inductions, and the
//! matrix and step certificates that assemble a Hecke-image argument.

#![forbid(unsafe_code)]

pub mod error;
pub mod hecke;
pub mod combinatorics;
pub mod linalg;
pub mod number;
pub mod proof;
pub mod suite;
pub mod symmetric;

pub use error::{Error, Result};
