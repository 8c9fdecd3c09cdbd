//! Executable witness-finding algorithms for quantitative Caratheodory,
//! Helly, and Tverberg theorems, with machine-checkable certificates.
//!
//! Every pipeline produces a [`core::Certificate`] that the independent
//! [`oracle`] module re-verifies with disjoint code paths. All certified
//! computation is exact rational arithmetic.

pub mod error;
pub mod scalar;

pub mod core;
pub mod convexops;
pub mod caratheodory;
pub mod approx;
pub mod steinitz;
pub mod helly;
pub mod tverberg;
pub mod rng;
pub mod oracle;
pub mod generate;

pub use error::{Error, Result};
pub use scalar::Scalar;
