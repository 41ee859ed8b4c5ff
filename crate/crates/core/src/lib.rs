//! Exact computations with differential conformal superalgebras over
//! cyclotomic Laurent rings.

pub mod builtins;
pub mod centroid;
pub mod coefficients;
pub mod dsl;
pub mod cohomology;
pub mod conformal;
pub mod error;
pub mod linalg;
pub mod loops;
pub mod morphisms;

pub use error::{Error, Result};
