//! Exact tropical arithmetic, valuated matroids, finite Puiseux polynomials
//! and quiver Dressians.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no
//! floating point anywhere.

pub mod error;
pub mod json;
pub mod matroid;
pub mod morphism;
pub mod puiseux;
pub mod quiver;
pub mod random;
pub mod subset;
pub mod trop;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
