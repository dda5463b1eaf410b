//! The chapters of `book/`, one module each, so that `cargo test --doc`
//! compiles and runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/tropical-arithmetic.md")]
pub mod tropical_arithmetic {}
#[doc = include_str!("../../../book/src/valuated-matroids.md")]
pub mod valuated_matroids {}
#[doc = include_str!("../../../book/src/puiseux.md")]
pub mod puiseux {}
#[doc = include_str!("../../../book/src/morphisms.md")]
pub mod morphisms {}
#[doc = include_str!("../../../book/src/quiver-dressians.md")]
pub mod quiver_dressians {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
