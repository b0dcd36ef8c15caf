//! Exact-arithmetic toolkit for extension-complexity bounds of
//! hypersimplices and small polytopes: slack matrices, rectangle coverings
//! (with SAT-backed exact search), realization-space machinery and explicit
//! extension constructions, all certified over exact rationals optionally
//! extended by a fixed quadratic irrational.

pub mod covering;
pub mod error;
pub mod extensions;
pub mod hypersimplex;
pub mod json;
pub mod num;
pub mod polytope;
pub mod realization;
pub mod sat;

pub use error::{Error, Result};
