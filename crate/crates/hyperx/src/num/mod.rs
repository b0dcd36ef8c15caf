//! Exact scalar and matrix arithmetic; no floating point on verified paths.

mod matrix;
mod scalar;

pub use matrix::ExactMatrix;
pub use scalar::ExactScalar;
