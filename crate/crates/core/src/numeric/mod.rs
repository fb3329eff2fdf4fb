//! Scalar backends and the small dense kernels everything else is built on.

pub mod complex;
pub mod matrix;
pub mod roots;
pub mod scalar;

pub use complex::{max_relative_error, tolerance, Complex, DEFAULT_PRECISION};
pub use matrix::Matrix;
pub use roots::{poly_from_roots, poly_roots, principal_nth_root};
pub use scalar::Scalar;
