//! Gauge normal forms for matrix-valued power series `A(z) = A_0 + A_1 z + ...` whose
//! constant term is regular nilpotent, and the correspondence between the normal-form
//! entries and the Puiseux coefficients of the eigenvalues.
//!
//! The pipeline is:
//!
//! 1. [`normal_form::normalize`] conjugates `A` by a polynomial gauge
//!    `g = (I + G_k z^k) ... (I + G_1 z) g_0` so that `B = g A g^-1` has `B_0 = J_n(0)` and
//!    `B_1..B_k` supported on the last row. Runs exactly over [`Rational`].
//! 2. [`puiseux::inverse_map`] turns the last-row entries `b_1..b_{nk}` into the
//!    coefficients `a_1..a_{nk}` of an eigenvalue branch `sum a_m z^(m/n)`;
//!    [`puiseux::forward_map`] goes the other way.
//! 3. [`puiseux::puiseux_from_charpoly`] solves for the same coefficients straight from the
//!    characteristic polynomial, and [`verify`] compares branches with numerically computed
//!    eigenvalues and checks the roots-of-unity identity by brute force.
//!
//! ```
//! use gaugeform::{inverse_map, normalize, Matrix, MatrixSeries, Rational};
//!
//! let q = |x: i64| Rational::from(x);
//! // A(z) = [[0, 1], [z, z]]
//! let a = MatrixSeries::new(vec![
//!     Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]])?,
//!     Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(1)]])?,
//!     Matrix::zeros(2, ()),
//! ])?;
//! let out = normalize(&a, 2)?;
//! assert_eq!(out.normal_form.entries(), &[q(1), q(1), q(0), q(0)]);
//!
//! let b = out.normal_form.to_complex(256);
//! let branch = inverse_map(b.entries(), 2, 0)?;
//! let a2 = branch.coefficients()[1].re().to_f64();
//! assert!((a2 - 0.5).abs() < 1e-30);
//! # Ok::<(), gaugeform::Error>(())
//! ```

pub mod charpoly;
pub mod error;
pub mod normal_form;
pub mod numeric;
pub mod puiseux;
pub mod random;
pub mod series;
pub mod verify;

pub use charpoly::{charpoly_from_normal_form, charpoly_series, CharPoly};
pub use error::{Error, Result};
pub use normal_form::{check_regular_nilpotent, jordanize, normalize, solve_ad, NormalForm, Normalization};
pub use numeric::{Complex, Matrix, Scalar, DEFAULT_PRECISION};
pub use puiseux::{forward_map, inverse_map, puiseux_from_charpoly, PuiseuxExpansion};
pub use rug::{Float, Rational};
pub use series::{apply_gauge, GaugeTransform, MatrixSeries};
