//! Fixed-seed inputs shared by the benchmarks.

use gaugeform::random::{random_jordan_conjugate, random_puiseux_coefficients, random_series_with_constant};
use gaugeform::{Complex, MatrixSeries, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact series of dimension `n` and order `k` with a conjugated Jordan constant term.
pub fn rational_series(n: usize, k: usize) -> MatrixSeries<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64((n * 31 + k) as u64);
    let a0 = random_jordan_conjugate(&mut rng, n, 100);
    random_series_with_constant(&mut rng, a0, k, 100)
}

/// Puiseux coefficients `a_1..a_{nk}` at `prec` bits.
pub fn puiseux_coefficients(n: usize, k: usize, prec: u32) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64((n * 37 + k) as u64);
    random_puiseux_coefficients(&mut rng, n, k, prec)
}
