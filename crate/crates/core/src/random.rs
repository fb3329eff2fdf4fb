//! Reproducible random instances for property checks and the `self-test` command.

use rand::Rng;
use rug::Rational;

use crate::numeric::{Complex, Matrix};
use crate::series::MatrixSeries;

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::from((p, q))
}

pub fn random_rational_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, |_, _| random_rational(rng, bound))
}

/// `L U` with unit-diagonal triangular factors, hence determinant 1.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Rational> {
    let lower = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Rational::from(1),
        std::cmp::Ordering::Greater => random_rational(rng, bound),
        std::cmp::Ordering::Less => Rational::new(),
    });
    let upper = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Rational::from(1),
        std::cmp::Ordering::Less => random_rational(rng, bound),
        std::cmp::Ordering::Greater => Rational::new(),
    });
    // shuffle rows so the cyclic-vector search does not always hit the same index
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let lu = lower.mul(&upper).expect("same dimension");
    Matrix::from_fn(n, |i, j| lu[(perm[i], j)].clone())
}

/// `P J_n(0) P^-1` for a random invertible rational `P`.
pub fn random_jordan_conjugate<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Rational> {
    let p = random_invertible(rng, n, bound);
    let j = Matrix::jordan_block(n, ());
    p.mul(&j).and_then(|pj| pj.mul(&p.inverse()?)).expect("invertible by construction")
}

/// `a0 + A_1 z + ... + A_order z^order` with random rational `A_m`.
pub fn random_series_with_constant<R: Rng>(
    rng: &mut R,
    a0: Matrix<Rational>,
    order: usize,
    bound: i64,
) -> MatrixSeries<Rational> {
    let n = a0.dim();
    let mut coeffs = vec![a0];
    coeffs.extend((0..order).map(|_| random_rational_matrix(rng, n, bound)));
    MatrixSeries::new(coeffs).expect("uniform dimension")
}

/// A series `P (J + C_1 z + ... + C_order z^order) P^-1` with small integer `C_m`
/// and a small random `P`.
///
/// Keeps the characteristic polynomial well scaled, so that sampling its roots at
/// `|z| ~ 1e-3` stays inside the convergence disc of the Puiseux branches.
pub fn random_moderate_series<R: Rng>(rng: &mut R, n: usize, order: usize) -> MatrixSeries<Rational> {
    let p = random_invertible(rng, n, 2);
    let p_inv = p.inverse().expect("determinant one");
    let mut coeffs = vec![Matrix::jordan_block(n, ())];
    coeffs.extend((0..order).map(|_| Matrix::from_fn(n, |_, _| Rational::from(rng.gen_range(-3i64..=3)))));
    let conj = coeffs.into_iter().map(|c| p.mul(&c).and_then(|pc| pc.mul(&p_inv)).expect("same dimension")).collect();
    MatrixSeries::new(conj).expect("uniform dimension")
}

pub fn random_complex<R: Rng>(rng: &mut R, prec: u32, radius: f64) -> Complex {
    Complex::from_f64(prec, rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius))
}

/// Puiseux coefficients `a_1..a_{nk}` with `0.5 <= |a_1| <= 2`.
pub fn random_puiseux_coefficients<R: Rng>(rng: &mut R, n: usize, k: usize, prec: u32) -> Vec<Complex> {
    let r = rng.gen_range(0.5..=2.0);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut a = vec![Complex::from_f64(prec, r * theta.cos(), r * theta.sin())];
    a.extend((1..n * k).map(|_| random_complex(rng, prec, 1.0)));
    a
}

/// Random normal-form entries with bounded rationals.
pub fn random_normal_form_entries<R: Rng>(rng: &mut R, n: usize, k: usize, bound: i64) -> Vec<Rational> {
    (0..n * k).map(|_| random_rational(rng, bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::check_regular_nilpotent;
    use crate::numeric::Scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_reproducible_and_well_formed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let x = random_jordan_conjugate(&mut a, 4, 100);
        assert_eq!(x, random_jordan_conjugate(&mut b, 4, 100));
        assert!(check_regular_nilpotent(&x));
        let p = random_invertible(&mut a, 5, 100);
        assert!(p.inverse().is_ok());
        let s = random_moderate_series(&mut a, 3, 2);
        assert!(check_regular_nilpotent(s.coeff(0)));
        let q = random_rational(&mut a, 100);
        assert!(q.denom().cmp0().is_gt());
        assert!(!Scalar::is_zero(&random_puiseux_coefficients(&mut a, 3, 2, 128)[0]));
    }
}
