//! `det(zeta I - A(z)) = zeta^n + c_1(z) zeta^(n-1) + ... + c_n(z)` over the ring of
//! series truncated at `z^(K+1)`.

use crate::error::{Error, Result};
use crate::normal_form::NormalForm;
use crate::numeric::{Complex, Matrix, Scalar};
use crate::series::MatrixSeries;

/// Characteristic polynomial with truncated series coefficients `c_1(z)..c_n(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    coeffs: Vec<Vec<T>>,
}

impl<T: Scalar> CharPoly<T> {
    /// `coeffs[t-1]` holds the coefficients of `c_t(z)`; all must have the same length.
    pub fn new(coeffs: Vec<Vec<T>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidArgument("characteristic polynomial needs degree >= 1".into()));
        };
        if first.is_empty() {
            return Err(Error::InvalidArgument("series coefficients cannot be empty".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.len() != first.len()) {
            return Err(Error::LengthMismatch { expected: first.len(), found: bad.len() });
        }
        Ok(CharPoly { coeffs })
    }

    /// Degree `n` in `zeta`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Truncation order `K` in `z`.
    pub fn order(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// Coefficients of `c_t(z)`, `1 <= t <= n`.
    pub fn c(&self, t: usize) -> &[T] {
        &self.coeffs[t - 1]
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall { order: self.order(), required: order });
        }
        Ok(CharPoly { coeffs: self.coeffs.iter().map(|c| c[..=order].to_vec()).collect() })
    }

    /// Monic, lower coefficients vanishing at `z = 0`, and `c_n` of `z`-adic valuation one.
    pub fn is_eisenstein(&self) -> bool {
        let n = self.degree();
        self.coeffs.iter().all(|c| c[0].is_zero()) && self.order() >= 1 && !self.c(n)[1].is_negligible(self.scale())
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().flatten().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// `[1, c_1(z0), ..., c_n(z0)]`, each `c_t` summed as a polynomial of degree `K`.
    pub fn evaluate(&self, z0: &Complex) -> Vec<Complex> {
        let prec = z0.prec();
        let mut out = vec![Complex::one(prec)];
        for c in &self.coeffs {
            let value = c.iter().rev().fold(Complex::zero(prec), |acc, x| &(&acc * z0) + &x.to_complex(prec));
            out.push(value);
        }
        out
    }

    pub fn to_complex(&self, prec: u32) -> CharPoly<Complex> {
        CharPoly { coeffs: self.coeffs.iter().map(|c| c.iter().map(|x| x.to_complex(prec)).collect()).collect() }
    }
}

/// Faddeev-LeVerrier: `M_1 = I`, `c_j = -tr(A M_j) / j`, `M_(j+1) = A M_j + c_j I`,
/// with every product truncated at the order of `a`.
pub fn charpoly_series<T: Scalar>(a: &MatrixSeries<T>) -> CharPoly<T> {
    let n = a.dim();
    let order = a.order();
    let ctx = a.context();
    let mut m = MatrixSeries::identity(n, order, ctx);
    let mut coeffs = Vec::with_capacity(n);
    for j in 1..=n {
        let am = a.mul(&m).expect("same dimension");
        let c: Vec<T> = am.coeffs().iter().map(|x| x.trace().neg().div_i64(j as i64)).collect();
        if j < n {
            let shifted = am
                .coeffs()
                .iter()
                .zip(&c)
                .map(|(x, cm)| x.add(&Matrix::identity(n, ctx).scale(cm)))
                .collect::<Result<Vec<_>>>()
                .expect("same dimension");
            m = MatrixSeries::new(shifted).expect("uniform dimension");
        }
        coeffs.push(c);
    }
    CharPoly { coeffs }
}

/// Characteristic polynomial of the companion-shaped `B` a normal form describes:
/// `c_(t+1)(z) = -(b_(n-t) z + b_(2n-t) z^2 + ... + b_(kn-t) z^k)`.
pub fn charpoly_from_normal_form<T: Scalar>(nf: &NormalForm<T>) -> CharPoly<T> {
    let n = nf.dim();
    let k = nf.order();
    let ctx = nf.entries()[0].context();
    let coeffs = (0..n)
        .map(|t| {
            let mut c = vec![T::zero(ctx)];
            c.extend((1..=k).map(|l| nf.b(n * l - t).neg()));
            c
        })
        .collect();
    CharPoly { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::normalize;
    use crate::random::{random_jordan_conjugate, random_normal_form_entries, random_series_with_constant};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rug::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
    }

    fn ints(c: &[Rational]) -> Vec<i64> {
        c.iter().map(|x| x.to_f64() as i64).collect()
    }

    #[test]
    fn jordan_block_charpoly_is_monomial() {
        let cp = charpoly_series(&MatrixSeries::constant(Matrix::<Rational>::jordan_block(4, ()), 2));
        assert!((1..=4).all(|t| cp.c(t).iter().all(Scalar::is_zero)));
    }

    #[test]
    fn two_by_two_cofactor_examples() {
        let a = MatrixSeries::new(vec![q(&[&[0, 1], &[0, 0]]), q(&[&[0, 0], &[1, 0]])]).unwrap();
        let cp = charpoly_series(&a);
        assert_eq!(ints(cp.c(1)), vec![0, 0]);
        assert_eq!(ints(cp.c(2)), vec![0, -1]);

        let a = MatrixSeries::new(vec![q(&[&[0, 1], &[0, 0]]), q(&[&[0, 0], &[1, 1]])]).unwrap();
        let cp = charpoly_series(&a);
        assert_eq!(ints(cp.c(1)), vec![0, -1]);
        assert_eq!(ints(cp.c(2)), vec![0, -1]);
        assert!(cp.is_eisenstein());
    }

    #[test]
    fn normal_form_examples() {
        let zero = NormalForm::new(3, 2, vec![Rational::new(); 6]).unwrap();
        let cp = charpoly_from_normal_form(&zero);
        assert!((1..=3).all(|t| cp.c(t).iter().all(Scalar::is_zero)));

        let nf = NormalForm::new(2, 2, [1, 1, 0, 0].map(Rational::from).to_vec()).unwrap();
        let cp = charpoly_from_normal_form(&nf);
        assert_eq!(ints(cp.c(1)), vec![0, -1, 0]);
        assert_eq!(ints(cp.c(2)), vec![0, -1, 0]);

        let nf = NormalForm::new(3, 1, [0, 3, 0].map(Rational::from).to_vec()).unwrap();
        let cp = charpoly_from_normal_form(&nf);
        assert_eq!(ints(cp.c(1)), vec![0, 0]);
        assert_eq!(ints(cp.c(2)), vec![0, -3]);
        assert_eq!(ints(cp.c(3)), vec![0, 0]);
        assert!(!cp.is_eisenstein());
    }

    #[test]
    fn evaluate_at_point() {
        let nf = NormalForm::new(2, 1, [1, 1].map(Rational::from).to_vec()).unwrap();
        let z = Complex::from_f64(128, 0.5, 0.0);
        let v = charpoly_from_normal_form(&nf).evaluate(&z);
        assert_eq!(v, vec![Complex::one(128), Complex::from_f64(128, -0.5, 0.0), Complex::from_f64(128, -0.5, 0.0)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn conjugation_invariance(seed in any::<u64>(), n in 2usize..=5, k in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a0 = random_jordan_conjugate(&mut rng, n, 10);
            let a = random_series_with_constant(&mut rng, a0, k, 10);
            let out = normalize(&a, k).unwrap();
            prop_assert_eq!(charpoly_series(&a), charpoly_series(&out.series));
            prop_assert_eq!(charpoly_series(&a), charpoly_from_normal_form(&out.normal_form));
        }

        #[test]
        fn normal_form_consistency(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nf = NormalForm::new(n, k, random_normal_form_entries(&mut rng, n, k, 30)).unwrap();
            let cp = charpoly_from_normal_form(&nf);
            prop_assert_eq!(&cp, &charpoly_series(&nf.to_series()));
            if !nf.b(1).is_zero() {
                prop_assert!(cp.is_eisenstein());
                prop_assert_eq!(&cp.c(n)[1], &nf.b(1).neg());
            }
        }
    }
}
