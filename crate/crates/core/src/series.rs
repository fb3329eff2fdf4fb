//! Truncated matrix power series `A_0 + A_1 z + ... + A_K z^K (mod z^(K+1))` and the
//! polynomial gauge transformations acting on them by conjugation.

use crate::error::{Error, Result};
use crate::numeric::{Complex, Matrix, Scalar};

/// An `n x n` matrix power series truncated at order `K` (so `K + 1` coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries<T> {
    coeffs: Vec<Matrix<T>>,
}

impl<T: Scalar> MatrixSeries<T> {
    pub fn new(coeffs: Vec<Matrix<T>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidArgument("series needs at least one coefficient".into()));
        };
        let n = first.dim();
        if let Some(bad) = coeffs.iter().find(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        Ok(MatrixSeries { coeffs })
    }

    /// `m` as a series with vanishing higher coefficients.
    pub fn constant(m: Matrix<T>, order: usize) -> Self {
        let zero = Matrix::zeros(m.dim(), m.context());
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = m;
        MatrixSeries { coeffs }
    }

    pub fn identity(n: usize, order: usize, ctx: T::Context) -> Self {
        Self::constant(Matrix::identity(n, ctx), order)
    }

    /// `I + g z^l`, truncated at `order`.
    pub fn unipotent(g: &Matrix<T>, l: usize, order: usize) -> Self {
        assert!(l >= 1, "unipotent factor needs a positive power");
        let mut s = Self::identity(g.dim(), order, g.context());
        if l <= order {
            s.coeffs[l] = g.clone();
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn context(&self) -> T::Context {
        self.coeffs[0].context()
    }

    pub fn coeff(&self, m: usize) -> &Matrix<T> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[Matrix<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Matrix<T>> {
        self.coeffs
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall { order: self.order(), required: order });
        }
        Ok(MatrixSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// Truncated Cauchy product; the result order is the smaller of the two input orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|m| {
                (0..=m).try_fold(Matrix::zeros(self.dim(), self.context()), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[m - i])?)
                })
            })
            .collect::<Result<_>>()?;
        Ok(MatrixSeries { coeffs })
    }

    /// Multiplicative inverse mod `z^(K+1)`:
    /// `R_0 = S_0^-1`, `R_m = -S_0^-1 (S_1 R_(m-1) + ... + S_m R_0)`.
    pub fn inverse(&self) -> Result<Self> {
        let s0_inv = self.coeffs[0].inverse().map_err(|_| Error::SingularConstantTerm)?;
        let n = self.dim();
        let mut out: Vec<Matrix<T>> = Vec::with_capacity(self.coeffs.len());
        out.push(s0_inv.clone());
        for m in 1..=self.order() {
            let mut acc = Matrix::zeros(n, self.context());
            for i in 1..=m {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&out[m - i])?)?;
            }
            out.push(s0_inv.mul(&acc)?.neg());
        }
        Ok(MatrixSeries { coeffs: out })
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        g.mul(self)?.mul(&g.inverse()?)
    }

    pub fn to_complex(&self, prec: u32) -> MatrixSeries<Complex> {
        MatrixSeries { coeffs: self.coeffs.iter().map(|m| m.to_complex(prec)).collect() }
    }
}

/// A polynomial gauge `g(z) = (I + G_k z^k) ... (I + G_1 z) g_0`.
///
/// Factors are stored as `(l, G_l)` with strictly increasing `l >= 1` and are applied
/// to a series innermost first: `g_0`, then `l = 1, 2, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransform<T> {
    g0: Matrix<T>,
    g0_inv: Matrix<T>,
    factors: Vec<(usize, Matrix<T>)>,
}

impl<T: Scalar> GaugeTransform<T> {
    pub fn new(g0: Matrix<T>, factors: Vec<(usize, Matrix<T>)>) -> Result<Self> {
        let n = g0.dim();
        let g0_inv = g0.inverse().map_err(|_| Error::InvalidGauge("constant factor g_0 is singular".into()))?;
        let mut prev = 0;
        for (l, g) in &factors {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
            if *l <= prev {
                return Err(Error::InvalidGauge(format!("factor index {l} does not increase strictly past {prev}")));
            }
            prev = *l;
        }
        Ok(GaugeTransform { g0, g0_inv, factors })
    }

    /// `g = I` written with `k` zero factors.
    pub fn identity(n: usize, k: usize, ctx: T::Context) -> Self {
        let zero = Matrix::zeros(n, ctx);
        GaugeTransform {
            g0: Matrix::identity(n, ctx),
            g0_inv: Matrix::identity(n, ctx),
            factors: (1..=k).map(|l| (l, zero.clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.g0.dim()
    }

    pub fn g0(&self) -> &Matrix<T> {
        &self.g0
    }

    pub fn factors(&self) -> &[(usize, Matrix<T>)] {
        &self.factors
    }

    pub fn max_index(&self) -> usize {
        self.factors.last().map_or(0, |(l, _)| *l)
    }

    /// True when `g_0 = I` and every `G_l = 0`.
    pub fn is_identity(&self) -> bool {
        self.g0 == Matrix::identity(self.dim(), self.g0.context()) && self.factors.iter().all(|(_, g)| g.is_zero())
    }

    /// The polynomial `g(z)` as a series truncated at `order`.
    pub fn to_series(&self, order: usize) -> Result<MatrixSeries<T>> {
        let mut g = MatrixSeries::constant(self.g0.clone(), order);
        for (l, factor) in &self.factors {
            g = MatrixSeries::unipotent(factor, *l, order).mul(&g)?;
        }
        Ok(g)
    }
}

/// `g A g^-1` mod `z^(K+1)`, every coefficient exact through order `K`.
///
/// Each unipotent factor is conjugated with its full truncated inverse, so coefficients
/// above the factor's own index are propagated exactly.
pub fn apply_gauge<T: Scalar>(g: &GaugeTransform<T>, a: &MatrixSeries<T>) -> Result<MatrixSeries<T>> {
    if g.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: a.dim() });
    }
    if a.order() < g.max_index() {
        return Err(Error::OrderTooSmall { order: a.order(), required: g.max_index() });
    }
    let coeffs = a.coeffs().iter().map(|m| g.g0.mul(m)?.mul(&g.g0_inv)).collect::<Result<Vec<_>>>()?;
    let mut b = MatrixSeries { coeffs };
    for (l, factor) in &g.factors {
        if factor.is_zero() {
            continue;
        }
        let h = MatrixSeries::unipotent(factor, *l, a.order());
        b = b.conjugate_by(&h)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
    }

    fn series(coeffs: &[&[&[i64]]]) -> MatrixSeries<Rational> {
        MatrixSeries::new(coeffs.iter().map(|m| q(m)).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let s = series(&[&[&[1, 2], &[3, 4]], &[&[0, 1], &[5, 0]]]);
        let id = MatrixSeries::identity(2, 1, ());
        assert_eq!(id.mul(&s).unwrap(), s);
        assert_eq!(s.mul(&id).unwrap(), s);
    }

    #[test]
    fn nilpotent_factors_cancel() {
        let n = q(&[&[0, 1], &[0, 0]]);
        let plus = MatrixSeries::unipotent(&n, 1, 3);
        let minus = MatrixSeries::unipotent(&n.neg(), 1, 3);
        assert_eq!(plus.mul(&minus).unwrap(), MatrixSeries::identity(2, 3, ()));
        assert_eq!(plus.inverse().unwrap(), minus);
    }

    #[test]
    fn cauchy_product_by_hand() {
        // (N + I z)(I + N z) = N + (N^2 + I) z + N z^2 = N + I z + N z^2
        let s = series(&[&[&[0, 1], &[0, 0]], &[&[1, 0], &[0, 1]], &[&[0, 0], &[0, 0]]]);
        let t = series(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 0]]]);
        let expected = series(&[&[&[0, 1], &[0, 0]], &[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]);
        assert_eq!(s.mul(&t).unwrap(), expected);
        // order follows the shorter input
        assert_eq!(s.mul(&t.truncate(1).unwrap()).unwrap().order(), 1);
    }

    #[test]
    fn scalar_geometric_inverse() {
        let s = series(&[&[&[1]], &[&[1]], &[&[1]]]);
        assert_eq!(s.inverse().unwrap(), series(&[&[&[1]], &[&[-1]], &[&[0]]]));
        let c = MatrixSeries::constant(q(&[&[2, 1], &[1, 1]]), 2);
        assert_eq!(c.inverse().unwrap(), MatrixSeries::constant(q(&[&[1, -1], &[-1, 2]]), 2));
        let singular = MatrixSeries::constant(q(&[&[1, 1], &[1, 1]]), 1);
        assert_eq!(singular.inverse(), Err(Error::SingularConstantTerm));
    }

    #[test]
    fn gauge_examples() {
        let a = series(&[&[&[0, 1], &[0, 0]], &[&[1, 0], &[0, 0]]]);
        let id = GaugeTransform::identity(2, 1, ());
        assert_eq!(apply_gauge(&id, &a).unwrap(), a);

        let g0 = q(&[&[1, 2], &[0, 1]]);
        let a0 = MatrixSeries::constant(q(&[&[3, 1], &[4, 5]]), 0);
        let g = GaugeTransform::new(g0.clone(), vec![]).unwrap();
        let expected = g0.mul(a0.coeff(0)).unwrap().mul(&g0.inverse().unwrap()).unwrap();
        assert_eq!(apply_gauge(&g, &a0).unwrap().coeff(0), &expected);

        // h_1 = I + G z with G = [[0,0],[1,0]] on A = [[z,1],[0,0]]: B_1 = A_1 - [A_0, G]
        let g = GaugeTransform::new(Matrix::identity(2, ()), vec![(1, q(&[&[0, 0], &[1, 0]]))]).unwrap();
        let b = apply_gauge(&g, &a).unwrap();
        assert_eq!(b.coeff(0), a.coeff(0));
        assert_eq!(b.coeff(1), &q(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn gauge_validation() {
        let z = q(&[&[0, 0], &[0, 0]]);
        let i = Matrix::identity(2, ());
        assert!(matches!(GaugeTransform::new(z.clone(), vec![]), Err(Error::InvalidGauge(_))));
        assert!(matches!(
            GaugeTransform::new(i.clone(), vec![(2, z.clone()), (1, z.clone())]),
            Err(Error::InvalidGauge(_))
        ));
        let g = GaugeTransform::new(i.clone(), vec![(3, q(&[&[1, 0], &[0, 0]]))]).unwrap();
        let a = MatrixSeries::identity(2, 2, ());
        assert_eq!(apply_gauge(&g, &a), Err(Error::OrderTooSmall { order: 2, required: 3 }));
        let a3 = MatrixSeries::identity(3, 3, ());
        assert_eq!(apply_gauge(&g, &a3), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn to_series_matches_apply_gauge() {
        let a = series(&[&[&[0, 1], &[0, 0]], &[&[1, 2], &[3, 4]], &[&[5, 6], &[7, 8]], &[&[1, 0], &[2, 1]]]);
        let g = GaugeTransform::new(
            q(&[&[1, 1], &[1, 2]]),
            vec![(1, q(&[&[0, 1], &[2, 0]])), (2, q(&[&[1, -1], &[0, 3]]))],
        )
        .unwrap();
        let via_poly = a.conjugate_by(&g.to_series(3).unwrap()).unwrap();
        assert_eq!(apply_gauge(&g, &a).unwrap(), via_poly);
    }

    fn small_series(n: usize, order: usize) -> impl Strategy<Value = MatrixSeries<Rational>> {
        proptest::collection::vec((-5i64..=5, 1i64..=4), n * n * (order + 1)).prop_map(move |cells| {
            let mut it = cells.into_iter();
            let coeffs = (0..=order)
                .map(|_| {
                    Matrix::from_fn(n, |_, _| {
                        let (p, d) = it.next().unwrap();
                        Rational::from((p, d))
                    })
                })
                .collect();
            MatrixSeries::new(coeffs).unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (MatrixSeries<Rational>, MatrixSeries<Rational>, MatrixSeries<Rational>)> {
        (1usize..=4, 0usize..=5).prop_flat_map(|(n, k)| (small_series(n, k), small_series(n, k), small_series(n, k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_is_associative((s, t, u) in triple()) {
            let left = s.mul(&t).unwrap().mul(&u).unwrap();
            let right = s.mul(&t.mul(&u).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_is_two_sided((s, _, _) in triple()) {
            if let Ok(inv) = s.inverse() {
                let id = MatrixSeries::identity(s.dim(), s.order(), ());
                prop_assert_eq!(s.mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mul(&s).unwrap(), id);
            }
        }

        #[test]
        fn unipotent_factor_keeps_lower_coefficients((a, g, _) in triple(), l in 1usize..=5) {
            prop_assume!(l <= a.order());
            let gauge = GaugeTransform::new(Matrix::identity(a.dim(), ()), vec![(l, g.coeff(0).clone())]).unwrap();
            let b = apply_gauge(&gauge, &a).unwrap();
            for m in 0..l {
                prop_assert_eq!(b.coeff(m), a.coeff(m));
            }
            let expected = a.coeff(l).sub(&a.coeff(0).commutator(g.coeff(0)).unwrap()).unwrap();
            prop_assert_eq!(b.coeff(l), &expected);
        }
    }
}
