//! Reduction of a series with regular nilpotent constant term to the companion-like
//! normal form
//!
//! ```text
//! B_0 = J_n(0),   B_l = (last row b_{n(l-1)+1} .. b_{nl}, zeros elsewhere),  1 <= l <= k.
//! ```
//!
//! `J_n(0)` is the upper Jordan block (ones on the superdiagonal).

use crate::error::{Error, Result};
use crate::numeric::{Complex, Matrix, Scalar};
use crate::series::{apply_gauge, GaugeTransform, MatrixSeries};

/// The last-row entries `b_1..b_{nk}` of `B_1..B_k`.
///
/// `b_{n(l-1)+j}` is entry `(n, j)` (1-based) of `B_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<T> {
    n: usize,
    k: usize,
    entries: Vec<T>,
}

impl<T: Scalar> NormalForm<T> {
    pub fn new(n: usize, k: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument("normal form needs n >= 1 and k >= 1".into()));
        }
        if entries.len() != n * k {
            return Err(Error::LengthMismatch { expected: n * k, found: entries.len() });
        }
        Ok(NormalForm { n, k, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `b_s`, 1-based.
    pub fn b(&self, s: usize) -> &T {
        &self.entries[s - 1]
    }

    /// The series `B` of order `k` this normal form describes.
    pub fn to_series(&self) -> MatrixSeries<T> {
        let ctx = self.entries[0].context();
        let n = self.n;
        let mut coeffs = vec![Matrix::jordan_block(n, ctx)];
        for chunk in self.entries.chunks(n) {
            let mut m = Matrix::zeros(n, ctx);
            for (j, b) in chunk.iter().enumerate() {
                m[(n - 1, j)] = b.clone();
            }
            coeffs.push(m);
        }
        MatrixSeries::new(coeffs).expect("uniform dimension")
    }

    pub fn to_complex(&self, prec: u32) -> NormalForm<Complex> {
        NormalForm { n: self.n, k: self.k, entries: self.entries.iter().map(|b| b.to_complex(prec)).collect() }
    }
}

/// Output of [`normalize`]: the gauge, the normal-form entries and the full conjugated series.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization<T> {
    pub gauge: GaugeTransform<T>,
    pub normal_form: NormalForm<T>,
    pub series: MatrixSeries<T>,
}

/// `A_0^n = 0` and `A_0^(n-1) != 0`.
///
/// On the complex backend the zero tests are relative to `max|a_ij|^p` for the power `p`.
pub fn check_regular_nilpotent<T: Scalar>(a0: &Matrix<T>) -> bool {
    let n = a0.dim();
    let norm = a0.max_magnitude();
    let below = a0.pow(n - 1);
    let top = below.mul(a0).expect("same dimension");
    top.is_negligible(norm.powi(n as i32)) && !below.is_negligible(norm.powi(n as i32 - 1))
}

/// Constant gauge `g_0` with `g_0 A_0 g_0^-1 = J_n(0)`.
///
/// Uses the cyclic vector `v = e_i` for the smallest `i` with `A_0^(n-1) e_i != 0` and
/// returns `P^-1` for `P = [A_0^(n-1) v | ... | A_0 v | v]`.
pub fn jordanize<T: Scalar>(a0: &Matrix<T>) -> Result<Matrix<T>> {
    if !check_regular_nilpotent(a0) {
        return Err(Error::NotRegularNilpotent);
    }
    let n = a0.dim();
    let top = a0.pow(n - 1);
    let scale = a0.max_magnitude().powi(n as i32 - 1);
    let col =
        (0..n).find(|&j| top.column(j).iter().any(|x| !x.is_negligible(scale))).ok_or(Error::NotRegularNilpotent)?;

    let ctx = a0.context();
    let mut chain = Vec::with_capacity(n);
    let mut v: Vec<T> = (0..n).map(|i| if i == col { T::one(ctx) } else { T::zero(ctx) }).collect();
    chain.push(v.clone());
    for _ in 1..n {
        v = (0..n).map(|i| (0..n).fold(T::zero(ctx), |acc, j| acc.add(&a0[(i, j)].mul(&v[j])))).collect();
        chain.push(v.clone());
    }
    // chain[m] = A_0^m v; column j of P is A_0^(n-1-j) v
    let p = Matrix::from_fn(n, |i, j| chain[n - 1 - j][i].clone());
    p.inverse().map_err(|_| Error::NotRegularNilpotent)
}

/// Splits `M = [J, G] + R` with `J = J_n(0)` and `R` supported on the last row.
///
/// `G` has zero first row and `g_{i+1,1} = m_{i,1}`, `g_{i+1,j} = m_{i,j} + g_{i,j-1}`.
/// The last row of `R` is then the sum of `M` along the diagonal running up-left
/// from each entry: `r_{n,t} = m_{n,t} + m_{n-1,t-1} + ... + m_{n-t+1,1}`.
pub fn solve_ad<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let n = m.dim();
    let ctx = m.context();
    let mut g: Matrix<T> = Matrix::zeros(n, ctx);
    for i in 0..n - 1 {
        for j in 0..n {
            let carry = if j == 0 { T::zero(ctx) } else { g[(i, j - 1)].clone() };
            g[(i + 1, j)] = m[(i, j)].add(&carry);
        }
    }
    let mut r = Matrix::zeros(n, ctx);
    for t in 0..n {
        let carry = if t == 0 { T::zero(ctx) } else { g[(n - 1, t - 1)].clone() };
        r[(n - 1, t)] = m[(n - 1, t)].add(&carry);
    }
    (g, r)
}

/// Brings `a` to normal form through order `k`.
///
/// Conjugates by `g_0` from [`jordanize`], then for `l = 1..k` (increasing) solves the
/// ad-equation on the current `B_l` and conjugates the whole truncated series by
/// `I + G_l z^l`. Always emits `k` factors, zero matrices included.
pub fn normalize<T: Scalar>(a: &MatrixSeries<T>, k: usize) -> Result<Normalization<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("normalization order k must be positive".into()));
    }
    if a.order() < k {
        return Err(Error::OrderTooSmall { order: a.order(), required: k });
    }
    let n = a.dim();
    let g0 = jordanize(a.coeff(0))?;
    let mut gauge = GaugeTransform::new(g0.clone(), vec![])?;
    let mut b = apply_gauge(&gauge, a)?;
    let mut factors = Vec::with_capacity(k);
    for l in 1..=k {
        let (g, _) = solve_ad(b.coeff(l));
        if !g.is_zero() {
            let step = GaugeTransform::new(Matrix::identity(n, a.context()), vec![(l, g.clone())])?;
            b = apply_gauge(&step, &b)?;
        }
        factors.push((l, g));
    }
    gauge = GaugeTransform::new(g0, factors)?;
    let entries = b.coeffs()[1..=k].iter().flat_map(|m| m.row(n - 1).to_vec()).collect();
    let normal_form = NormalForm::new(n, k, entries)?;
    Ok(Normalization { gauge, normal_form, series: b })
}

/// `A - lambda I` in the constant term.
///
/// The normal form is only defined for eigenvalue zero; for a constant term similar to
/// `J_n(lambda)`, normalize the shifted series and add `lambda` back to every eigenvalue branch.
pub fn shift_constant_term<T: Scalar>(a: &MatrixSeries<T>, lambda: &T) -> MatrixSeries<T> {
    let mut coeffs = a.coeffs().to_vec();
    let shift = Matrix::identity(a.dim(), a.context()).scale(lambda);
    coeffs[0] = coeffs[0].sub(&shift).expect("same dimension");
    MatrixSeries::new(coeffs).expect("unchanged shape")
}
