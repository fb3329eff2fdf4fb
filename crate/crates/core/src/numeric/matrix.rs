use std::fmt;
use std::ops::{Index, IndexMut};

use super::complex::Complex;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense square matrix, row-major, 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize, ctx: T::Context) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Matrix { n, entries: vec![T::zero(ctx); n * n] }
    }

    pub fn identity(n: usize, ctx: T::Context) -> Self {
        let mut m = Self::zeros(n, ctx);
        for i in 0..n {
            m[(i, i)] = T::one(ctx);
        }
        m
    }

    /// Upper Jordan block with eigenvalue zero: ones on the superdiagonal.
    pub fn jordan_block(n: usize, ctx: T::Context) -> Self {
        let mut m = Self::zeros(n, ctx);
        for i in 0..n - 1 {
            m[(i, i + 1)] = T::one(ctx);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> T::Context {
        self.entries[0].context()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(Matrix { n: self.n, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let ctx = self.context();
        let mut out = Self::zeros(n, ctx);
        for i in 0..n {
            for l in 0..n {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { n: self.n, entries: self.entries.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Matrix { n: self.n, entries: self.entries.iter().map(Scalar::neg).collect() }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.n, self.context());
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn trace(&self) -> T {
        (1..self.n).fold(self[(0, 0)].clone(), |acc, i| acc.add(&self[(i, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Largest entry modulus.
    pub fn max_magnitude(&self) -> f64 {
        self.entries.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// All entries zero up to the backend tolerance relative to `scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        self.entries.iter().all(|x| x.is_negligible(scale))
    }

    /// Gauss-Jordan inverse.
    ///
    /// Exact backends pivot on any nonzero entry; approximate ones use partial pivoting
    /// and reject pivots below the backend tolerance relative to the largest entry.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let ctx = self.context();
        let scale = self.max_magnitude();
        let mut a = self.clone();
        let mut inv = Self::identity(n, ctx);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_negligible(scale))
                .max_by(|&r, &s| a[(r, col)].magnitude().total_cmp(&a[(s, col)].magnitude()))
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].recip().ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&p);
                inv[(col, j)] = inv[(col, j)].mul(&p);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let da = f.mul(&a[(col, j)]);
                    a[(r, j)] = a[(r, j)].sub(&da);
                    let di = f.mul(&inv[(col, j)]);
                    inv[(r, j)] = inv[(r, j)].sub(&di);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.n {
            self.entries.swap(r * self.n + j, s * self.n + j);
        }
    }

    pub fn to_complex(&self, prec: u32) -> Matrix<Complex> {
        Matrix { n: self.n, entries: self.entries.iter().map(|x| x.to_complex(prec)).collect() }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.n + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_of_identity_and_involution() {
        let id = Matrix::<Rational>::identity(3, ());
        assert_eq!(id.inverse().unwrap(), id);
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn rank_deficient_is_singular() {
        assert_eq!(q(&[&[1, 1], &[0, 0]]).inverse(), Err(Error::SingularMatrix));
        let c = q(&[&[1, 1], &[0, 0]]).to_complex(128);
        assert_eq!(c.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn complex_near_singular_is_rejected() {
        let mut m = q(&[&[1, 2], &[2, 4]]).to_complex(256);
        m[(1, 1)] = &m[(1, 1)] + &Complex::from_f64(256, 1e-60, 0.0);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn jordan_block_is_nilpotent() {
        let j = Matrix::<Rational>::jordan_block(4, ());
        assert!(!j.pow(3).is_zero());
        assert!(j.pow(4).is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::<Rational>::identity(2, ());
        let b = Matrix::<Rational>::identity(3, ());
        assert_eq!(a.mul(&b), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    fn invertible_rational() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((-9i64..=9, 1i64..=9), n * n).prop_map(move |cells| {
                let mut it = cells.into_iter();
                Matrix::from_fn(n, |_, _| {
                    let (p, d) = it.next().unwrap();
                    Rational::from((p, d))
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rational_inverse_is_exact(m in invertible_rational()) {
            match m.inverse() {
                Ok(inv) => {
                    let id = Matrix::identity(m.dim(), ());
                    prop_assert_eq!(inv.mul(&m).unwrap(), id.clone());
                    prop_assert_eq!(m.mul(&inv).unwrap(), id);
                }
                Err(e) => prop_assert_eq!(e, Error::SingularMatrix),
            }
        }
    }
}
