//! Eigenvalue branches `zeta_i(z) = sum_m a_m (omega^i z^(1/n))^m` and their relation to
//! the normal-form entries `b_1..b_{nk}`.
//!
//! Convention: the `b_s` are the literal last-row entries of the normal form and
//! `det(zeta I - B) = prod_i (zeta - zeta_i)`. Under it `b_1 = a_1^n`, and `b_s` is affine
//! in `a_s` for `s >= 2` with slope of modulus `n |a_1|^t` where `s = n l - t`. Signs are
//! never hard-coded; both directions go through the branch product.

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::numeric::{principal_nth_root, tolerance, Complex, Scalar};

/// Coefficients `a_1..a_M` of the canonical branch, with a branch selector.
///
/// `coefficients()` always holds branch 0; branch `i` is the view `a_m omega^(i m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxExpansion {
    n: usize,
    coeffs: Vec<Complex>,
    branch: usize,
}

impl PuiseuxExpansion {
    pub fn new(n: usize, coeffs: Vec<Complex>, branch: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ramification index must be positive".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("expansion needs at least one coefficient".into()));
        }
        if branch >= n {
            return Err(Error::InvalidArgument(format!("branch {branch} out of range for n = {n}")));
        }
        Ok(PuiseuxExpansion { n, coeffs, branch })
    }

    /// Ramification index `n`.
    pub fn ramification(&self) -> usize {
        self.n
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    /// Canonical (branch 0) coefficients.
    pub fn coefficients(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficients of the selected branch, `a_m omega^(branch m)`.
    pub fn branch_coefficients(&self) -> Vec<Complex> {
        twist(&self.coeffs, self.n, self.branch as i64)
    }

    pub fn with_branch(&self, branch: usize) -> Result<Self> {
        Self::new(self.n, self.coeffs.clone(), branch)
    }

    pub fn truncated(&self, len: usize) -> Self {
        PuiseuxExpansion { n: self.n, coeffs: self.coeffs[..len.min(self.coeffs.len())].to_vec(), branch: self.branch }
    }

    /// Value of the selected branch at `z0`.
    pub fn evaluate(&self, z0: &Complex) -> Complex {
        self.evaluate_branch(z0, self.branch)
    }

    /// `sum_m a_m (omega^branch w)^m` with `w` the principal n-th root of `z0`.
    pub fn evaluate_branch(&self, z0: &Complex, branch: usize) -> Complex {
        let prec = self.prec().max(z0.prec());
        let Ok(root) = principal_nth_root(&z0.with_prec(prec), self.n) else {
            return Complex::zero(prec);
        };
        let w = &root * &Complex::root_of_unity(self.n, branch as i64, prec);
        self.coeffs.iter().rev().fold(Complex::zero(prec), |acc, a| &(&acc + a) * &w)
    }

    /// Values of all `n` branches at `z0`, in branch order.
    pub fn branch_values(&self, z0: &Complex) -> Vec<Complex> {
        (0..self.n).map(|i| self.evaluate_branch(z0, i)).collect()
    }
}

/// `a_m omega^(j m)`: relabels the branches, leaves their product unchanged.
pub fn twist(coeffs: &[Complex], n: usize, j: i64) -> Vec<Complex> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let m = i as i64 + 1;
            a * &Complex::root_of_unity(n, j * m, a.prec())
        })
        .collect()
}

/// Twists `coeffs` so that `a_1` becomes the principal n-th root of `a_1^n`.
pub fn rotate_to_principal(coeffs: &[Complex], n: usize) -> Result<Vec<Complex>> {
    let a1 = coeffs.first().ok_or(Error::LengthMismatch { expected: 1, found: 0 })?;
    let principal = principal_nth_root(&a1.powu(n as u32), n)?;
    let ratio = a1 / &principal;
    let prec = a1.prec();
    let j = (0..n as i64)
        .min_by(|&x, &y| {
            let dx = ratio.dist(&Complex::root_of_unity(n, x, prec));
            let dy = ratio.dist(&Complex::root_of_unity(n, y, prec));
            dx.total_cmp(&dy)
        })
        .unwrap_or(0);
    Ok(twist(coeffs, n, -j))
}

/// `b_1..b_{nk}` from `a_1..a_{nk}`.
///
/// Expands `prod_i (zeta - zeta_i(w))` with coefficients truncated at `w^(nk)` and reads
/// `b_(nl-t) = -[zeta^(n-1-t) w^(nl)]`.
pub fn forward_map(a: &PuiseuxExpansion, k: usize) -> Result<Vec<Complex>> {
    let n = a.ramification();
    if a.len() != n * k {
        return Err(Error::LengthMismatch { expected: n * k, found: a.len() });
    }
    Ok(forward_levels(a.coefficients(), n, k))
}

/// `b_1..b_{n levels}` from the first `n levels` coefficients of `coeffs` (missing ones are zero).
fn forward_levels(coeffs: &[Complex], n: usize, levels: usize) -> Vec<Complex> {
    let prec = coeffs[0].prec();
    let top = n * levels;
    let zero = Complex::zero(prec);
    // poly[d] = coefficient series of zeta^d
    let mut poly: Vec<Vec<Complex>> = vec![vec![zero.clone(); top + 1]];
    poly[0][0] = Complex::one(prec);
    for i in 0..n {
        let branch: Vec<(usize, Complex)> = coeffs
            .iter()
            .take(top)
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(idx, a)| {
                let m = idx + 1;
                (m, a * &Complex::root_of_unity(n, (i * m) as i64, prec))
            })
            .collect();
        let mut next = vec![vec![zero.clone(); top + 1]; poly.len() + 1];
        for (d, series) in poly.iter().enumerate() {
            for (e, x) in series.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                next[d + 1][e] = &next[d + 1][e] + x;
                for (m, z) in &branch {
                    if e + m > top {
                        break;
                    }
                    next[d][e + m] = &next[d][e + m] - &(x * z);
                }
            }
        }
        poly = next;
    }
    let mut b = Vec::with_capacity(top);
    for l in 1..=levels {
        for j in 1..=n {
            // b_(n(l-1)+j) has t = n - j
            let t = n - j;
            b.push(-&poly[n - 1 - t][n * l]);
        }
    }
    b
}

/// `a_1..a_{nk}` of the branch `branch` from `b_1..b_{nk}`.
///
/// `a_1` is the principal n-th root of `b_1`. For `s = 2..nk` the map is affine in `a_s`,
/// so two forward evaluations with `a_s = 0` and `a_s = 1` give offset and slope and
/// `a_s` follows by one division.
pub fn inverse_map(b: &[Complex], n: usize, branch: usize) -> Result<PuiseuxExpansion> {
    if n == 0 {
        return Err(Error::InvalidArgument("ramification index must be positive".into()));
    }
    if b.is_empty() || !b.len().is_multiple_of(n) {
        return Err(Error::LengthMismatch { expected: n * (b.len() / n).max(1), found: b.len() });
    }
    let prec = b[0].prec();
    let scale = b.iter().map(Complex::norm_f64).fold(0.0, f64::max);
    if b[0].is_negligible(scale) {
        return Err(Error::ZeroLeadingEntry);
    }
    let a1 = principal_nth_root(&b[0], n)?;
    let a1_abs = a1.norm_f64();
    let mut coeffs = vec![a1];
    for s in 2..=b.len() {
        let l = s.div_ceil(n);
        let t = n * l - s;
        let mut trial = coeffs.clone();
        trial.push(Complex::zero(prec));
        let offset = forward_levels(&trial, n, l).swap_remove(s - 1);
        trial[s - 1] = Complex::one(prec);
        let with_one = forward_levels(&trial, n, l).swap_remove(s - 1);
        let slope = &with_one - &offset;
        let expected = n as f64 * a1_abs.powi(t as i32);
        if slope.norm_f64() <= tolerance(prec) * expected {
            return Err(Error::DegenerateSlope { index: s });
        }
        let a_s = (&b[s - 1] - &offset).checked_div(&slope).ok_or(Error::DegenerateSlope { index: s })?;
        coeffs.push(a_s);
    }
    PuiseuxExpansion::new(n, coeffs, branch)
}

/// Newton-Puiseux solve of `chi(w^n, sum a_m w^m) = 0` straight from the characteristic
/// polynomial, giving `a_1..a_{nK}` for a polynomial truncated at `z^K`.
///
/// Requires the Eisenstein shape. Adding `a_m w^m` moves the coefficient of `w^(n-1+m)`
/// by exactly `n a_1^(n-1) a_m` and nothing below it, so each step is one division.
pub fn puiseux_from_charpoly(cp: &CharPoly<Complex>, branch: usize) -> Result<PuiseuxExpansion> {
    if !cp.is_eisenstein() {
        return Err(Error::NotEisenstein);
    }
    let n = cp.degree();
    let order = cp.order();
    let total = n * order;
    let a1 = principal_nth_root(&-&cp.c(n)[1], n)?;
    let lead = a1.powu(n as u32 - 1).scale_i64(n as i64);
    let mut coeffs = vec![a1];
    for m in 2..=total {
        let top = n - 1 + m;
        let residual = charpoly_in_w(cp, &coeffs, top);
        let a_m = -&(residual[top].checked_div(&lead).ok_or(Error::DegenerateSlope { index: m })?);
        coeffs.push(a_m);
    }
    PuiseuxExpansion::new(n, coeffs, branch)
}

/// Coefficients of `chi(w^n, zeta(w))` through `w^top`, `zeta = sum coeffs[m-1] w^m`.
pub fn charpoly_in_w(cp: &CharPoly<Complex>, coeffs: &[Complex], top: usize) -> Vec<Complex> {
    let n = cp.degree();
    let prec = coeffs[0].prec();
    let zero = Complex::zero(prec);
    let mut zeta = vec![zero.clone(); top + 1];
    for (i, a) in coeffs.iter().enumerate() {
        if i < top {
            zeta[i + 1] = a.clone();
        }
    }
    let lift = |c: &[Complex]| {
        let mut s = vec![zero.clone(); top + 1];
        for (j, x) in c.iter().enumerate() {
            if n * j <= top {
                s[n * j] = x.clone();
            }
        }
        s
    };
    // Horner in zeta: ((zeta + c_1) zeta + c_2) zeta + ... + c_n
    let mut acc = zeta.clone();
    for t in 1..=n {
        let ct = lift(cp.c(t));
        if t > 1 {
            acc = mul_truncated(&acc, &zeta, top);
        }
        for (x, c) in acc.iter_mut().zip(&ct) {
            *x = &*x + c;
        }
    }
    acc
}

fn mul_truncated(a: &[Complex], b: &[Complex], top: usize) -> Vec<Complex> {
    let prec = a[0].prec();
    let mut out = vec![Complex::zero(prec); top + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}
