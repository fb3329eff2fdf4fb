//! Independent checks: the roots-of-unity identity behind the leading coefficients,
//! numeric sampling of the eigenvalues, and the truncation-order estimate.

use crate::charpoly::charpoly_series;
use crate::error::{Error, Result};
use crate::normal_form::normalize;
use crate::numeric::{poly_roots, tolerance, Complex, Scalar};
use crate::puiseux::inverse_map;
use crate::series::MatrixSeries;

/// Integer weights `w_1..w_{t+1}` with `-n < w_1 < 0`, `0 < w_j < n` for `j >= 2`,
/// `sum w_j = 0` and `1 <= t < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(n: usize, weights: Vec<i64>) -> Result<Self> {
        let ni = n as i64;
        let t = weights.len().saturating_sub(1);
        if t < 1 || t >= n {
            return Err(Error::InvalidWeights(format!("need 1 <= t < n, got t = {t}, n = {n}")));
        }
        if !(-ni < weights[0] && weights[0] < 0) {
            return Err(Error::InvalidWeights(format!("w_1 = {} not in (-{n}, 0)", weights[0])));
        }
        if let Some(w) = weights[1..].iter().find(|&&w| !(0 < w && w < ni)) {
            return Err(Error::InvalidWeights(format!("weight {w} not in (0, {n})")));
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, not 0")));
        }
        Ok(WeightVector { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The value `(-1)^t n` the sum is claimed to take.
    pub fn expected(&self) -> i64 {
        if self.t().is_multiple_of(2) {
            self.n as i64
        } else {
            -(self.n as i64)
        }
    }
}

/// Every valid weight vector for `n` and `t`, in lexicographic order.
pub fn weight_vectors(n: usize, t: usize) -> Vec<WeightVector> {
    let mut out = Vec::new();
    if t < 1 || t >= n {
        return out;
    }
    let ni = n as i64;
    for w1 in (1 - ni)..0 {
        let mut tail = Vec::with_capacity(t);
        compositions(-w1, t, ni - 1, &mut tail, &mut |rest| {
            let mut w = vec![w1];
            w.extend_from_slice(rest);
            out.push(WeightVector { n, weights: w });
        });
    }
    out
}

// ordered tuples of `parts` integers in 1..=max summing to `total`
fn compositions(total: i64, parts: usize, max: i64, prefix: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if parts == 0 {
        if total == 0 {
            emit(prefix);
        }
        return;
    }
    let remaining = parts as i64 - 1;
    for w in 1..=max.min(total - remaining) {
        prefix.push(w);
        compositions(total - w, parts - 1, max, prefix, emit);
        prefix.pop();
    }
}

/// `(1/t!) sum omega^(w_1 s_1 + ... + w_{t+1} s_{t+1})` over ordered tuples of pairwise
/// distinct `s_j` in `1..=n`, by direct enumeration.
///
/// Tuples are tallied by exponent residue mod `n` in exact integers; only the final
/// `sum count_r omega^r` is done in floating point.
pub fn lemma_sum(wv: &WeightVector, prec: u32) -> Complex {
    let n = wv.n;
    let mut counts = vec![0u64; n];
    let mut used = vec![false; n + 1];
    tally(wv.weights(), n, 0, &mut used, &mut counts);
    let total = counts.iter().enumerate().filter(|(_, &c)| c > 0).fold(Complex::zero(prec), |acc, (r, &c)| {
        &acc + &Complex::root_of_unity(n, r as i64, prec).scale_i64(c as i64)
    });
    let factorial: i64 = (1..=wv.t() as i64).product();
    total.div_i64(factorial)
}

fn tally(weights: &[i64], n: usize, exponent: i64, used: &mut [bool], counts: &mut [u64]) {
    let Some((&w, rest)) = weights.split_first() else {
        counts[exponent.rem_euclid(n as i64) as usize] += 1;
        return;
    };
    for s in 1..=n {
        if used[s] {
            continue;
        }
        used[s] = true;
        tally(rest, n, exponent + w * s as i64, used, counts);
        used[s] = false;
    }
}

/// One checked weight vector.
#[derive(Clone, Debug)]
pub struct LemmaOutcome {
    pub weights: WeightVector,
    pub value: Complex,
    pub error: f64,
}

impl LemmaOutcome {
    pub fn passed(&self, tol: f64) -> bool {
        self.error <= tol
    }
}

/// Checks every valid weight vector for `n` (all `t`, or only `t` when given).
pub fn lemma_check(n: usize, t: Option<usize>, prec: u32) -> Vec<LemmaOutcome> {
    let ts: Vec<usize> = match t {
        Some(t) => vec![t],
        None => (1..n).collect(),
    };
    ts.into_iter()
        .flat_map(|t| weight_vectors(n, t))
        .map(|wv| {
            let value = lemma_sum(&wv, prec);
            let error = value.dist(&Complex::from_i64(prec, wv.expected()));
            LemmaOutcome { weights: wv, value, error }
        })
        .collect()
}

/// Numeric eigenvalues versus Puiseux branch values at one sample point.
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub z0: Complex,
    /// `|branch_i - matched root|` in branch order.
    pub errors: Vec<f64>,
    pub max_error: f64,
    /// Some branch has a second-nearest root closer than twice its matched distance.
    pub ambiguous: bool,
    /// Noise floor for this sample: working tolerance times the largest root modulus.
    pub noise_floor: f64,
}

/// Compares the `n` roots of `chi(z0, zeta)` (charpoly of `a` at its full truncation order)
/// with the `n` branches built from `normalize(a, k)` via [`inverse_map`].
///
/// Matching is greedy on globally sorted distances.
pub fn sample_check<T: Scalar>(a: &MatrixSeries<T>, k: usize, z0: &Complex) -> Result<SampleReport> {
    let prec = z0.prec();
    let n = a.dim();
    let out = normalize(a, k)?;
    let b = out.normal_form.to_complex(prec);
    let expansion = inverse_map(b.entries(), n, 0)?;
    let branches = expansion.branch_values(z0);
    let cp = charpoly_series(a).to_complex(prec);
    let roots = poly_roots(&cp.evaluate(z0))?;

    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, br) in branches.iter().enumerate() {
        for (j, r) in roots.iter().enumerate() {
            pairs.push((br.dist(r), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut matched_branch = vec![None; n];
    let mut root_taken = vec![false; n];
    for (d, i, j) in &pairs {
        if matched_branch[*i].is_none() && !root_taken[*j] {
            matched_branch[*i] = Some((*j, *d));
            root_taken[*j] = true;
        }
    }
    let errors: Vec<f64> = matched_branch.iter().map(|m| m.map_or(f64::INFINITY, |(_, d)| d)).collect();
    let ambiguous = n > 1
        && matched_branch.iter().enumerate().any(|(i, m)| {
            let (j, d) = m.expect("every branch matched");
            let second = roots
                .iter()
                .enumerate()
                .filter(|(jj, _)| *jj != j)
                .map(|(_, r)| branches[i].dist(r))
                .fold(f64::INFINITY, f64::min);
            second < 2.0 * d
        });
    let max_error = errors.iter().copied().fold(0.0, f64::max);
    let root_scale = roots.iter().map(Complex::norm_f64).fold(0.0, f64::max);
    Ok(SampleReport { z0: z0.clone(), errors, max_error, ambiguous, noise_floor: tolerance(prec) * root_scale })
}

/// `(nk + 1) / n`, the exponent of the first omitted term `a_{nk+1} z^((nk+1)/n)`.
pub fn expected_order(n: usize, k: usize) -> f64 {
    (n * k + 1) as f64 / n as f64
}

/// Least-squares fit of `log(error)` against `log|z0|`.
#[derive(Clone, Debug)]
pub struct OrderEstimate {
    pub slope: f64,
    pub expected: f64,
    pub samples: Vec<SampleReport>,
}

/// Runs [`sample_check`] at every point and fits the error exponent.
///
/// Points whose error is at the noise floor are left out of the fit; if fewer than
/// two remain the fit is degenerate.
pub fn estimate_order<T: Scalar>(a: &MatrixSeries<T>, k: usize, points: &[Complex]) -> Result<OrderEstimate> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two sample points".into()));
    }
    let samples = points.iter().map(|z| sample_check(a, k, z)).collect::<Result<Vec<_>>>()?;
    let fit: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.max_error > s.noise_floor && s.max_error > 0.0)
        .map(|s| (s.z0.norm_f64().ln(), s.max_error.ln()))
        .collect();
    let distinct = fit.windows(2).any(|w| (w[0].0 - w[1].0).abs() > 1e-12) || fit.len() > 2;
    if fit.len() < 2 || !distinct {
        return Err(Error::DegenerateFit);
    }
    let m = fit.len() as f64;
    let mean_x = fit.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = fit.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = fit.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = fit.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    Ok(OrderEstimate { slope: sxy / sxx, expected: expected_order(a.dim(), k), samples })
}
