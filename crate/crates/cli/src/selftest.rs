//! Randomized property suites behind `gaugeform self-test`.

use gaugeform::numeric::{max_relative_error, tolerance};
use gaugeform::puiseux::rotate_to_principal;
use gaugeform::random::{
    random_jordan_conjugate, random_moderate_series, random_puiseux_coefficients, random_rational_matrix,
    random_series_with_constant,
};
use gaugeform::verify::{estimate_order, lemma_check};
use gaugeform::{
    apply_gauge, charpoly_from_normal_form, charpoly_series, forward_map, inverse_map, normalize,
    puiseux_from_charpoly, solve_ad, CharPoly, Complex, Matrix, MatrixSeries, PuiseuxExpansion, Rational, Scalar,
    DEFAULT_PRECISION,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{LEMMA_TOLERANCE, SLOPE_TOLERANCE};

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    /// First failing case, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub precision: u32,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

type Suite = fn(&mut ChaCha8Rng) -> (usize, Option<String>);

const SUITES: [(&str, Suite); 5] = [
    ("normal-form", normal_form_suite),
    ("ad-solve", ad_solve_suite),
    ("round-trip", round_trip_suite),
    ("roots-of-unity", lemma_suite),
    ("numeric-order", numeric_suite),
];

/// Runs every suite; suite `i` draws from its own stream seeded by `(seed, i)`.
pub fn run(seed: u64) -> SelfTestReport {
    let suites: Vec<SuiteResult> = SUITES
        .iter()
        .enumerate()
        .map(|(i, (name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (cases, failure) = suite(&mut rng);
            SuiteResult { name, cases, passed: failure.is_none(), failure }
        })
        .collect();
    SelfTestReport { seed, precision: DEFAULT_PRECISION, passed: suites.iter().all(|s| s.passed), suites }
}

fn normal_form_suite(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    const CASES: usize = 40;
    for case in 0..CASES {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=3);
        let a0 = random_jordan_conjugate(rng, n, 20);
        let a = random_series_with_constant(rng, a0, k, 20);
        let out = match normalize(&a, k) {
            Ok(out) => out,
            Err(e) => return (case + 1, Some(format!("case {case}: {e}"))),
        };
        let b = out.series.truncate(k).expect("order k available");
        if b.coeff(0) != &Matrix::jordan_block(n, ()) {
            return (case + 1, Some(format!("case {case}: constant term is not the Jordan block")));
        }
        if (1..=k).any(|l| (0..n - 1).any(|i| b.coeff(l).row(i).iter().any(|x| !x.is_zero()))) {
            return (case + 1, Some(format!("case {case}: entries above the last row survive")));
        }
        if apply_gauge(&out.gauge, &a).and_then(|x| x.truncate(k)).ok() != Some(b.clone()) {
            return (case + 1, Some(format!("case {case}: gauge does not reproduce the normal form")));
        }
        let cp = charpoly_series(&a.truncate(k).expect("order k available"));
        if cp != charpoly_series(&b) || cp != charpoly_from_normal_form(&out.normal_form) {
            return (case + 1, Some(format!("case {case}: characteristic polynomial changed")));
        }
    }
    (CASES, None)
}

fn ad_solve_suite(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    const CASES: usize = 100;
    for case in 0..CASES {
        let n = rng.gen_range(1..=8);
        let m = random_rational_matrix(rng, n, 50);
        let (g, r) = solve_ad(&m);
        let rebuilt = Matrix::jordan_block(n, ()).commutator(&g).and_then(|c| c.add(&r));
        if rebuilt.ok() != Some(m) {
            return (case + 1, Some(format!("case {case}: M != [J, G] + R")));
        }
    }
    (CASES, None)
}

fn round_trip_suite(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    const CASES: usize = 40;
    let prec = DEFAULT_PRECISION;
    for case in 0..CASES {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=3);
        let a = random_puiseux_coefficients(rng, n, k, prec);
        let result = PuiseuxExpansion::new(n, a.clone(), 0)
            .and_then(|e| forward_map(&e, k))
            .and_then(|b| inverse_map(&b, n, 0))
            .and_then(|back| Ok((back, rotate_to_principal(&a, n)?)));
        match result {
            Ok((back, expected)) => {
                let err = max_relative_error(back.coefficients(), &expected);
                if err > tolerance(prec) {
                    return (case + 1, Some(format!("case {case}: relative error {err:.3e}")));
                }
            }
            Err(e) => return (case + 1, Some(format!("case {case}: {e}"))),
        }
    }
    (CASES, None)
}

fn lemma_suite(_rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let mut cases = 0;
    for n in 2..=5 {
        for outcome in lemma_check(n, None, DEFAULT_PRECISION) {
            cases += 1;
            if !outcome.passed(LEMMA_TOLERANCE) {
                return (
                    cases,
                    Some(format!("n = {n}, weights {:?}: error {:.3e}", outcome.weights.weights(), outcome.error)),
                );
            }
        }
    }
    (cases, None)
}

fn numeric_suite(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    const CASES: usize = 10;
    let prec = DEFAULT_PRECISION;
    // further in than the `verify` defaults, so the subleading term does not bend the fit
    let points: Vec<Complex> = [1e-4, 1e-5, 1e-6].iter().map(|&x| Complex::from_f64(prec, x, 0.0)).collect();
    let mut done = 0;
    while done < CASES {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let a = random_moderate_series(rng, n, k);
        match normalize(&a, k) {
            Ok(out) if out.normal_form.b(1).is_zero() => continue,
            Ok(_) => {}
            Err(e) => return (done + 1, Some(format!("case {done}: {e}"))),
        }
        // the first omitted coefficient can vanish, in which case the error falls off faster
        let expected = leading_omitted_exponent(&a, k, prec);
        match (estimate_order(&a, k, &points), expected) {
            (Ok(est), Some(expected)) if (est.slope - expected).abs() <= SLOPE_TOLERANCE => {}
            (Ok(est), Some(expected)) => {
                return (done + 1, Some(format!("case {done}: slope {:.3}, expected {expected:.3}", est.slope)));
            }
            (Ok(est), None) => {
                return (
                    done + 1,
                    Some(format!("case {done}: slope {:.3} although no omitted term is nonzero", est.slope)),
                );
            }
            // errors already at the noise floor: the truncation is exact, nothing to fit
            (Err(gaugeform::Error::DegenerateFit), _) => {}
            (Err(e), _) => return (done + 1, Some(format!("case {done}: {e}"))),
        }
        done += 1;
    }
    (CASES, None)
}

/// `m / n` for the first `m > nk` with `a_m != 0`, read from a Newton-Puiseux expansion of
/// the sampled characteristic polynomial (a polynomial in `z`, so zero padding is exact).
fn leading_omitted_exponent(a: &MatrixSeries<Rational>, k: usize, prec: u32) -> Option<f64> {
    let n = a.dim();
    let cp = charpoly_series(a);
    let len = cp.order() + 3;
    let padded = CharPoly::new(
        (1..=n)
            .map(|t| {
                let mut c = cp.c(t).to_vec();
                c.resize(len, Rational::new());
                c
            })
            .collect(),
    )
    .ok()?;
    let expansion = puiseux_from_charpoly(&padded.to_complex(prec), 0).ok()?;
    let coeffs = expansion.coefficients();
    let scale = coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    (n * k + 1..=coeffs.len()).find(|&m| !coeffs[m - 1].is_negligible(scale)).map(|m| m as f64 / n as f64)
}
