//! Principal n-th roots and simultaneous polynomial root finding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use super::complex::Complex;
use crate::error::{Error, Result};

/// Principal n-th root: the root whose argument lies in `(-pi/n, pi/n]`.
pub fn principal_nth_root(x: &Complex, n: usize) -> Result<Complex> {
    assert!(n >= 1, "root order must be positive");
    if x.is_zero() {
        return Err(Error::ZeroRadicand);
    }
    if n == 1 {
        return Ok(x.clone());
    }
    let prec = x.prec();
    let modulus = x.norm().root(n as u32);
    let theta = x.arg() / n as u32;
    if theta.is_zero() {
        return Ok(Complex::from_float(modulus));
    }
    Ok(Complex::from_polar(&modulus, &Float::with_val(prec, theta)))
}

/// Iteration cap for [`poly_roots`].
pub const MAX_ROOT_ITERATIONS: usize = 2000;

const GUARD_BITS: u32 = 32;

/// All roots of the monic polynomial `coeffs[0] z^n + coeffs[1] z^(n-1) + ... + coeffs[n]`
/// with `coeffs[0] = 1`, counted with multiplicity.
///
/// Exact zero roots are split off first; the rest are found by Aberth-Ehrlich iteration
/// started from a slightly perturbed circle (fixed seed, so results are reproducible).
pub fn poly_roots(coeffs: &[Complex]) -> Result<Vec<Complex>> {
    if coeffs.len() < 2 {
        return Err(Error::InvalidArgument("polynomial degree must be at least 1".into()));
    }
    let prec = coeffs[0].prec();
    if coeffs[0].dist(&Complex::one(prec)) > super::complex::tolerance(prec) {
        return Err(Error::NotMonic);
    }
    let mut poly: Vec<Complex> = coeffs.to_vec();
    let mut roots = Vec::with_capacity(coeffs.len() - 1);
    while poly.len() > 1 && poly.last().is_some_and(Complex::is_zero) {
        poly.pop();
        roots.push(Complex::zero(prec));
    }
    match poly.len() {
        1 => {}
        2 => roots.push(-&poly[1]),
        _ => roots.extend(aberth(&poly, prec)?),
    }
    Ok(roots)
}

fn aberth(poly: &[Complex], prec: u32) -> Result<Vec<Complex>> {
    let work = prec + GUARD_BITS;
    let poly: Vec<Complex> = poly.iter().map(|c| c.with_prec(work)).collect();
    let deriv: Vec<Complex> = {
        let deg = poly.len() - 1;
        poly[..deg].iter().enumerate().map(|(i, c)| c.scale_i64((deg - i) as i64)).collect()
    };
    let degree = poly.len() - 1;
    let eps = 2f64.powi(-(prec as i32) + 4);
    let abs_coeffs: Vec<f64> = poly.iter().map(Complex::norm_f64).collect();

    // geometric mean of the root moduli
    let radius = abs_coeffs[degree].powf(1.0 / degree as f64).max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut z: Vec<Complex> = (0..degree)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / degree as f64 + 0.4 + rng.gen_range(0.0..0.1);
            let r = radius * (1.0 + rng.gen_range(-0.05..0.05));
            Complex::from_f64(work, r * theta.cos(), r * theta.sin())
        })
        .collect();

    let mut done = vec![false; degree];
    for _ in 0..MAX_ROOT_ITERATIONS {
        let mut all_done = true;
        for j in 0..degree {
            if done[j] {
                continue;
            }
            let p = horner(&poly, &z[j]);
            let bound = horner_abs(&abs_coeffs, z[j].norm_f64());
            if p.norm_f64() <= eps * bound {
                done[j] = true;
                continue;
            }
            let dp = horner(&deriv, &z[j]);
            let Some(ratio) = p.checked_div(&dp) else {
                // stationary point: nudge off it
                z[j] = &z[j] + &Complex::from_f64(work, radius * 1e-3, radius * 1e-3);
                all_done = false;
                continue;
            };
            let mut repulsion = Complex::zero(work);
            for k in 0..degree {
                if k != j {
                    if let Some(r) = (&z[j] - &z[k]).recip() {
                        repulsion = &repulsion + &r;
                    }
                }
            }
            let denom = &Complex::one(work) - &(&ratio * &repulsion);
            let step = ratio.checked_div(&denom).unwrap_or(ratio);
            z[j] = &z[j] - &step;
            if step.norm_f64() <= eps * z[j].norm_f64() {
                done[j] = true;
            } else {
                all_done = false;
            }
        }
        if all_done && done.iter().all(|&d| d) {
            return Ok(z.into_iter().map(|r| r.with_prec(prec)).collect());
        }
    }
    Err(Error::NonConvergence { iterations: MAX_ROOT_ITERATIONS })
}

fn horner(poly: &[Complex], z: &Complex) -> Complex {
    poly[1..].iter().fold(poly[0].clone(), |acc, c| &(&acc * z) + c)
}

fn horner_abs(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs[1..].iter().fold(abs_coeffs[0], |acc, c| acc * r + c)
}

/// Expands `prod (z - r_i)` into monic descending coefficients.
pub fn poly_from_roots(roots: &[Complex], prec: u32) -> Vec<Complex> {
    let mut coeffs = vec![Complex::one(prec)];
    for r in roots {
        let mut next = coeffs.clone();
        next.push(Complex::zero(prec));
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] - &(c * r);
        }
        coeffs = next;
    }
    coeffs
}
