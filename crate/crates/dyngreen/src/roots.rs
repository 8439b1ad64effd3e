//! Complex root finding via the Aberth–Ehrlich simultaneous iteration.
//!
//! Dense univariate polynomials, coefficients leading-first. Degrees here
//! stay modest (≤ 64 across the crate), so the O(n²) sweep is plenty fast;
//! accuracy is what matters, hence the final per-root Newton polish against
//! the original coefficients.

use crate::forms::{rat_to_f64, Rat};
use crate::{Error, Result};
use num_complex::Complex64;

/// Evaluate a polynomial (leading-first coefficients) by Horner's rule.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs {
        acc = acc * z + c;
    }
    acc
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (n - i) as f64)
        .collect()
}

/// All complex roots of the polynomial with the given leading-first
/// coefficients. Exactly-zero leading coefficients are stripped (the caller
/// sees the drop in the returned count); trailing zeros yield zero roots.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let lead = coeffs
        .iter()
        .position(|c| c.norm() != 0.0)
        .ok_or_else(|| Error::validation("root finding on the zero polynomial"))?;
    let mut cs: Vec<Complex64> = coeffs[lead..].to_vec();
    let mut out = Vec::new();
    while cs.len() > 1 && cs.last().unwrap().norm() == 0.0 {
        out.push(Complex64::new(0.0, 0.0));
        cs.pop();
    }
    let n = cs.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    // Normalize to a monic-scale problem for conditioning.
    let scale = cs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    for c in cs.iter_mut() {
        *c /= scale;
    }
    let a0 = cs[0];
    match n {
        1 => out.push(-cs[1] / a0),
        2 => {
            let (b, c) = (cs[1] / a0, cs[2] / a0);
            let disc = (b * b - 4.0 * c).sqrt();
            // The numerically stable branch: avoid cancellation in −b ± √disc.
            let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) / 2.0 } else { -(b - disc) / 2.0 };
            if q.norm() == 0.0 {
                out.push(Complex64::new(0.0, 0.0));
                out.push(-b);
            } else {
                out.push(q);
                out.push(c / q);
            }
        }
        _ => out.extend(aberth(&cs)?),
    }
    // Newton polish on the working coefficients.
    let deriv = derivative(&cs);
    let start = out.len() - n;
    for z in out[start..].iter_mut() {
        for _ in 0..3 {
            let dp = horner(&deriv, *z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = horner(&cs, *z) / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *z -= step;
        }
    }
    Ok(out)
}

fn aberth(cs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = cs.len() - 1;
    let deriv = derivative(cs);
    // Cauchy-style inclusion radius for the initial circle.
    let a0 = cs[0].norm();
    let radius = 1.0 + cs[1..].iter().map(|c| c.norm() / a0).fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / n as f64 + 0.83;
            0.65 * radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    let tol = 1e-13;
    for _ in 0..400 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let pz = horner(cs, z[k]);
            let dpz = horner(&deriv, z[k]);
            if dpz.norm() == 0.0 {
                z[k] += Complex64::new(1e-8, 1e-8);
                worst = f64::INFINITY;
                continue;
            }
            let w = pz / dpz;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    s += (z[k] - zj).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[k] -= step;
            let rel = step.norm() / z[k].norm().max(1.0);
            worst = worst.max(rel);
        }
        if worst < tol {
            return Ok(z);
        }
    }
    // Multiple roots converge only linearly; accept clusters whose residuals
    // are consistent with a genuine multiple root, otherwise report failure.
    let ok = z.iter().all(|&zk| {
        let denom = zk.norm().max(1.0).powi(n as i32);
        horner(cs, zk).norm() / denom < 1e-7
    });
    if ok {
        Ok(z)
    } else {
        Err(Error::property("Aberth iteration failed to converge"))
    }
}

/// Roots of a polynomial with exact rational coefficients.
pub fn roots_rat(coeffs: &[Rat]) -> Result<Vec<Complex64>> {
    let cs: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(rat_to_f64(c), 0.0)).collect();
    roots(&cs)
}
