//! Discriminant sums and the explicit lower-bound machinery.
//!
//! The object of interest is the g-discriminant sum
//! D = Σ_{i≠j} g_φ(z_i, z_j) over a finite configuration. This module
//! evaluates D with per-point height caching, the classical inequalities it
//! is compared against (Mahler's N^N·M(f)^{2N−2} ≥ |Disc f|, Hadamard's
//! determinant bound, the homogeneous Vandermonde identity), and the two
//! explicit right-hand sides
//!
//! ```text
//! technical:  r(F)N² − ε_K·N log N − 2 log(R_up)·αN − r(F)(1+α)N
//! corollary:  −ε_K·N log N − (2 log R_up + r(F))·αN
//! ```
//!
//! for N = t·d^k ∈ Σ, together with an unconditional constant C with
//! D ≥ −C·N log N for every N ≥ 2.

use crate::basis::{alpha, SigmaIndex};
use crate::dynheight::{hhat, hhat_complex, r_of};
use crate::forms::{
    det_rational, rat_to_f64, sylvester_resultant, wedge, wedge_complex, Lift, MapPair, Rat,
};
use crate::places::{log_abs, val_rat, Place};
use crate::roots::roots;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{Signed, Zero};

/// A dense univariate polynomial, leading coefficient first and nonzero.
/// Exact rational coefficients keep an exact channel for discriminants;
/// float work always goes through the complex view.
#[derive(Clone, Debug)]
pub struct UnivariatePoly {
    exact: Option<Vec<Rat>>,
    approx: Vec<Complex64>,
}

/// Discriminant of a [`UnivariatePoly`]: exact when the input was exact.
#[derive(Clone, Debug, PartialEq)]
pub enum DiscValue {
    Exact(Rat),
    Approx(Complex64),
}

impl DiscValue {
    pub fn abs_f64(&self) -> f64 {
        match self {
            DiscValue::Exact(r) => {
                if r.is_zero() {
                    0.0
                } else {
                    rat_to_f64(&r.abs())
                }
            }
            DiscValue::Approx(c) => c.norm(),
        }
    }
}

impl UnivariatePoly {
    pub fn from_rat(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].is_zero() {
            return Err(Error::validation("leading coefficient must be nonzero"));
        }
        let approx = coeffs
            .iter()
            .map(|c| Complex64::new(rat_to_f64(c), 0.0))
            .collect();
        Ok(UnivariatePoly { exact: Some(coeffs), approx })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        UnivariatePoly::from_rat(coeffs.iter().map(|&c| crate::forms::rat_int(c)).collect())
    }

    pub fn from_complex(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].norm() == 0.0 {
            return Err(Error::validation("leading coefficient must be nonzero"));
        }
        Ok(UnivariatePoly { exact: None, approx: coeffs })
    }

    pub fn degree(&self) -> usize {
        self.approx.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

/// Mahler measure M(f) = |a₀|·∏ max(1, |α_j|) from the computed roots.
pub fn mahler_measure(f: &UnivariatePoly) -> Result<f64> {
    if f.degree() == 0 {
        return Ok(f.approx[0].norm());
    }
    let rs = roots(&f.approx)?;
    let mut m = f.approx[0].norm();
    for r in rs {
        m *= r.norm().max(1.0);
    }
    Ok(m)
}

/// Disc(f) = a₀^{2N−2}·∏_{i<j}(α_i−α_j)², computed exactly for exact inputs
/// as (−1)^{N(N−1)/2}·Res(f, f′)/a₀ and from the roots otherwise.
pub fn discriminant(f: &UnivariatePoly) -> Result<DiscValue> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::validation("discriminant needs degree at least 2"));
    }
    if let Some(cs) = &f.exact {
        let deriv: Vec<Rat> = cs[..n]
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer(((n - i) as i64).into()))
            .collect();
        let res = sylvester_resultant(cs, n, &deriv, n - 1);
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let disc = res / &cs[0] * Rat::from_integer(sign.into());
        return Ok(DiscValue::Exact(disc));
    }
    let rs = roots(&f.approx)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            let d = rs[i] - rs[j];
            acc *= d * d;
        }
    }
    let a0 = f.approx[0];
    Ok(DiscValue::Approx(a0.powi(2 * n as i32 - 2) * acc))
}

/// Margin of Mahler's inequality: N^N·M(f)^{2N−2} − |Disc(f)| (≥ 0 up to
/// root-finder accuracy; exactly 0 for x²−1).
pub fn mahler_inequality_check(f: &UnivariatePoly) -> Result<f64> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::validation("Mahler inequality needs degree at least 2"));
    }
    let m = mahler_measure(f)?;
    let lhs = (n as f64).powi(n as i32) * m.powi(2 * n as i32 - 2);
    Ok(lhs - discriminant(f)?.abs_f64())
}

/// A point of ℙ¹(ℂ) in affine coordinates, with the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum P1C {
    Finite(Complex64),
    Infinity,
}

fn log_plus(z: Complex64) -> f64 {
    z.norm().ln().max(0.0)
}

/// The elementary two-point kernel −log|z−w| + log⁺|z| + log⁺|w|, extended
/// to ∞ by its limit cases. Always ≥ −log 2; coincident points rejected.
pub fn naive_green(z: P1C, w: P1C) -> Result<f64> {
    match (z, w) {
        (P1C::Infinity, P1C::Infinity) => Err(Error::validation("naive_green at equal points")),
        (P1C::Infinity, P1C::Finite(w)) => Ok(log_plus(w)),
        (P1C::Finite(z), P1C::Infinity) => Ok(log_plus(z)),
        (P1C::Finite(z), P1C::Finite(w)) => {
            if z == w {
                return Err(Error::validation("naive_green at equal points"));
            }
            Ok(-(z - w).norm().ln() + log_plus(z) + log_plus(w))
        }
    }
}

/// Hadamard margin ∏_i ‖row_i‖ − |det M|_v with the L² row norm at the
/// archimedean place and the sup (max |·|_p) row norm at finite places,
/// where the finite case runs on exact valuations.
pub fn hadamard_check(m: &[Vec<Rat>], v: &Place) -> Result<f64> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::validation("hadamard_check needs a square matrix"));
    }
    let det = det_rational(m);
    match v {
        Place::Archimedean => {
            let mut prod = 1.0f64;
            for row in m {
                let s: f64 = row.iter().map(|c| rat_to_f64(c).powi(2)).sum();
                prod *= s.sqrt();
            }
            let d = if det.is_zero() { 0.0 } else { rat_to_f64(&det.abs()) };
            Ok(prod - d)
        }
        Place::Finite(p) => {
            let lnp = (*p as f64).ln();
            let mut sum_min: i64 = 0;
            for row in m {
                let vmin = row
                    .iter()
                    .filter(|c| !c.is_zero())
                    .map(|c| val_rat(c, *p))
                    .min();
                match vmin {
                    Some(vm) => sum_min += vm,
                    None => return Ok(0.0), // a zero row: both sides vanish
                }
            }
            let prod = (-(sum_min as f64) * lnp).exp();
            if det.is_zero() {
                return Ok(prod);
            }
            let vd = val_rat(&det, *p);
            // Ultrametric expansion gives v(det) ≥ Σ row minima exactly.
            debug_assert!(vd >= sum_min);
            Ok(prod - (-(vd as f64) * lnp).exp())
        }
    }
}

/// Exact check of |∏_{i≠j}(x_i y_j − x_j y_i)| = |det S|² for the
/// homogeneous Vandermonde S with rows (x_i^{n−1}, x_i^{n−2}y_i, …, y_i^{n−1});
/// returns the (identically zero) absolute residual.
pub fn vandermonde_check(lifts: &[Lift]) -> Result<f64> {
    let n = lifts.len();
    if n < 2 {
        return Err(Error::validation("need at least two lifts"));
    }
    let mut prod = Rat::from_integer(1.into());
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = wedge(&lifts[i], &lifts[j]);
            if w.is_zero() {
                return Err(Error::validation("projectively coincident lifts"));
            }
            prod *= w;
        }
    }
    let rows: Vec<Vec<Rat>> = lifts
        .iter()
        .map(|z| {
            (0..n)
                .map(|j| {
                    crate::forms::rat_pow(&z.z0, (n - 1 - j) as u64)
                        * crate::forms::rat_pow(&z.z1, j as u64)
                })
                .collect()
        })
        .collect();
    let det = det_rational(&rows);
    let resid = (prod.abs() - (&det * &det).abs()).abs();
    if resid.is_zero() {
        Ok(0.0)
    } else {
        Ok(rat_to_f64(&resid))
    }
}

/// Σ_{i≠j} g_φ(z_i, z_j) over pairwise-distinct rational points: per-point
/// heights are computed once (at tol/2, so the accumulated radius stays
/// ≤ N(N−1)·tol) and the wedge terms added pair by pair in index order.
pub fn dsum(f: &MapPair, points: &[Lift], v: &Place, tol: f64) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::validation("dsum needs at least two points"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if wedge(&points[i], &points[j]).is_zero() {
                return Err(Error::validation(format!(
                    "points {i} and {j} coincide; the sum diverges"
                )));
            }
        }
    }
    let heights: Vec<f64> = points
        .iter()
        .map(|z| hhat(f, z, v, tol / 2.0).map(|h| h.value))
        .collect::<Result<_>>()?;
    let mut wedge_part = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let w = wedge(&points[i], &points[j]);
            wedge_part -= 2.0 * log_abs(&w, v)?.value;
        }
    }
    let hsum: f64 = heights.iter().sum();
    let nf = n as f64;
    Ok(wedge_part + 2.0 * (nf - 1.0) * hsum - nf * (nf - 1.0) * r_of(f, v))
}

/// Archimedean discriminant sum over complex lifts (the optimizer's domain).
pub fn dsum_complex(f: &MapPair, points: &[(Complex64, Complex64)], tol: f64) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::validation("dsum needs at least two points"));
    }
    let heights: Vec<f64> = points
        .iter()
        .map(|z| hhat_complex(f, *z, tol / 2.0).map(|h| h.value))
        .collect::<Result<_>>()?;
    let mut wedge_part = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let w = wedge_complex(points[i], points[j]).norm();
            if w == 0.0 {
                return Err(Error::validation(format!(
                    "points {i} and {j} coincide; the sum diverges"
                )));
            }
            wedge_part -= 2.0 * w.ln();
        }
    }
    let hsum: f64 = heights.iter().sum();
    let nf = n as f64;
    Ok(wedge_part + 2.0 * (nf - 1.0) * hsum - nf * (nf - 1.0) * r_of(f, &Place::Archimedean))
}

/// r(F)N² − ε_K·N log N − 2 log(R_up)·αN − r(F)(1+α)N.
pub fn technical_rhs(f: &MapPair, v: &Place, idx: &SigmaIndex, r_up: f64) -> f64 {
    let n = idx.n as f64;
    let a = alpha(idx) as f64;
    let r = r_of(f, v);
    let eps = v.epsilon_k();
    r * n * n - eps * n * n.ln() - 2.0 * r_up.ln() * a * n - r * (1.0 + a) * n
}

/// −ε_K·N log N − (2 log R_up + r(F))·αN.
pub fn corollary_rhs(f: &MapPair, v: &Place, idx: &SigmaIndex, r_up: f64) -> f64 {
    let n = idx.n as f64;
    let a = alpha(idx) as f64;
    let r = r_of(f, v);
    let eps = v.epsilon_k();
    -eps * n * n.ln() - (2.0 * r_up.ln() + r) * a * n
}

/// A place-independent-in-N constant C ≥ 0 with D_φ ≥ −C·N log N for every
/// configuration of N ≥ 2 distinct points. Assembled from the corollary over
/// Σ (α ≤ (d−1)(log_d N + 2)), doubled through the nearest-Σ gap bound, and
/// patched on 2 ≤ N < 2d with the per-pair Green's floor
/// −ε_K log 2 − 2 log R_up − r(F).
pub fn effective_c(f: &MapPair, v: &Place) -> Result<f64> {
    let d = f.d() as f64;
    let eb = crate::dynheight::escape_radius_bound(f, v)?;
    let r = r_of(f, v);
    let eps = v.epsilon_k();
    let drive = (2.0 * eb.log_r_up + r).max(0.0);
    let c_prime = eps + drive * (d - 1.0) * (1.0 / d.ln() + 2.0 / (2.0 * d).ln());
    let g_floor = -eps * 2f64.ln() - 2.0 * eb.log_r_up - r;
    let mut c_small = 0.0f64;
    for n in 2..(2 * f.d() as u64) {
        let need = (n as f64 - 1.0) * (-g_floor).max(0.0) / (n as f64).ln();
        c_small = c_small.max(need);
    }
    Ok((2.0 * c_prime).max(c_small))
}

/// Everything a bound evaluation produced, in one row.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub place: Place,
    pub r_f: f64,
    pub r_up: f64,
    pub alpha: u64,
    pub epsilon_k: f64,
    pub rhs_technical: f64,
    pub rhs_corollary: f64,
    pub c_effective: f64,
    pub observed_sum: f64,
}

/// Evaluate both right-hand sides and the observed discriminant sum for a
/// configuration whose size is the index's N.
pub fn bound_report(
    f: &MapPair,
    v: &Place,
    idx: &SigmaIndex,
    points: &[Lift],
    tol: f64,
) -> Result<BoundReport> {
    if points.len() as u64 != idx.n {
        return Err(Error::validation(format!(
            "configuration has {} points but the index says N = {}",
            points.len(),
            idx.n
        )));
    }
    let eb = crate::dynheight::escape_radius_bound(f, v)?;
    Ok(BoundReport {
        n: idx.n,
        place: *v,
        r_f: r_of(f, v),
        r_up: eb.r_up,
        alpha: alpha(idx),
        epsilon_k: v.epsilon_k(),
        rhs_technical: technical_rhs(f, v, idx, eb.r_up),
        rhs_corollary: corollary_rhs(f, v, idx, eb.r_up),
        c_effective: effective_c(f, v)?,
        observed_sum: dsum(f, points, v, tol)?,
    })
}
