//! Local dynamical heights and Green's functions, one place at a time.
//!
//! For a pair F = (F₁,F₂) of degree-d forms with Res(F) ≠ 0, the homogeneous
//! dynamical height at a place v is
//!
//! ```text
//! Ĥ_F(z) = lim d^{−n} log‖F^{(n)}(z)‖_v
//!        = log‖z‖ + Σ_{n≥0} d^{−(n+1)} log‖F(ẑ_n)‖,   ẑ_n = F^{(n)}(z)/‖·‖,
//! ```
//!
//! where ‖·‖ is the sup norm. The telescoping series converges geometrically:
//! every term is bounded on the unit sphere, from above by a coefficient-sum
//! bound and from below through the cofactor identities (‖F(u)‖ ≥
//! |Res|_v / (2^{ε_K}·C_g) when ‖u‖ = 1), so each truncation carries a
//! certified tail radius. Archimedean places iterate renormalized doubles;
//! p-adic places run an exact valuation recursion modulo a power of p sized
//! once, up front, so every step valuation is resolved.
//!
//! On top of Ĥ sit the two-point Green's function
//! g(z,w) = −log|z∧w|_v + Ĥ(z̃) + Ĥ(w̃) − r(F) with r(F) =
//! log|Res F|_v / (d(d−1)), filled-Julia membership, height-normalized lift
//! selection, and certified escape radii.

use crate::forms::{log_abs_rat, rat_to_f64, wedge, wedge_complex, Lift, MapPair, Rat};
use crate::places::{log_abs, val_bigint, val_rat, Place};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A local height value with a certified error radius: the true value lies
/// in [value − err, value + err]. At finite places with good reduction the
/// recursion terminates exactly and err = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeightValue {
    pub value: f64,
    pub err: f64,
    pub place: Place,
    /// Telescoping terms actually evaluated.
    pub iters: u32,
}

/// Two-point Green's function value; `value` is +∞ exactly when the two
/// projective points coincide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenValue {
    pub value: f64,
    pub err: f64,
}

impl GreenValue {
    pub fn is_infinite(&self) -> bool {
        self.value == f64::INFINITY
    }
}

/// Certified escape radius: every z with ‖z‖_v > r_up satisfies
/// ‖F(z)‖_v ≥ 2‖z‖_v, so the filled Julia set sits inside the closed ball of
/// radius r_up. c_g is the cofactor sup-sphere bound that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeBound {
    pub r_up: f64,
    pub c_g: f64,
    pub log_r_up: f64,
}

/// Classification of a lift against the filled Julia set K_F = {Ĥ_F ≤ 0}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JuliaClass {
    In,
    Out,
    BoundaryWithinTol,
}

/// r(F) = log|Res(F)|_v / (d(d−1)).
pub fn r_of(f: &MapPair, v: &Place) -> f64 {
    let d = f.d() as f64;
    log_abs(f.resultant(), v).expect("nonzero resultant").value / (d * (d - 1.0))
}

// ---- Sphere bounds shared by both place kinds ----

/// log C_g at the archimedean place: coefficient-sum sup-sphere bound over
/// the four cofactor forms.
fn log_cg_arch(f: &MapPair) -> Result<f64> {
    Ok(f.cofactors()?.log_sup_bound_arch())
}

/// log C_g at a finite place: max_coeff |c|_p = p^{−min valuation}.
fn log_cg_finite(f: &MapPair, p: u64) -> Result<f64> {
    let vmin = f
        .cofactors()?
        .all_coeffs()
        .filter(|c| !c.is_zero())
        .map(|c| val_rat(c, p))
        .min()
        .expect("cofactors are not all zero");
    Ok(-(vmin as f64) * (p as f64).ln())
}

/// B with |log‖F(u)‖_v| ≤ B on the unit sup-sphere: upper bound from
/// coefficient sums, lower bound from the cofactor identities.
pub(crate) fn sphere_log_bound(f: &MapPair, v: &Place) -> Result<f64> {
    let (log_cmax, log_cg) = match v {
        Place::Archimedean => (
            f.f1().log_abs_coeff_sum().max(f.f2().log_abs_coeff_sum()),
            log_cg_arch(f)?,
        ),
        Place::Finite(p) => {
            let vmin = f
                .f1()
                .coeffs()
                .iter()
                .chain(f.f2().coeffs())
                .filter(|c| !c.is_zero())
                .map(|c| val_rat(c, *p))
                .min()
                .expect("nonzero forms");
            (-(vmin as f64) * (*p as f64).ln(), log_cg_finite(f, *p)?)
        }
    };
    let log_lower = log_abs(f.resultant(), v)?.value - v.epsilon_k() * 2f64.ln() - log_cg;
    Ok(log_cmax.abs().max(log_lower.abs()))
}

// ---- Archimedean heights ----

const MAX_HEIGHT_ITERS: u32 = 4000;

/// Core renormalized iteration from a unit-sup-norm complex start; returns
/// (Σ d^{−(n+1)} log‖F(ẑ_n)‖, certified tail, terms used).
fn arch_tail_sum(f: &MapPair, mut u: (Complex64, Complex64), tol: f64) -> Result<(f64, f64, u32)> {
    let d = f.d() as f64;
    let b = sphere_log_bound(f, &Place::Archimedean)?;
    let mut sum = 0.0f64;
    let mut weight = 1.0 / d;
    let mut n: u32 = 0;
    loop {
        let w = f.eval_complex(u);
        let s = w.0.norm().max(w.1.norm());
        if !s.is_finite() || s == 0.0 {
            return Err(Error::property(
                "archimedean height iteration left the representable range",
            ));
        }
        sum += weight * s.ln();
        u = (w.0 / s, w.1 / s);
        n += 1;
        let tail = b * weight / (d - 1.0);
        if tail <= 0.45 * tol {
            let slack = 1e-14 * (n as f64 + 2.0);
            return Ok((sum, tail + slack, n));
        }
        weight /= d;
        if n >= MAX_HEIGHT_ITERS {
            return Err(Error::resource(format!(
                "height iteration did not certify tolerance {tol:e} within {MAX_HEIGHT_ITERS} terms"
            )));
        }
    }
}

fn hhat_arch(f: &MapPair, z: &Lift, tol: f64) -> Result<HeightValue> {
    // Exact dyadic prescale so the float conversion cannot overflow.
    let big = z.z0.clone().abs().max(z.z1.clone().abs());
    let k = (log_abs_rat(&big) / std::f64::consts::LN_2).round() as i64;
    let scale = if k >= 0 {
        Rat::new(BigInt::one(), BigInt::one() << (k as usize))
    } else {
        Rat::from_integer(BigInt::one() << ((-k) as usize))
    };
    let z0 = &z.z0 * &scale;
    let z1 = &z.z1 * &scale;
    let (f0, f1) = (rat_to_f64(&z0), rat_to_f64(&z1));
    let s = f0.abs().max(f1.abs());
    debug_assert!(s.is_finite() && s > 0.0);
    let u = (
        Complex64::new(f0 / s, 0.0),
        Complex64::new(f1 / s, 0.0),
    );
    let (sum, tail, iters) = arch_tail_sum(f, u, tol)?;
    // Ĥ(z) = Ĥ(scaled z) − log|scale|  =  [log s + Σ…] + k·log 2.
    let value = s.ln() + sum + (k as f64) * std::f64::consts::LN_2;
    Ok(HeightValue { value, err: tail, place: Place::Archimedean, iters })
}

/// Archimedean height of an arbitrary nonzero complex lift (used by the
/// transfinite-diameter optimizer, whose configurations are not rational).
pub fn hhat_complex(f: &MapPair, z: (Complex64, Complex64), tol: f64) -> Result<HeightValue> {
    if tol <= 0.0 {
        return Err(Error::validation("tolerance must be positive"));
    }
    let s = z.0.norm().max(z.1.norm());
    if !s.is_finite() || s == 0.0 {
        return Err(Error::validation("complex lift must be nonzero and finite"));
    }
    let u = (z.0 / s, z.1 / s);
    let (sum, tail, iters) = arch_tail_sum(f, u, tol)?;
    Ok(HeightValue { value: s.ln() + sum, err: tail, place: Place::Archimedean, iters })
}

// ---- p-adic heights ----

fn eval_form_mod(coeffs: &[BigInt], u0: &BigInt, u1: &BigInt, modulus: &BigInt) -> BigInt {
    let mut acc = coeffs[0].clone();
    let mut u1p = BigInt::one();
    for c in &coeffs[1..] {
        u1p = (&u1p * u1).mod_floor(modulus);
        acc = (&acc * u0 + c * &u1p).mod_floor(modulus);
    }
    acc.mod_floor(modulus)
}

fn hhat_padic(f: &MapPair, z: &Lift, p: u64, tol: f64) -> Result<HeightValue> {
    let d = f.d();
    let c = f.content_scalar();
    let fnorm = f.normalize_integer();
    let res_int = fnorm.resultant().to_integer();
    let cap_v = val_bigint(&res_int, p); // V = v_p(Res of the normalization)
    let v_c = val_rat(&c, p);

    // Integer start with min valuation zero: u = t·z / p^e.
    let t = z.z0.denom().lcm(z.z1.denom());
    let a0 = (&z.z0 * Rat::from_integer(t.clone())).to_integer();
    let a1 = (&z.z1 * Rat::from_integer(t.clone())).to_integer();
    let e = match (a0.is_zero(), a1.is_zero()) {
        (false, false) => val_bigint(&a0, p).min(val_bigint(&a1, p)),
        (false, true) => val_bigint(&a0, p),
        (true, false) => val_bigint(&a1, p),
        (true, true) => unreachable!("lift is nonzero"),
    };
    let pe = crate::forms::big_pow(&BigInt::from(p), e as u64);
    let mut u0 = &a0 / &pe;
    let mut u1 = &a1 / &pe;

    // Exact offsets, in units of log p: scaling z and rescaling F to Fnorm.
    let mut exact = Rat::from_integer(BigInt::from(val_bigint(&t, p) - e))
        + Rat::new(BigInt::from(v_c), BigInt::from(d as i64 - 1));

    let ln_p = (p as f64).ln();
    if cap_v == 0 {
        // Good reduction: every telescoping term vanishes exactly.
        let value = rat_to_f64(&exact) * ln_p;
        return Ok(HeightValue { value, err: 0.0, place: Place::Finite(p), iters: 0 });
    }

    // Truncation depth: remaining terms each lie in [−V·log p / d^{n+1}, 0].
    let df = d as f64;
    let target = 0.9 * tol;
    let mut n_stop: u32 = 1;
    while (cap_v as f64) * ln_p / (2.0 * df.powi(n_stop as i32 + 1) * (df - 1.0)) > target {
        n_stop += 1;
        if n_stop > MAX_HEIGHT_ITERS {
            return Err(Error::resource(format!(
                "p-adic height did not certify tolerance {tol:e} within {MAX_HEIGHT_ITERS} terms"
            )));
        }
    }

    // One modulus sized up front: each of the n_stop steps burns at most V
    // digits of precision, and V+1 surviving digits resolve any valuation ≤ V.
    let m_digits = (n_stop as u64 + 1) * cap_v as u64 + 2;
    let mut modulus = crate::forms::big_pow(&BigInt::from(p), m_digits);
    u0 = u0.mod_floor(&modulus);
    u1 = u1.mod_floor(&modulus);

    let f1c = fnorm.f1().integer_coeffs().expect("normalized");
    let f2c = fnorm.f2().integer_coeffs().expect("normalized");
    let pb = BigInt::from(p);
    let mut series = Rat::zero();
    let mut dpow = Rat::from_integer(BigInt::from(d));
    for _ in 0..n_stop {
        let w0 = eval_form_mod(&f1c, &u0, &u1, &modulus);
        let w1 = eval_form_mod(&f2c, &u0, &u1, &modulus);
        let resolve = |w: &BigInt| -> i64 {
            if w.is_zero() {
                i64::MAX // ≡ 0 to full precision; the other coordinate decides
            } else {
                val_bigint(w, p)
            }
        };
        let m = resolve(&w0).min(resolve(&w1));
        if m > cap_v {
            return Err(Error::property(
                "p-adic step valuation exceeded the resultant bound — invariant broken",
            ));
        }
        series += Rat::new(BigInt::from(m), dpow.numer().clone());
        // Divide out p^m and drop the spent precision.
        let pm = crate::forms::big_pow(&pb, m as u64);
        modulus = &modulus / &pm;
        u0 = (&w0 / &pm).mod_floor(&modulus);
        u1 = (&w1 / &pm).mod_floor(&modulus);
        dpow *= Rat::from_integer(BigInt::from(d));
    }

    exact -= series;
    let half = (cap_v as f64) * ln_p / (2.0 * df.powi(n_stop as i32 + 1) * (df - 1.0));
    let value = rat_to_f64(&exact) * ln_p - half;
    let err = half + 1e-15 * (1.0 + value.abs());
    Ok(HeightValue { value, err, place: Place::Finite(p), iters: n_stop })
}

/// Homogeneous dynamical height Ĥ_F(z) at the place v, certified to within
/// `tol`: the reported err satisfies |value − Ĥ_F(z)| ≤ err ≤ tol.
pub fn hhat(f: &MapPair, z: &Lift, v: &Place, tol: f64) -> Result<HeightValue> {
    if tol <= 0.0 {
        return Err(Error::validation("tolerance must be positive"));
    }
    if z.z0.is_zero() && z.z1.is_zero() {
        return Err(Error::validation("height of the zero lift"));
    }
    match v {
        Place::Archimedean => hhat_arch(f, z, tol),
        Place::Finite(p) => hhat_padic(f, z, *p, tol),
    }
}

// ---- Green's function ----

/// g_φ(z,w) at v from arbitrary lifts of the two points (the combination is
/// invariant under rescaling either lift, and under F → γF). Coincident
/// points return the +∞ marker.
pub fn green(f: &MapPair, z: &Lift, w: &Lift, v: &Place, tol: f64) -> Result<GreenValue> {
    let wz = wedge(z, w);
    if wz.is_zero() {
        return Ok(GreenValue { value: f64::INFINITY, err: 0.0 });
    }
    let hz = hhat(f, z, v, tol)?;
    let hw = hhat(f, w, v, tol)?;
    let lw = log_abs(&wz, v)?.value;
    Ok(GreenValue {
        value: -lw + hz.value + hw.value - r_of(f, v),
        err: hz.err + hw.err + 1e-15 * (1.0 + lw.abs()),
    })
}

/// Archimedean Green's function on complex lifts.
pub fn green_complex(
    f: &MapPair,
    z: (Complex64, Complex64),
    w: (Complex64, Complex64),
    tol: f64,
) -> Result<GreenValue> {
    let wz = wedge_complex(z, w).norm();
    if wz == 0.0 {
        return Ok(GreenValue { value: f64::INFINITY, err: 0.0 });
    }
    let hz = hhat_complex(f, z, tol)?;
    let hw = hhat_complex(f, w, tol)?;
    Ok(GreenValue {
        value: -wz.ln() + hz.value + hw.value - r_of(f, &Place::Archimedean),
        err: hz.err + hw.err + 1e-14,
    })
}

// ---- Filled Julia membership, normalized lifts, escape radii ----

/// Which side of K_F = {Ĥ_F ≤ 0} the lift sits on; Boundary when
/// |Ĥ| ≤ tol.
pub fn filled_julia_member(f: &MapPair, z: &Lift, v: &Place, tol: f64) -> Result<JuliaClass> {
    let h = hhat(f, z, v, tol)?;
    Ok(if h.value.abs() <= tol {
        JuliaClass::BoundaryWithinTol
    } else if h.value > 0.0 {
        JuliaClass::Out
    } else {
        JuliaClass::In
    })
}

/// A lift of the projective class of z with height pinned near zero: exactly
/// (to float accuracy) at the archimedean place, and the closest value in
/// the discrete window (−log p, 0] at a finite place.
pub fn normalize_lift(f: &MapPair, z: &Lift, v: &Place, eps: f64) -> Result<Lift> {
    if eps <= 0.0 {
        return Err(Error::validation("eps must be positive"));
    }
    let h = hhat(f, z, v, eps.min(1e-10))?;
    match v {
        Place::Archimedean => {
            let c = BigRational::from_float((-h.value).exp())
                .ok_or_else(|| Error::property("height out of floating range"))?;
            if c.is_zero() {
                return Err(Error::property("height too large to renormalize in doubles"));
            }
            z.scale(&c)
        }
        Place::Finite(p) => {
            let x = h.value / (*p as f64).ln();
            let m = -((x - 1e-12).ceil()) as i64;
            // Scaling by p^{−m} shifts Ĥ by +m·log p into (−log p, 0].
            let c = if m >= 0 {
                Rat::new(BigInt::one(), crate::forms::big_pow(&BigInt::from(*p), m as u64))
            } else {
                Rat::from_integer(crate::forms::big_pow(&BigInt::from(*p), (-m) as u64))
            };
            z.scale(&c)
        }
    }
}

/// Certified escape radius R_up = (2^{ε_K+1}·C_g / |Res F|_v)^{1/(d−1)}
/// (with R_up = 1 exactly under good reduction at a finite place): any z
/// with ‖z‖_v > R_up has ‖F(z)‖_v ≥ 2‖z‖_v and so escapes to infinity.
pub fn escape_radius_bound(f: &MapPair, v: &Place) -> Result<EscapeBound> {
    let d = f.d() as f64;
    let (log_cg, good) = match v {
        Place::Archimedean => (log_cg_arch(f)?, false),
        Place::Finite(p) => {
            let fnorm = f.normalize_integer();
            let good = val_bigint(&fnorm.resultant().to_integer(), *p) == 0;
            (log_cg_finite(f, *p)?, good)
        }
    };
    if good {
        return Ok(EscapeBound { r_up: 1.0, c_g: log_cg.exp(), log_r_up: 0.0 });
    }
    let log_res = log_abs(f.resultant(), v)?.value;
    let log_r_up = ((v.epsilon_k() + 1.0) * 2f64.ln() + log_cg - log_res) / (d - 1.0);
    Ok(EscapeBound { r_up: log_r_up.exp(), c_g: log_cg.exp(), log_r_up })
}

/// Sup norm of a rational lift at v, as a natural log (−∞-free: lifts are
/// nonzero).
pub fn log_sup_norm(z: &Lift, v: &Place) -> f64 {
    let l0 = (!z.z0.is_zero()).then(|| log_abs(&z.z0, v).expect("nonzero").value);
    let l1 = (!z.z1.is_zero()).then(|| log_abs(&z.z1, v).expect("nonzero").value);
    match (l0, l1) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("zero lift"),
    }
}
