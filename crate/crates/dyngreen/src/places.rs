//! Places of ℚ: the archimedean absolute value and the p-adic ones.
//!
//! Finite-place computations carry exact valuations alongside their float
//! logs (|x|_p = p^{−v_p(x)}, so log|x|_p = −v_p(x)·log p), and every identity
//! that can be checked on the integers is. The module also houses the
//! number-theoretic plumbing the rest of the crate leans on: deterministic
//! Miller–Rabin for u64, probabilistic Miller–Rabin plus Pollard–Brent rho
//! for big integers (resource-guarded), good-reduction detection, and a
//! product-formula residual Σ_v log|x|_v.

use crate::forms::{log_abs_rat, MapPair, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::fmt;

/// A place of ℚ: the archimedean absolute value or a p-adic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Finite(u64),
}

impl Place {
    /// Finite place for a prime p (primality checked).
    pub fn finite(p: u64) -> Result<Place> {
        if !is_prime_u64(p) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    /// Parse the report syntax: `inf` or `p:<prime>`.
    pub fn parse(s: &str) -> Result<Place> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Place::Archimedean);
        }
        if let Some(rest) = s.strip_prefix("p:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::validation(format!("invalid place {s:?}")))?;
            return Place::finite(p);
        }
        Err(Error::validation(format!(
            "invalid place {s:?} (expected \"inf\" or \"p:<prime>\")"
        )))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite(_))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Archimedean => None,
            Place::Finite(p) => Some(*p),
        }
    }

    /// 1 at the archimedean place, 0 at finite places.
    pub fn epsilon_k(&self) -> f64 {
        match self {
            Place::Archimedean => 1.0,
            Place::Finite(_) => 0.0,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Finite(p) => write!(f, "p:{p}"),
        }
    }
}

/// 1 at the archimedean place, 0 at finite places.
pub fn epsilon_k(v: &Place) -> f64 {
    v.epsilon_k()
}

/// log|x|_v with the exact valuation kept at finite places.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogAbs {
    /// Natural log of |x|_v.
    pub value: f64,
    /// v_p(x) at a finite place; None at the archimedean place.
    pub exact_valuation: Option<i64>,
}

/// log|x|_v for nonzero rational x.
pub fn log_abs(x: &Rat, v: &Place) -> Result<LogAbs> {
    if x.is_zero() {
        return Err(Error::validation("log_abs of zero"));
    }
    match v {
        Place::Archimedean => Ok(LogAbs {
            value: log_abs_rat(x),
            exact_valuation: None,
        }),
        Place::Finite(p) => {
            let val = val_rat(x, *p);
            Ok(LogAbs {
                value: -(val as f64) * (*p as f64).ln(),
                exact_valuation: Some(val),
            })
        }
    }
}

/// p-adic valuation of a nonzero big integer.
pub fn val_bigint(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(x: &Rat, p: u64) -> i64 {
    val_bigint(x.numer(), p) - val_bigint(x.denom(), p)
}

// ---- Primality ----

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the first twelve prime bases decide
/// primality for everything below 3.3·10²⁴).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin for big integers: deterministic in u64 range, otherwise the
/// first 40 prime bases (comfortably below any practical error probability;
/// factorizations are verified by multiplication anyway).
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(u) = n.to_u64() {
        return is_prime_u64(u);
    }
    if !n.is_positive() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n > 1 odd");
    let d = &nm1 >> s;
    'base: for &a in small_primes().iter().take(40) {
        let ab = BigInt::from(a);
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    const LIMIT: usize = 1 << 20;
    let mut sieve = vec![true; LIMIT];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i < LIMIT {
        if sieve[i] {
            let mut j = i * i;
            while j < LIMIT {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
});

/// Primes below 2²⁰, sieved once.
pub fn small_primes() -> &'static [u64] {
    &SMALL_PRIMES
}

// ---- Factorization ----

/// Pollard–Brent rho with a step budget; returns a nontrivial factor of the
/// odd composite n, or None when the budget runs out for this polynomial.
fn pollard_brent(n: &BigInt, c: u32, budget: &mut u64) -> Option<BigInt> {
    let cc = BigInt::from(c);
    let step = |x: &BigInt| (x * x + &cc) % n;
    let mut y = BigInt::from(2u32);
    let mut g = BigInt::one();
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let (mut x, mut ys) = (y.clone(), y.clone());
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k: u64 = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let m = 128.min(r - k);
            for _ in 0..m {
                y = step(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            if *budget < m {
                return None;
            }
            *budget -= m;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if *budget == 0 {
            return None;
        }
    }
    if &g == n {
        // Backtrack one step at a time.
        loop {
            ys = step(&ys);
            let g2 = (&x - &ys).abs().gcd(n);
            if !g2.is_one() {
                return (&g2 != n).then_some(g2);
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
        }
    }
    Some(g)
}

fn factor_rec(n: BigInt, out: &mut Vec<BigInt>, budget: &mut u64) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    for c in 1..24u32 {
        if let Some(f) = pollard_brent(&n, c, budget) {
            let q = &n / &f;
            factor_rec(f, out, budget)?;
            return factor_rec(q, out, budget);
        }
        if *budget == 0 {
            break;
        }
    }
    Err(Error::resource(format!(
        "factorization budget exhausted on a {}-bit composite",
        n.bits()
    )))
}

/// Full factorization of a positive integer as sorted (prime, multiplicity)
/// pairs: trial division by the sieved primes, then Pollard–Brent rho.
pub fn factor_positive(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if !n.is_positive() {
        return Err(Error::validation("factorization needs a positive integer"));
    }
    let mut m = n.clone();
    let mut primes: Vec<BigInt> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            break;
        }
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            primes.push(pb.clone());
            m = q;
        }
    }
    if !m.is_one() {
        let mut budget: u64 = 1 << 24;
        factor_rec(m, &mut primes, &mut budget)?;
    }
    primes.sort();
    let mut grouped: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match grouped.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => grouped.push((p, 1)),
        }
    }
    Ok(grouped)
}

// ---- Reduction ----

/// True iff p does not divide the resultant of the integer normalization.
pub fn good_reduction(f: &MapPair, p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::validation(format!("{p} is not prime")));
    }
    let res = f.normalize_integer().resultant().clone();
    debug_assert!(res.is_integer());
    Ok(val_bigint(&res.to_integer(), p) == 0)
}

/// The primes dividing the resultant of the integer normalization, sorted.
pub fn bad_primes(f: &MapPair) -> Result<Vec<u64>> {
    let res = f.normalize_integer().resultant().abs();
    debug_assert!(res.is_integer());
    let n = res.to_integer();
    let mut out = Vec::new();
    for (p, _) in factor_positive(&n)? {
        let pu = p.to_u64().ok_or_else(|| {
            Error::resource("a bad prime exceeds 64 bits; cannot enumerate it as a machine prime")
        })?;
        out.push(pu);
    }
    Ok(out)
}

/// Σ_v log|x|_v over the archimedean place and every prime dividing the
/// numerator or denominator (all other places contribute 0). Zero by the
/// product formula, up to float rounding.
pub fn product_formula_check(x: &Rat) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::validation("product formula needs x ≠ 0"));
    }
    let mut total = log_abs_rat(x);
    let mut seen: Vec<BigInt> = Vec::new();
    for part in [x.numer().abs(), x.denom().abs()] {
        if part.is_one() {
            continue;
        }
        for (p, _) in factor_positive(&part)? {
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
    }
    for p in seen {
        let pu = p.to_u64().ok_or_else(|| Error::resource("prime exceeds 64 bits"))?;
        total += log_abs(x, &Place::Finite(pu))?.value;
    }
    Ok(total)
}
