//! Canonical heights over ℚ: place decomposition, orbit iteration, the
//! global Green's identity, the small-points census, and the Lattès
//! constructor.
//!
//! The global height of P = [a:b] with coprime integer coordinates is
//!
//! ```text
//! ĥ_φ(P) = Ĥ_{F,∞}(a,b) + Σ_{p bad} Ĥ_{F,p}(a,b)
//! ```
//!
//! on a normalized integer model of F — at every good prime the coprime
//! coordinates and the unit resultant force the local term to vanish
//! exactly, which the bad-prime enumeration proves per run.

use crate::dynheight::{green, hhat, sphere_log_bound};
use crate::forms::{log_abs_bigint, BinaryForm, Lift, MapPair, Rat};
use crate::places::{bad_primes, factor_positive, Place};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// A point of ℙ¹(ℚ) in canonical coordinates: gcd(|a|,|b|) = 1 and either
/// b > 0 or (b = 0 and a = 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    a: BigInt,
    b: BigInt,
}

impl RationalPoint {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::validation("[0:0] is not a projective point"));
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(RationalPoint { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        RationalPoint::new(BigInt::from(a), BigInt::from(b))
    }

    /// Parse "a:b" or "a/b" or a plain integer (denominator 1).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (sa, sb) = s
            .split_once(':')
            .or_else(|| s.split_once('/'))
            .unwrap_or((s, "1"));
        let pa: BigInt = sa.trim().parse().map_err(|_| {
            Error::validation(format!("cannot parse '{sa}' as an integer"))
        })?;
        let pb: BigInt = sb.trim().parse().map_err(|_| {
            Error::validation(format!("cannot parse '{sb}' as an integer"))
        })?;
        RationalPoint::new(pa, pb)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn lift(&self) -> Lift {
        Lift::new(
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(self.b.clone()),
        )
        .expect("canonical point is nonzero")
    }

    /// Naive Weil height log max(|a|, |b|) of the canonical coordinates.
    pub fn naive_height(&self) -> f64 {
        let m = self.a.clone().abs().max(self.b.clone().abs());
        log_abs_bigint(&m)
    }

    fn bits(&self) -> u64 {
        self.a.magnitude().bits().max(self.b.magnitude().bits())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "[{}:{}]", self.a, self.b)
    }
}

/// A certified global height: value with error radius (sum of the local
/// radii; zero contributions from good-reduction places are exact).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalHeight {
    pub value: f64,
    pub err: f64,
}

fn integer_model(f: &MapPair) -> Result<(MapPair, Vec<u64>)> {
    let fnorm = f.normalize_integer();
    let bad = bad_primes(&fnorm)?;
    Ok((fnorm, bad))
}

fn decomposed_height(
    fnorm: &MapPair,
    bad: &[u64],
    z: &Lift,
    tol: f64,
) -> Result<GlobalHeight> {
    let share = tol / (1.0 + bad.len() as f64);
    let arch = hhat(fnorm, z, &Place::Archimedean, share)?;
    let mut value = arch.value;
    let mut err = arch.err;
    for &p in bad {
        let h = hhat(fnorm, z, &Place::Finite(p), share)?;
        value += h.value;
        err += h.err;
    }
    Ok(GlobalHeight { value, err })
}

/// ĥ_φ(P) by place decomposition over the bad primes of a normalized
/// integer model, with certified error at most `tol`.
pub fn canonical_height(f: &MapPair, p: &RationalPoint, tol: f64) -> Result<GlobalHeight> {
    if tol <= 0.0 {
        return Err(Error::validation("tolerance must be positive"));
    }
    let (fnorm, bad) = integer_model(f)?;
    decomposed_height(&fnorm, &bad, &p.lift(), tol)
}

fn eval_int(coeffs: &[BigInt], a: &BigInt, b: &BigInt) -> BigInt {
    let mut acc = coeffs[0].clone();
    let mut bp = BigInt::from(1);
    for c in &coeffs[1..] {
        bp *= b;
        acc = acc * a + c * &bp;
    }
    acc
}

/// One exact step P ↦ φ(P) with full gcd reduction of the image
/// coordinates; errors with a resource guard before the integers outgrow
/// the bit budget.
pub fn orbit_step(f: &MapPair, p: &RationalPoint) -> Result<RationalPoint> {
    let fnorm = f.normalize_integer();
    let coeff_bits = fnorm
        .f1()
        .max_coeff_bits()
        .max(fnorm.f2().max_coeff_bits());
    let need = p.bits() * f.d() as u64 + coeff_bits + 8;
    if need > crate::max_bits() {
        return Err(Error::resource(format!(
            "orbit step needs about {need} bits, above the {} bit budget",
            crate::max_bits()
        )));
    }
    let c1 = fnorm.f1().integer_coeffs().expect("normalized integer model");
    let c2 = fnorm.f2().integer_coeffs().expect("normalized integer model");
    RationalPoint::new(eval_int(&c1, &p.a, &p.b), eval_int(&c2, &p.a, &p.b))
}

/// Σ_v B_v/(d−1) over the archimedean place and the bad primes: a bound
/// for |h_naive − ĥ_φ| on all of ℙ¹(ℚ).
fn height_gap_constant(fnorm: &MapPair, bad: &[u64]) -> Result<f64> {
    let mut b = sphere_log_bound(fnorm, &Place::Archimedean)?;
    for &p in bad {
        b += sphere_log_bound(fnorm, &Place::Finite(p))?;
    }
    Ok(b / (fnorm.d() as f64 - 1.0))
}

/// Independent orbit oracle h(φⁿP)/dⁿ with its certified geometric error.
#[derive(Clone, Copy, Debug)]
pub struct OrbitEstimate {
    pub value: f64,
    pub err: f64,
    pub n_used: u32,
}

/// Estimate ĥ_φ(P) as h(φⁿP)/dⁿ for the largest feasible n ≤ n_max, where
/// h is the naive height of the reduced coordinates; the error radius is
/// (Σ_v B_v/(d−1))/dⁿ, from the uniform naive-vs-canonical gap.
pub fn canonical_height_orbit_oracle(
    f: &MapPair,
    p: &RationalPoint,
    n_max: u32,
) -> Result<OrbitEstimate> {
    let (fnorm, bad) = integer_model(f)?;
    let gap = height_gap_constant(&fnorm, &bad)?;
    let mut q = p.clone();
    let mut n_used = 0u32;
    for _ in 0..n_max {
        match orbit_step(&fnorm, &q) {
            Ok(next) => {
                q = next;
                n_used += 1;
            }
            Err(Error::Resource(_)) => break,
            Err(e) => return Err(e),
        }
    }
    let dn = (f.d() as f64).powi(n_used as i32);
    Ok(OrbitEstimate {
        value: q.naive_height() / dn,
        err: gap / dn,
        n_used,
    })
}

/// |Σ_v g_{φ,v}(z,w) − ĥ(z) − ĥ(w)|, the residual of the global Green
/// identity. The sum runs over the archimedean place, the bad primes, and
/// the primes dividing wedge(z,w); every other place contributes exactly 0
/// (good reduction, unit resultant, coprime coordinates, unit wedge).
pub fn green_sum_identity_check(
    f: &MapPair,
    z: &RationalPoint,
    w: &RationalPoint,
    tol: f64,
) -> Result<f64> {
    if z == w {
        return Err(Error::validation("the Green identity needs distinct points"));
    }
    let (fnorm, bad) = integer_model(f)?;
    let wedge = z.a() * w.b() - z.b() * w.a();
    let mut places: BTreeSet<u64> = bad.iter().copied().collect();
    if !wedge.is_zero() {
        for (q, _) in factor_positive(&wedge.abs())? {
            places.insert(q.to_u64().ok_or_else(|| {
                Error::resource("wedge has a prime factor beyond 64 bits")
            })?);
        }
    }
    let zl = z.lift();
    let wl = w.lift();
    let share = tol / (4.0 * (1.0 + places.len() as f64));
    let mut total = green(&fnorm, &zl, &wl, &Place::Archimedean, share)?.value;
    for &p in &places {
        total += green(&fnorm, &zl, &wl, &Place::Finite(p), share)?.value;
    }
    let hz = decomposed_height(&fnorm, &bad, &zl, tol / 4.0)?;
    let hw = decomposed_height(&fnorm, &bad, &wl, tol / 4.0)?;
    Ok((total - hz.value - hw.value).abs())
}

/// Has the exact orbit revisited a point, provably escaped, or neither?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preperiodicity {
    Preperiodic,
    Wandering,
    Inconclusive,
}

impl Preperiodicity {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self, Preperiodicity::Preperiodic)
    }
}

/// Exact preperiodicity test: a revisit within max_steps proves
/// preperiodic; a naive height above the uniform gap constant proves
/// ĥ > 0 and hence wandering; otherwise inconclusive.
pub fn preperiodic_detect(
    f: &MapPair,
    p: &RationalPoint,
    max_steps: u32,
) -> Result<Preperiodicity> {
    let (fnorm, bad) = integer_model(f)?;
    let gap = height_gap_constant(&fnorm, &bad)?;
    let mut seen: HashSet<RationalPoint> = HashSet::new();
    let mut q = p.clone();
    for _ in 0..=max_steps {
        if q.naive_height() > gap + 1e-9 {
            // ĥ(q) ≥ h(q) − gap > 0, and ĥ(P) = ĥ(q)/dⁿ > 0.
            return Ok(Preperiodicity::Wandering);
        }
        if !seen.insert(q.clone()) {
            return Ok(Preperiodicity::Preperiodic);
        }
        match orbit_step(&fnorm, &q) {
            Ok(next) => q = next,
            Err(Error::Resource(_)) => return Ok(Preperiodicity::Inconclusive),
            Err(e) => return Err(e),
        }
    }
    Ok(Preperiodicity::Inconclusive)
}

/// A census witness with its certified height and orbit classification.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub point: RationalPoint,
    pub hhat: f64,
    pub err: f64,
    pub preperiodic: bool,
}

/// Result of a small-points census over |a|, |b| ≤ e^B.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub bound: f64,
    pub theta: f64,
    pub count: usize,
    pub witnesses: Vec<CensusEntry>,
    pub min_positive_height: Option<f64>,
}

const CENSUS_TOL: f64 = 1e-9;
const MAX_CENSUS_PAIRS: i64 = 4_000_000;

/// Enumerate every canonical [a:b] with |a|, |b| ≤ e^B, report the points
/// with ĥ ≤ θ and the minimum positive height seen in the window.
pub fn small_point_census(f: &MapPair, b: f64, theta: f64) -> Result<CensusResult> {
    let positive = |x: f64| x.partial_cmp(&0.0) == Some(std::cmp::Ordering::Greater);
    if !positive(b) || !positive(theta) {
        return Err(Error::validation("census needs B > 0 and θ > 0"));
    }
    let m = b.exp().floor() as i64;
    if m < 1 {
        return Err(Error::validation("window is empty"));
    }
    if (2 * m + 1) * (m + 1) > MAX_CENSUS_PAIRS {
        return Err(Error::resource(format!(
            "census window of {} pairs exceeds the {MAX_CENSUS_PAIRS} guard",
            (2 * m + 1) * (m + 1)
        )));
    }
    let (fnorm, bad) = integer_model(f)?;
    let rows: Vec<Result<Vec<(RationalPoint, f64, f64)>>> = (-m..=m)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for bb in 0..=m {
                let keep = if bb == 0 {
                    a == 1
                } else {
                    a.unsigned_abs().gcd(&bb.unsigned_abs()) == 1
                };
                if !keep {
                    continue;
                }
                let pt = RationalPoint::from_i64(a, bb)?;
                let h = decomposed_height(&fnorm, &bad, &pt.lift(), CENSUS_TOL)?;
                out.push((pt, h.value, h.err));
            }
            Ok(out)
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut min_positive: Option<f64> = None;
    for row in rows {
        for (pt, value, err) in row? {
            if value > err + 1e-10 {
                min_positive = Some(match min_positive {
                    Some(cur) => cur.min(value),
                    None => value,
                });
            }
            if value <= theta {
                let pre = preperiodic_detect(&fnorm, &pt, 64)?;
                witnesses.push(CensusEntry {
                    point: pt,
                    hhat: value,
                    err,
                    preperiodic: pre.is_preperiodic(),
                });
            }
        }
    }
    Ok(CensusResult {
        bound: b,
        theta,
        count: witnesses.len(),
        witnesses,
        min_positive_height: min_positive,
    })
}

/// The degree-4 Lattès pair of x-coordinate duplication on
/// y² = x³ + ax + b:  F₁ = x⁴ − 2a x²y² − 8b xy³ + a² y⁴,
/// F₂ = 4y(x³ + a xy² + b y³).
pub fn lattes_from_curve(a: &Rat, b: &Rat) -> Result<MapPair> {
    let disc = Rat::from_integer(4.into()) * a * a * a
        + Rat::from_integer(27.into()) * b * b;
    if disc.is_zero() {
        return Err(Error::validation(
            "the curve y² = x³ + ax + b is singular (4a³ + 27b² = 0)",
        ));
    }
    let two = Rat::from_integer(2.into());
    let four = Rat::from_integer(4.into());
    let eight = Rat::from_integer(8.into());
    let f1 = BinaryForm::new(vec![
        Rat::from_integer(1.into()),
        Rat::zero(),
        -(&two * a),
        -(&eight * b),
        a * a,
    ])?;
    let f2 = BinaryForm::new(vec![
        Rat::zero(),
        four.clone(),
        Rat::zero(),
        &four * a,
        &four * b,
    ])?;
    MapPair::new(f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const LN2: f64 = std::f64::consts::LN_2;

    fn tsq() -> MapPair {
        MapPair::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap()
    }

    fn newton() -> MapPair {
        MapPair::from_i64(&[1, 0, 1], &[0, 2, 0]).unwrap()
    }

    fn random_map(rng: &mut ChaCha8Rng, d: usize) -> MapPair {
        loop {
            let c1: Vec<i64> = (0..=d).map(|_| rng.gen_range(-3..=3)).collect();
            let c2: Vec<i64> = (0..=d).map(|_| rng.gen_range(-3..=3)).collect();
            if let Ok(f) = MapPair::from_i64(&c1, &c2) {
                return f;
            }
        }
    }

    #[test]
    fn canonical_point_form() {
        let p = RationalPoint::from_i64(4, -6).unwrap();
        assert_eq!(p.to_string(), "[-2:3]");
        let q = RationalPoint::from_i64(-3, 0).unwrap();
        assert_eq!(q.to_string(), "[1:0]");
        assert!(RationalPoint::from_i64(0, 0).is_err());
        assert_eq!(RationalPoint::parse("[4:-6]").unwrap(), p);
        assert_eq!(RationalPoint::parse("7").unwrap(), RationalPoint::from_i64(7, 1).unwrap());
        assert_eq!(RationalPoint::parse("2/3").unwrap(), RationalPoint::from_i64(2, 3).unwrap());
    }

    #[test]
    fn squaring_map_heights_are_naive() {
        let f = tsq();
        let cases = [((2, 1), LN2), ((2, 3), 3f64.ln()), ((1, 0), 0.0), ((0, 1), 0.0)];
        for ((a, b), want) in cases {
            let p = RationalPoint::from_i64(a, b).unwrap();
            let h = canonical_height(&f, &p, 1e-12).unwrap();
            assert!(
                (h.value - want).abs() <= h.err + 1e-12,
                "[{a}:{b}]: {} vs {want}",
                h.value
            );
        }
    }

    #[test]
    fn newton_map_preperiodic_points_have_height_zero() {
        let f = newton();
        for (a, b) in [(1, 1), (0, 1), (1, 0), (-1, 1)] {
            let p = RationalPoint::from_i64(a, b).unwrap();
            let h = canonical_height(&f, &p, 1e-10).unwrap();
            assert!(h.value.abs() <= h.err + 1e-10, "[{a}:{b}]: {}", h.value);
        }
    }

    #[test]
    fn heights_nonnegative_and_functional() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..20 {
            let d = 2 + rng.gen_range(0..2) as usize;
            let f = random_map(&mut rng, d);
            let p = RationalPoint::from_i64(rng.gen_range(-6..=6), rng.gen_range(1..=6)).unwrap();
            let h = canonical_height(&f, &p, 1e-10).unwrap();
            assert!(h.value >= -h.err, "negative height {} for {p} under {f:?}", h.value);
            let fp = orbit_step(&f, &p).unwrap();
            let hf = canonical_height(&f, &fp, 1e-10).unwrap();
            assert!(
                (hf.value - d as f64 * h.value).abs() <= hf.err + d as f64 * h.err + 1e-9,
                "functional equation: {} vs {}",
                hf.value,
                d as f64 * h.value
            );
        }
    }

    #[test]
    fn orbit_oracle_exact_cases() {
        let f = tsq();
        let p = RationalPoint::from_i64(2, 1).unwrap();
        let est = canonical_height_orbit_oracle(&f, &p, 10).unwrap();
        assert_eq!(est.n_used, 10);
        assert!((est.value - LN2).abs() < 1e-13, "{}", est.value);

        let z = RationalPoint::from_i64(0, 1).unwrap();
        let est = canonical_height_orbit_oracle(&newton(), &z, 8).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn orbit_oracle_agrees_with_decomposition() {
        // Cross-oracle soundness: the two computations must overlap within
        // their combined certified radii. The orbit certificate shrinks
        // like gap/dⁿ, with n capped by the bit budget.
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..100 {
            let d = 2 + rng.gen_range(0..2) as usize;
            let f = random_map(&mut rng, d);
            let p = RationalPoint::from_i64(rng.gen_range(-4..=4), rng.gen_range(1..=4)).unwrap();
            let dec = canonical_height(&f, &p, 1e-9).unwrap();
            let depth = if d == 2 { 15 } else { 10 };
            let orc = canonical_height_orbit_oracle(&f, &p, depth).unwrap();
            assert!(
                (dec.value - orc.value).abs() <= orc.err + dec.err + 1e-12,
                "{p} under {f:?}: decomposition {} vs orbit {} ± {} (n = {})",
                dec.value,
                orc.value,
                orc.err,
                orc.n_used
            );
            assert!(orc.err <= 5e-2, "certificate too weak: {}", orc.err);
        }
    }

    #[test]
    fn green_sum_hand_cases() {
        let f = tsq();
        let z = RationalPoint::from_i64(2, 1).unwrap();
        let w = RationalPoint::from_i64(3, 1).unwrap();
        assert!(green_sum_identity_check(&f, &z, &w, 1e-8).unwrap() <= 1e-8);

        let z = RationalPoint::from_i64(1, 1).unwrap();
        let w = RationalPoint::from_i64(-1, 1).unwrap();
        assert!(green_sum_identity_check(&f, &z, &w, 1e-8).unwrap() <= 1e-8);

        let nf = newton();
        let z = RationalPoint::from_i64(1, 1).unwrap();
        let w = RationalPoint::from_i64(0, 1).unwrap();
        assert!(green_sum_identity_check(&nf, &z, &w, 1e-8).unwrap() <= 1e-8);

        assert!(green_sum_identity_check(&f, &z, &z, 1e-8).is_err());
    }

    #[test]
    fn green_sum_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for f in [tsq(), newton()] {
            let mut done = 0;
            while done < 30 {
                let z =
                    RationalPoint::from_i64(rng.gen_range(-9..=9), rng.gen_range(1..=9)).unwrap();
                let w =
                    RationalPoint::from_i64(rng.gen_range(-9..=9), rng.gen_range(1..=9)).unwrap();
                if z == w {
                    continue;
                }
                let r = green_sum_identity_check(&f, &z, &w, 1e-6).unwrap();
                assert!(r <= 1e-6, "residual {r} for {z},{w}");
                done += 1;
            }
        }
    }

    #[test]
    fn squaring_map_census() {
        let f = tsq();
        let res = small_point_census(&f, 10f64.ln(), 0.3).unwrap();
        assert_eq!(res.count, 4);
        let mut got: Vec<String> =
            res.witnesses.iter().map(|e| e.point.to_string()).collect();
        got.sort();
        assert_eq!(got, ["[-1:1]", "[0:1]", "[1:0]", "[1:1]"]);
        let mp = res.min_positive_height.unwrap();
        assert!((mp - LN2).abs() <= 1e-10, "min positive {mp}");
        // Every witness is preperiodic here, and heights vanish within err.
        for e in &res.witnesses {
            assert!(e.preperiodic, "{} flagged wandering", e.point);
            assert!(e.hhat.abs() <= e.err + 1e-10);
        }
    }

    #[test]
    fn census_is_sound_and_complete() {
        // Exhaustive sequential recheck of the window: the witness set is
        // exactly the set of points with ĥ ≤ θ.
        let f = newton();
        let theta = 0.2;
        let res = small_point_census(&f, 4f64.ln(), theta).unwrap();
        let witness_set: HashSet<RationalPoint> =
            res.witnesses.iter().map(|e| e.point.clone()).collect();
        let m = 4i64;
        for a in -m..=m {
            for b in 0..=m {
                let keep = if b == 0 {
                    a == 1
                } else {
                    a.unsigned_abs().gcd(&b.unsigned_abs()) == 1
                };
                if !keep {
                    continue;
                }
                let pt = RationalPoint::from_i64(a, b).unwrap();
                let h = canonical_height(&f, &pt, 1e-9).unwrap();
                assert_eq!(
                    h.value <= theta,
                    witness_set.contains(&pt),
                    "census mismatch at {pt} (ĥ = {})",
                    h.value
                );
            }
        }
    }

    #[test]
    fn lattes_constructor() {
        let f = lattes_from_curve(&rat_int(-1), &rat_int(0)).unwrap();
        assert_eq!(f.d(), 4);
        let want1 = BinaryForm::from_i64(&[1, 0, 2, 0, 1]);
        let want2 = BinaryForm::from_i64(&[0, 4, 0, -4, 0]);
        assert_eq!(f.f1().coeffs(), want1.coeffs());
        assert_eq!(f.f2().coeffs(), want2.coeffs());

        assert!(lattes_from_curve(&rat_int(0), &rat_int(0)).is_err());
        assert!(lattes_from_curve(&rat_int(-3), &rat_int(2)).is_err());
        assert!(lattes_from_curve(&rat(1, 2), &rat_int(1)).is_ok());
    }

    #[test]
    fn lattes_two_torsion_is_preperiodic() {
        let f = lattes_from_curve(&rat_int(-1), &rat_int(0)).unwrap();
        for (a, b) in [(0, 1), (1, 1), (-1, 1), (1, 0)] {
            let p = RationalPoint::from_i64(a, b).unwrap();
            let h = canonical_height(&f, &p, 1e-9).unwrap();
            assert!(h.value.abs() <= 1e-8, "[{a}:{b}]: ĥ = {}", h.value);
            let pre = preperiodic_detect(&f, &p, 16).unwrap();
            assert_eq!(pre, Preperiodicity::Preperiodic, "[{a}:{b}]");
        }
    }

    #[test]
    fn preperiodic_detection_cases() {
        let f = tsq();
        let minus_one = RationalPoint::from_i64(-1, 1).unwrap();
        assert_eq!(
            preperiodic_detect(&f, &minus_one, 8).unwrap(),
            Preperiodicity::Preperiodic
        );
        let two = RationalPoint::from_i64(2, 1).unwrap();
        assert_eq!(preperiodic_detect(&f, &two, 8).unwrap(), Preperiodicity::Wandering);
        assert_eq!(
            preperiodic_detect(&newton(), &RationalPoint::from_i64(0, 1).unwrap(), 8).unwrap(),
            Preperiodicity::Preperiodic
        );
        // No revisit, no proof of escape: inconclusive.
        assert_eq!(
            preperiodic_detect(&f, &two, 0).unwrap(),
            Preperiodicity::Inconclusive
        );
    }

    #[test]
    fn census_guards() {
        let f = tsq();
        let err = small_point_census(&f, 9.0, 0.3).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(small_point_census(&f, -1.0, 0.3).is_err());
        assert!(small_point_census(&f, 1.0, 0.0).is_err());
    }
}
