//! The index set Σ, the product family H(m), and the determinant identity.
//!
//! For N = t·d^k with 2 ≤ t ≤ 2d−1 and k ≥ 1, the family H(m), m = N−1,
//! consists of the N degree-m forms
//!
//! ```text
//! x^{a₀} y^{b₀} · ∏_{j=1}^{k} (F₁^{(j)})^{a_j} (F₂^{(j)})^{b_j},
//!     a_j + b_j = d−1 (0 ≤ j ≤ k−1),   a_k + b_k = t−1,
//! ```
//!
//! where F^{(j)} is the j-th iterate. Expressing H(m) in the monomial basis
//! S(m) gives a square change-of-basis matrix A whose determinant equals
//! ±Res(F)^r for the explicit exponent r — an identity this module verifies
//! exactly, fraction-free, for any given map.

use crate::forms::{det_rational, rat_pow, BinaryForm, MapPair, Rat};
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};

/// An element N = t·d^k of the index set Σ (2 ≤ t ≤ 2d−1, k ≥ 1). The
/// decomposition is unique: t·d^k = t′·d^{k′} with k < k′ would force
/// t = t′·d^{k′−k} ≥ 2d > 2d−1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaIndex {
    pub n: u64,
    pub t: u64,
    pub k: u32,
    pub d: u64,
}

impl SigmaIndex {
    pub fn new(d: u64, t: u64, k: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::validation("degree must be at least 2"));
        }
        if t < 2 || t > 2 * d - 1 {
            return Err(Error::validation(format!("t = {t} outside [2, {}]", 2 * d - 1)));
        }
        if k < 1 {
            return Err(Error::validation("k must be at least 1"));
        }
        let mut n = t;
        for _ in 0..k {
            n = n
                .checked_mul(d)
                .ok_or_else(|| Error::resource("t·d^k overflows"))?;
        }
        Ok(SigmaIndex { n, t, k, d })
    }
}

/// The (unique) Σ-witness for N, if N = t·d^k for admissible (t, k); the
/// stated policy prefers the largest k, which the uniqueness argument makes
/// moot but cheap to honor.
pub fn sigma_decompose(n: u64, d: u64) -> Option<SigmaIndex> {
    sigma_decompositions(n, d).into_iter().next()
}

/// All Σ-witnesses for N, largest k first (at most one exists; the
/// enumeration keeps the tie-break policy observable).
pub fn sigma_decompositions(n: u64, d: u64) -> Vec<SigmaIndex> {
    let mut out = Vec::new();
    if n < 2 || d < 2 {
        return out;
    }
    let mut dk = d;
    let mut k = 1u32;
    loop {
        if n.is_multiple_of(dk) {
            let t = n / dk;
            if (2..=2 * d - 1).contains(&t) {
                out.push(SigmaIndex { n, t, k, d });
            }
        }
        match dk.checked_mul(d) {
            Some(next) if next <= n => {
                dk = next;
                k += 1;
            }
            _ => break,
        }
    }
    out.sort_by_key(|s| std::cmp::Reverse(s.k));
    out
}

/// All Σ elements with N ≤ bound, ascending in N.
pub fn sigma_elements(d: u64, bound: u64) -> Vec<SigmaIndex> {
    let mut out: Vec<SigmaIndex> = (2..=bound)
        .filter_map(|n| sigma_decompose(n, d))
        .collect();
    out.sort_by_key(|s| s.n);
    out
}

/// Largest element of Σ that is ≤ N; defined (and ≥ (N+1)/2) once N ≥ 2d.
pub fn nearest_sigma(n: u64, d: u64) -> Result<SigmaIndex> {
    if d < 2 {
        return Err(Error::validation("degree must be at least 2"));
    }
    if n < 2 * d {
        return Err(Error::validation(format!(
            "nearest_sigma needs N ≥ 2d = {}, got {n}",
            2 * d
        )));
    }
    (2..=n)
        .rev()
        .find_map(|m| sigma_decompose(m, d))
        .ok_or_else(|| Error::property("Σ ∩ [2, N] empty despite N ≥ 2d"))
}

/// α = t − 1 + (d − 1)k.
pub fn alpha(idx: &SigmaIndex) -> u64 {
    idx.t - 1 + (idx.d - 1) * idx.k as u64
}

/// The product family H(m) for m = N − 1.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    pub m: u64,
    pub members: Vec<BinaryForm>,
}

/// Build H(m): all N products over the exponent tuples (a₀, …, a_k) in
/// descending lexicographic order, with b_j the complementary exponent.
pub fn build_h(f: &MapPair, idx: &SigmaIndex) -> Result<BasisFamily> {
    if f.d() as u64 != idx.d {
        return Err(Error::validation(format!(
            "index degree {} does not match map degree {}",
            idx.d,
            f.d()
        )));
    }
    let limit = crate::max_basis();
    if idx.n > limit {
        return Err(Error::resource(format!(
            "N = {} exceeds the basis size guard {limit} (set DYNGREEN_MAX_BASIS to raise)",
            idx.n
        )));
    }
    let d = f.d();
    let k = idx.k as usize;
    let t = idx.t as usize;

    // Iterates F^{(1)} … F^{(k)} and small power tables for each.
    let mut iterates: Vec<MapPair> = Vec::with_capacity(k);
    let mut acc = f.clone();
    for j in 0..k {
        if j > 0 {
            acc = f.compose(&acc)?;
        }
        iterates.push(acc.clone());
    }
    let cap_at = |j: usize| if j + 1 == k { t - 1 } else { d - 1 };
    let pow_table = |g: &BinaryForm, cap: usize| -> Vec<BinaryForm> {
        (0..=cap).map(|e| g.pow(e)).collect()
    };
    let f1_pows: Vec<Vec<BinaryForm>> = iterates
        .iter()
        .enumerate()
        .map(|(j, it)| pow_table(it.f1(), cap_at(j)))
        .collect();
    let f2_pows: Vec<Vec<BinaryForm>> = iterates
        .iter()
        .enumerate()
        .map(|(j, it)| pow_table(it.f2(), cap_at(j)))
        .collect();

    // Mixed-radix countdown over (a₀, a₁, …, a_k), each a_j from its cap
    // down to 0 — descending lexicographic order.
    let caps: Vec<usize> = std::iter::once(d - 1)
        .chain((1..=k).map(|j| cap_at(j - 1)))
        .collect();
    let mut tuple: Vec<usize> = caps.clone();
    let m = idx.n - 1;
    let mut members = Vec::with_capacity(idx.n as usize);
    loop {
        let a0 = tuple[0];
        let b0 = (d - 1) - a0;
        let mut mono = vec![Rat::zero(); d];
        mono[b0] = Rat::from_integer(1.into());
        let mut prod = BinaryForm::new(mono).expect("monomial");
        for j in 1..=k {
            let aj = tuple[j];
            let bj = caps[j] - aj;
            prod = prod.mul(&f1_pows[j - 1][aj]).mul(&f2_pows[j - 1][bj]);
        }
        debug_assert_eq!(prod.degree() as u64, m);
        members.push(prod);

        // Decrement the tuple in descending-lex order.
        let mut pos = k + 1;
        while pos > 0 {
            pos -= 1;
            if tuple[pos] > 0 {
                tuple[pos] -= 1;
                tuple[pos + 1..=k].copy_from_slice(&caps[pos + 1..=k]);
                break;
            }
            if pos == 0 {
                debug_assert_eq!(members.len() as u64, idx.n);
                return Ok(BasisFamily { m, members });
            }
        }
    }
}

/// Exact determinant of the change-of-basis matrix A: row i holds the
/// coefficients of the i-th member of H(m) over the monomial basis
/// x^m, x^{m−1}y, …, y^m.
pub fn change_matrix_det(f: &MapPair, idx: &SigmaIndex) -> Result<Rat> {
    let h = build_h(f, idx)?;
    let rows: Vec<Vec<Rat>> = h.members.iter().map(|g| g.coeffs().to_vec()).collect();
    Ok(det_rational(&rows))
}

/// r = N²/(2d(d−1)) − N(t + k(d−1))/(2d(d−1)); always a nonnegative integer.
pub fn prop_exponent(idx: &SigmaIndex) -> Rat {
    let n = Rat::from_integer(idx.n.into());
    let d = Rat::from_integer(idx.d.into());
    let t = Rat::from_integer(idx.t.into());
    let k = Rat::from_integer(idx.k.into());
    let one = Rat::from_integer(1.into());
    let two = Rat::from_integer(2.into());
    let denom = &two * &d * (&d - &one);
    (&n * &n - &n * (&t + &k * (&d - &one))) / denom
}

/// Exact check that |det A| = |Res(F)|^r.
pub fn verify_proposition(f: &MapPair, idx: &SigmaIndex) -> Result<bool> {
    let det = change_matrix_det(f, idx)?;
    let r = prop_exponent(idx);
    if !r.is_integer() || r.is_negative() {
        return Err(Error::property(format!("exponent r = {r} is not a nonnegative integer")));
    }
    let e = r
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::resource("exponent r overflows u64"))?;
    Ok(det.abs() == rat_pow(&f.resultant().abs(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{rat, rat_int};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tsq() -> MapPair {
        MapPair::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap()
    }

    #[test]
    fn sigma_decompose_examples() {
        let s = sigma_decompose(4, 2).unwrap();
        assert_eq!((s.t, s.k), (2, 1));
        assert!(sigma_decompose(5, 2).is_none());
        let s = sigma_decompose(6, 3).unwrap();
        assert_eq!((s.t, s.k), (2, 1));
        let s = sigma_decompose(8, 2).unwrap();
        assert_eq!((s.t, s.k), (2, 2));
        let s = sigma_decompose(12, 2).unwrap();
        assert_eq!((s.t, s.k), (3, 2));
    }

    #[test]
    fn sigma_decomposition_unique() {
        for d in [2u64, 3, 5] {
            for n in 2..=10_000u64 {
                let all = sigma_decompositions(n, d);
                assert!(all.len() <= 1, "N={n}, d={d} has {} witnesses", all.len());
                for s in &all {
                    assert_eq!(s.n, s.t * (s.d.pow(s.k)));
                    assert!((2..=2 * d - 1).contains(&s.t));
                }
            }
        }
    }

    #[test]
    fn nearest_sigma_examples_and_gap_bound() {
        assert_eq!(nearest_sigma(5, 2).unwrap().n, 4);
        assert_eq!(nearest_sigma(4, 2).unwrap().n, 4);
        for d in [2u64, 3, 5] {
            for n in 2 * d..=10_000 {
                let np = nearest_sigma(n, d).unwrap().n;
                assert!(np <= n);
                assert!(
                    (n - 1) as f64 / 2.0 <= (np - 1) as f64,
                    "gap bound fails: N={n}, N'={np}, d={d}"
                );
            }
        }
        assert!(nearest_sigma(3, 2).is_err());
    }

    #[test]
    fn alpha_examples_and_bound() {
        assert_eq!(alpha(&SigmaIndex::new(2, 2, 1).unwrap()), 2);
        assert_eq!(alpha(&SigmaIndex::new(2, 3, 2).unwrap()), 4);
        for d in [2u64, 3, 4] {
            for s in sigma_elements(d, 10_000) {
                let a = alpha(&s) as f64;
                let bound = (d as f64 - 1.0) * ((s.n as f64).ln() / (d as f64).ln() + 2.0);
                assert!(a >= 2.0);
                assert!(a <= bound + 1e-9, "α={a} exceeds bound {bound} at N={}", s.n);
            }
        }
    }

    #[test]
    fn h_family_smallest_case() {
        let f = MapPair::from_i64(&[1, 0, 1], &[0, 1, 0]).unwrap();
        let idx = SigmaIndex::new(2, 2, 1).unwrap();
        let h = build_h(&f, &idx).unwrap();
        assert_eq!(h.m, 3);
        let x = BinaryForm::from_i64(&[1, 0]);
        let y = BinaryForm::from_i64(&[0, 1]);
        let want = vec![
            x.mul(f.f1()),
            x.mul(f.f2()),
            y.mul(f.f1()),
            y.mul(f.f2()),
        ];
        assert_eq!(h.members, want);
    }

    #[test]
    fn h_family_counts_and_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (d, t, k) in [(2u64, 2u64, 1u32), (2, 3, 1), (2, 2, 2), (3, 4, 1), (3, 2, 1)] {
            let idx = SigmaIndex::new(d, t, k).unwrap();
            let f = loop {
                let c1: Vec<i64> = (0..=d).map(|_| rng.gen_range(-5..=5)).collect();
                let c2: Vec<i64> = (0..=d).map(|_| rng.gen_range(-5..=5)).collect();
                if let Ok(m) = MapPair::from_i64(&c1, &c2) {
                    break m;
                }
            };
            let h = build_h(&f, &idx).unwrap();
            assert_eq!(h.members.len() as u64, idx.n);
            for g in &h.members {
                assert_eq!(g.degree() as u64, h.m);
            }
        }
    }

    #[test]
    fn determinants_hand_checked() {
        let idx = SigmaIndex::new(2, 2, 1).unwrap();
        assert_eq!(change_matrix_det(&tsq(), &idx).unwrap().abs(), rat_int(1));

        let f = MapPair::from_i64(&[1, 0, 1], &[0, 1, 0]).unwrap();
        assert_eq!(change_matrix_det(&f, &idx).unwrap(), rat_int(-1));

        let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0]).unwrap();
        assert_eq!(change_matrix_det(&newton, &idx).unwrap(), rat_int(-4));
    }

    #[test]
    fn exponent_formula() {
        assert_eq!(prop_exponent(&SigmaIndex::new(2, 2, 1).unwrap()), rat_int(1));
        assert_eq!(prop_exponent(&SigmaIndex::new(2, 2, 2).unwrap()), rat_int(8));
        for d in [2u64, 3, 4] {
            for s in sigma_elements(d, 1000) {
                let r = prop_exponent(&s);
                assert!(r.is_integer(), "r = {r} not integral at N={} d={d}", s.n);
                assert!(!r.is_negative());
            }
        }
    }

    #[test]
    fn proposition_verifies_exactly() {
        let idx21 = SigmaIndex::new(2, 2, 1).unwrap();
        for f in [
            tsq(),
            MapPair::from_i64(&[1, 0, 1], &[0, 1, 0]).unwrap(),
            MapPair::from_i64(&[1, 0, 1], &[0, 2, 0]).unwrap(),
        ] {
            assert!(verify_proposition(&f, &idx21).unwrap());
        }

        // Permutation case at (t,k) = (2,2): r = 8 and det = ±1 = 1⁸.
        let idx22 = SigmaIndex::new(2, 2, 2).unwrap();
        assert_eq!(change_matrix_det(&tsq(), &idx22).unwrap().abs(), rat_int(1));
        assert!(verify_proposition(&tsq(), &idx22).unwrap());

        // Random maps, both index shapes, exact equality.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let idx31 = SigmaIndex::new(2, 3, 1).unwrap();
        for _ in 0..10 {
            let f = loop {
                let c1: Vec<i64> = (0..=2).map(|_| rng.gen_range(-9..=9)).collect();
                let c2: Vec<i64> = (0..=2).map(|_| rng.gen_range(-9..=9)).collect();
                if let Ok(m) = MapPair::from_i64(&c1, &c2) {
                    break m;
                }
            };
            assert!(verify_proposition(&f, &idx21).unwrap(), "{f:?}");
            assert!(verify_proposition(&f, &idx31).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn determinant_scales_with_gamma() {
        let f = MapPair::from_i64(&[2, 1, 1], &[1, 0, 3]).unwrap();
        let idx = SigmaIndex::new(2, 2, 1).unwrap();
        let base = change_matrix_det(&f, &idx).unwrap().abs();
        let gamma = rat(3, 2);
        let fs = f.scale(&gamma).unwrap();
        let scaled = change_matrix_det(&fs, &idx).unwrap().abs();
        // |det| is homogeneous of degree 2d·r in the coefficients.
        let r = prop_exponent(&idx).to_integer().to_u64().unwrap();
        assert_eq!(scaled, base * rat_pow(&gamma.abs(), 2 * 2 * r));
    }

    #[test]
    fn common_factor_kills_determinant() {
        // (x+y)x and (x+y)y share a factor; H(m) is then linearly dependent.
        let f1 = BinaryForm::from_i64(&[1, 1, 0]);
        let f2 = BinaryForm::from_i64(&[0, 1, 1]);
        let f = MapPair::unchecked(f1, f2);
        let idx = SigmaIndex::new(2, 2, 1).unwrap();
        assert!(change_matrix_det(&f, &idx).unwrap().is_zero());
    }

    #[test]
    fn size_guard_trips() {
        let idx = SigmaIndex::new(2, 2, 6).unwrap(); // N = 128 > 64
        let err = build_h(&tsq(), &idx).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn index_validation() {
        assert!(SigmaIndex::new(2, 1, 1).is_err());
        assert!(SigmaIndex::new(2, 4, 1).is_err());
        assert!(SigmaIndex::new(2, 2, 0).is_err());
        assert!(SigmaIndex::new(1, 2, 1).is_err());
        assert!(SigmaIndex::new(3, 5, 1).is_ok());
        let one = Rat::one();
        assert!(one.is_integer());
    }
}
