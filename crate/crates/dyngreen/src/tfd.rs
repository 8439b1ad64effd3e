//! Homogeneous transfinite diameter: Fekete-style configuration search on
//! the filled Julia set and verification of the resultant bound.
//!
//! For n points on K_F = {Ĥ_F ≤ 0} the quantity of interest is
//!
//! ```text
//! objective = (1/(n(n−1))) Σ_{i≠j} log|z_i ∧ z_j|_v,     d⁰_n ≥ exp(objective)
//! ```
//!
//! maximized over configurations. Every emitted estimate is a genuine lower
//! bound for d⁰_n(K_F) (a sup dominates any sample); the chain
//! `objective ≤ C·log n/(n−1) − r(F)` ties the estimates back to the
//! resultant bound d⁰_∞ ≤ |Res F|_v^{−1/d(d−1)}.

use crate::dynheight::{hhat, hhat_complex, normalize_lift, r_of};
use crate::forms::{wedge, wedge_complex, Lift, MapPair};
use crate::places::{val_rat, Place};
use crate::roots::roots;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

const RESTARTS: u64 = 6;
const HEIGHT_TOL: f64 = 1e-11;
const MEMBER_TOL: f64 = 1e-7;

/// The lifts of an optimized configuration: complex at the archimedean
/// place, exact rational at finite places.
#[derive(Clone, Debug)]
pub enum ConfigLifts {
    Complex(Vec<(Complex64, Complex64)>),
    Rational(Vec<Lift>),
}

/// An n-point configuration on K_F with its normalized wedge objective.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub n: usize,
    pub lifts: ConfigLifts,
    pub objective: f64,
}

impl Configuration {
    /// Re-validate the invariants: pairwise projectively distinct lifts,
    /// each on the filled Julia set within tolerance.
    pub fn validate(&self, f: &MapPair, v: &Place, tol: f64) -> Result<()> {
        match &self.lifts {
            ConfigLifts::Complex(pts) => {
                if !matches!(v, Place::Archimedean) {
                    return Err(Error::validation("complex lifts at a finite place"));
                }
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        if wedge_complex(pts[i], pts[j]).norm() <= 1e-12 {
                            return Err(Error::validation(format!(
                                "lifts {i} and {j} projectively coincide"
                            )));
                        }
                    }
                }
                for (i, z) in pts.iter().enumerate() {
                    let h = hhat_complex(f, *z, HEIGHT_TOL)?;
                    if h.value.abs() > tol {
                        return Err(Error::property(format!(
                            "lift {i} has Ĥ = {} outside the normalized window",
                            h.value
                        )));
                    }
                }
            }
            ConfigLifts::Rational(pts) => {
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        if wedge(&pts[i], &pts[j]).is_zero() {
                            return Err(Error::validation(format!(
                                "lifts {i} and {j} projectively coincide"
                            )));
                        }
                    }
                }
                for (i, z) in pts.iter().enumerate() {
                    let h = hhat(f, z, v, HEIGHT_TOL)?;
                    if h.value > tol {
                        return Err(Error::property(format!(
                            "lift {i} has Ĥ = {} > 0: off the filled Julia set",
                            h.value
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// |Res F|_v^{−1/d(d−1)} = exp(−r(F,v)): the proven ceiling for d⁰_∞(K_F).
pub fn tfd_bound(f: &MapPair, v: &Place) -> f64 {
    (-r_of(f, v)).exp()
}

/// Raw pair sum Σ_{i<j} log|z_i∧z_j| for complex lifts (the optimizer's
/// running objective; invariant under simultaneous det-±1 changes of basis).
pub fn raw_pair_sum(pts: &[(Complex64, Complex64)]) -> f64 {
    let mut s = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            s += wedge_complex(pts[i], pts[j]).norm().ln();
        }
    }
    s
}

fn scale_to_zero_height(f: &MapPair, z: (Complex64, Complex64)) -> Result<(Complex64, Complex64)> {
    let h = hhat_complex(f, z, HEIGHT_TOL)?;
    let s = (-h.value).exp();
    if !s.is_finite() || s == 0.0 {
        return Err(Error::validation("lift cannot be renormalized"));
    }
    Ok((z.0 * s, z.1 * s))
}

fn unit_sphere_point(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let mut d = [0.0f64; 4];
    for x in &mut d {
        *x = rng.sample(StandardNormal);
    }
    let z0 = Complex64::new(d[0], d[1]);
    let z1 = Complex64::new(d[2], d[3]);
    let n = (z0.norm_sqr() + z1.norm_sqr()).sqrt();
    if n == 0.0 {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        (z0 / n, z1 / n)
    }
}

/// All preimages of w under F: roots x of w₁·F₁(x,1) − w₀·F₂(x,1), plus
/// [1:0] when the leading coefficient collapses (a preimage at infinity).
fn backward_candidates(
    f1c: &[Complex64],
    f2c: &[Complex64],
    w: (Complex64, Complex64),
) -> Vec<(Complex64, Complex64)> {
    let g: Vec<Complex64> = f1c
        .iter()
        .zip(f2c)
        .map(|(a, b)| w.1 * a - w.0 * b)
        .collect();
    let top = g.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if top == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<(Complex64, Complex64)> = Vec::new();
    if g[0].norm() <= 1e-10 * top {
        out.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    if let Ok(rs) = roots(&g) {
        out.extend(rs.into_iter().map(|r| (r, Complex64::new(1.0, 0.0))));
    }
    out
}

struct RestartOutcome {
    pts: Vec<(Complex64, Complex64)>,
    raw_sum: f64,
}

fn arch_restart(
    f: &MapPair,
    n: usize,
    seed: u64,
    restart: u64,
    sweeps: u64,
) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(restart),
    );
    let f1c: Vec<Complex64> = f.f1().coeffs().iter().map(|c| {
        Complex64::new(crate::forms::rat_to_f64(c), 0.0)
    }).collect();
    let f2c: Vec<Complex64> = f.f2().coeffs().iter().map(|c| {
        Complex64::new(crate::forms::rat_to_f64(c), 0.0)
    }).collect();

    // Initial configuration: roots of unity on restart 0, a backward orbit
    // on restart 1, random sphere points afterwards.
    let mut pts: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    match restart {
        0 => {
            for j in 0..n {
                let th = std::f64::consts::TAU * (j as f64 + 0.29) / n as f64;
                let z = (Complex64::new(th.cos(), th.sin()), Complex64::new(1.0, 0.0));
                pts.push(scale_to_zero_height(f, z)?);
            }
        }
        1 => {
            let mut cur = scale_to_zero_height(
                f,
                (Complex64::new(1.0, 0.3), Complex64::new(1.0, 0.0)),
            )?;
            pts.push(cur);
            while pts.len() < n {
                let cands = backward_candidates(&f1c, &f2c, cur);
                let pick = cands
                    .into_iter()
                    .filter_map(|c| scale_to_zero_height(f, c).ok())
                    .filter(|c| {
                        pts.iter().all(|q| wedge_complex(*q, *c).norm() > 1e-9)
                    })
                    .max_by(|a, b| {
                        let da = pts.iter().map(|q| wedge_complex(*q, *a).norm().ln()).sum::<f64>();
                        let db = pts.iter().map(|q| wedge_complex(*q, *b).norm().ln()).sum::<f64>();
                        da.total_cmp(&db)
                    });
                match pick {
                    Some(c) => {
                        pts.push(c);
                        cur = c;
                    }
                    None => {
                        let z = unit_sphere_point(&mut rng);
                        let z = scale_to_zero_height(f, z)?;
                        if pts.iter().all(|q| wedge_complex(*q, z).norm() > 1e-9) {
                            pts.push(z);
                            cur = z;
                        }
                    }
                }
            }
        }
        _ => {
            while pts.len() < n {
                let z = scale_to_zero_height(f, unit_sphere_point(&mut rng))?;
                if pts.iter().all(|q| wedge_complex(*q, z).norm() > 1e-9) {
                    pts.push(z);
                }
            }
        }
    }

    for sweep in 0..sweeps {
        let sigma = 0.4 * (0.985f64).powi(sweep as i32);
        for i in 0..n {
            let kind = rng.gen_range(0u32..100);
            let cand = if kind < 45 {
                let w = pts[rng.gen_range(0..n)];
                let cands = backward_candidates(&f1c, &f2c, w);
                if cands.is_empty() {
                    continue;
                }
                cands[rng.gen_range(0..cands.len())]
            } else if kind < 70 {
                unit_sphere_point(&mut rng)
            } else if kind < 95 {
                let base = pts[i];
                let mut d = [0.0f64; 4];
                for x in &mut d {
                    *x = sigma * rng.sample::<f64, _>(StandardNormal);
                }
                (base.0 + Complex64::new(d[0], d[1]), base.1 + Complex64::new(d[2], d[3]))
            } else {
                let th = std::f64::consts::TAU * rng.gen::<f64>();
                (Complex64::new(th.cos(), th.sin()), Complex64::new(1.0, 0.0))
            };
            let cand = match scale_to_zero_height(f, cand) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if pts
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && wedge_complex(*q, cand).norm() <= 1e-12)
            {
                continue;
            }
            let mut delta = 0.0;
            for (j, q) in pts.iter().enumerate() {
                if j == i {
                    continue;
                }
                delta += wedge_complex(*q, cand).norm().ln()
                    - wedge_complex(*q, pts[i]).norm().ln();
            }
            if delta > 1e-15 {
                pts[i] = cand;
            }
        }
    }
    Ok(RestartOutcome { raw_sum: raw_pair_sum(&pts), pts })
}

fn finite_pool(f: &MapPair, p: u64, n: usize) -> Result<Vec<Lift>> {
    let span = (4 * n as u64 + 16).min(p.max(2 * n as u64 + 2)).min(600);
    let mut pool: Vec<Lift> = Vec::new();
    pool.push(Lift::from_i64(1, 0));
    for a in 0..span {
        pool.push(Lift::from_i64(a as i64, 1));
    }
    for j in 1..=3u64 {
        let m = (j * p) as i64;
        pool.push(Lift::from_i64(1, m));
        pool.push(Lift::from_i64(m, 1));
    }
    let v = Place::Finite(p);
    let mut out: Vec<Lift> = Vec::new();
    for z in pool {
        let z = normalize_lift(f, &z, &v, 1e-9)?;
        if out.iter().all(|q| !wedge(q, &z).is_zero()) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Exact Σ_{i<j} v_p(z_i∧z_j) over the chosen indices.
fn pool_pair_val(pool: &[Lift], chosen: &[usize], p: u64) -> i64 {
    let mut s = 0i64;
    for a in 0..chosen.len() {
        for b in a + 1..chosen.len() {
            s += val_rat(&wedge(&pool[chosen[a]], &pool[chosen[b]]), p);
        }
    }
    s
}

fn finite_estimate(f: &MapPair, p: u64, n: usize) -> Result<(Vec<Lift>, f64, u64)> {
    let pool = finite_pool(f, p, n)?;
    if pool.len() < n {
        return Err(Error::validation(format!(
            "candidate pool of {} points cannot seat n = {n}",
            pool.len()
        )));
    }
    // Greedy Fekete seeding: best pair, then best extension, by exact
    // valuations with lexicographic tie-breaks.
    let val = |i: usize, j: usize| val_rat(&wedge(&pool[i], &pool[j]), p);
    let mut chosen: Vec<usize> = {
        let (mut bi, mut bj, mut bv) = (0usize, 1usize, i64::MAX);
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let v = val(i, j);
                if v < bv {
                    (bi, bj, bv) = (i, j, v);
                }
            }
        }
        vec![bi, bj]
    };
    while chosen.len() < n {
        let (mut bc, mut bv) = (usize::MAX, i64::MAX);
        for c in 0..pool.len() {
            if chosen.contains(&c) {
                continue;
            }
            let v: i64 = chosen.iter().map(|&s| val(c, s)).sum();
            if v < bv {
                (bc, bv) = (c, v);
            }
        }
        chosen.push(bc);
    }
    // Exchange passes until stable.
    let mut iters = 0u64;
    let mut total = pool_pair_val(&pool, &chosen, p);
    loop {
        iters += 1;
        let mut improved = false;
        for slot in 0..n {
            for c in 0..pool.len() {
                if chosen.contains(&c) {
                    continue;
                }
                let old = chosen[slot];
                let delta: i64 = chosen
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != slot)
                    .map(|(_, &q)| val(c, q) - val(old, q))
                    .sum();
                if delta < 0 {
                    chosen[slot] = c;
                    total += delta;
                    improved = true;
                }
            }
        }
        if !improved || iters >= 40 {
            break;
        }
    }
    let lifts: Vec<Lift> = chosen.iter().map(|&i| pool[i].clone()).collect();
    let nf = n as f64;
    let objective = if total == 0 {
        0.0
    } else {
        -2.0 * (total as f64) * (p as f64).ln() / (nf * (nf - 1.0))
    };
    Ok((lifts, objective, iters))
}

/// Best configuration found for d⁰_n(K_F) at v, with exp(objective) as a
/// certified lower estimate. Deterministic for a given seed; restarts run
/// in parallel and merge by (objective, restart index).
pub fn d0n_estimate(
    f: &MapPair,
    v: &Place,
    n: usize,
    seed: u64,
    iters: u64,
) -> Result<(Configuration, f64)> {
    if n < 2 {
        return Err(Error::validation("need n ≥ 2"));
    }
    match v {
        Place::Archimedean => {
            let outcomes: Vec<Result<RestartOutcome>> = (0..RESTARTS)
                .into_par_iter()
                .map(|r| arch_restart(f, n, seed, r, iters))
                .collect();
            let mut best: Option<RestartOutcome> = None;
            let mut last_err = None;
            for o in outcomes {
                match o {
                    Ok(o) => {
                        let better = match &best {
                            None => true,
                            Some(b) => o.raw_sum > b.raw_sum,
                        };
                        if better {
                            best = Some(o);
                        }
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            let best = best.ok_or_else(|| {
                last_err.unwrap_or_else(|| Error::property("optimizer found no configuration"))
            })?;
            let nf = n as f64;
            let objective = 2.0 * best.raw_sum / (nf * (nf - 1.0));
            let cfg = Configuration {
                n,
                lifts: ConfigLifts::Complex(best.pts),
                objective,
            };
            cfg.validate(f, v, MEMBER_TOL)?;
            Ok((cfg, objective.exp()))
        }
        Place::Finite(p) => {
            let (lifts, objective, _) = finite_estimate(f, *p, n)?;
            let cfg = Configuration {
                n,
                lifts: ConfigLifts::Rational(lifts),
                objective,
            };
            cfg.validate(f, v, MEMBER_TOL)?;
            Ok((cfg, objective.exp()))
        }
    }
}

/// One row of a transfinite-diameter verification run.
#[derive(Clone, Debug)]
pub struct TfdRow {
    pub n: usize,
    pub estimate: f64,
    pub bound: f64,
    pub slack: f64,
    pub iterations: u64,
    pub chain_ok: bool,
}

/// Verification report: per-n estimates against the resultant bound.
#[derive(Clone, Debug)]
pub struct TfdReport {
    pub rows: Vec<TfdRow>,
    pub c_effective: f64,
}

/// For each n, optimize a configuration and check the derived chain
/// objective ≤ C·log n/(n−1) − r(F), i.e.
/// estimate ≤ exp(C·log n/(n−1))·tfd_bound.
pub fn verify_tfd_inequality(
    f: &MapPair,
    v: &Place,
    n_list: &[usize],
    seed: u64,
) -> Result<TfdReport> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list.is_empty() {
        return Err(Error::validation("n_list must be strictly increasing"));
    }
    let c = crate::bounds::effective_c(f, v)?;
    let bound = tfd_bound(f, v);
    let sweeps = 240;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (cfg, estimate) = d0n_estimate(f, v, n, seed, sweeps)?;
        let nf = n as f64;
        let slack = (c * nf.ln() / (nf - 1.0)).exp() - 1.0;
        let chain_ok = cfg.objective <= c * nf.ln() / (nf - 1.0) - r_of(f, v) + 1e-6;
        rows.push(TfdRow {
            n,
            estimate,
            bound,
            slack,
            iterations: RESTARTS * sweeps * n as u64,
            chain_ok,
        });
    }
    Ok(TfdReport { rows, c_effective: c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tsq() -> MapPair {
        MapPair::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap()
    }

    fn newton() -> MapPair {
        MapPair::from_i64(&[1, 0, 1], &[0, 2, 0]).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert!((tfd_bound(&tsq(), &Place::Archimedean) - 1.0).abs() < 1e-15);
        assert!((tfd_bound(&tsq(), &Place::Finite(7)) - 1.0).abs() < 1e-15);
        let f = newton();
        assert!((tfd_bound(&f, &Place::Archimedean) - 0.5).abs() < 1e-12);
        assert!((tfd_bound(&f, &Place::Finite(2)) - 2.0).abs() < 1e-12);
        assert!((tfd_bound(&f, &Place::Finite(3)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn squaring_map_pair_diameter_is_two() {
        let (cfg, est) = d0n_estimate(&tsq(), &Place::Archimedean, 2, 11, 200).unwrap();
        assert!(est >= 2.0 - 1e-6, "optimizer reached only {est}");
        // |z∧w| ≤ 2 on the unit polydisc, so the estimate cannot exceed 2
        // beyond the height-window tolerance.
        assert!(est <= 2.0 + 1e-4, "estimate {est} exceeds the polydisc cap");
        assert_eq!(cfg.n, 2);
    }

    #[test]
    fn squaring_map_larger_n() {
        // Roots of unity give n^{1/(n−1)}; the optimizer is seeded with them
        // and may only improve the objective.
        for n in [4usize, 8] {
            let (cfg, est) = d0n_estimate(&tsq(), &Place::Archimedean, n, 5, 120).unwrap();
            let base = (n as f64).powf(1.0 / (n as f64 - 1.0));
            assert!(est >= base - 1e-6, "n={n}: {est} < {base}");
            cfg.validate(&tsq(), &Place::Archimedean, MEMBER_TOL).unwrap();
        }
    }

    #[test]
    fn good_reduction_padic_diameter_is_exactly_one() {
        let f = tsq();
        for n in [2usize, 9, 16] {
            let (cfg, est) = d0n_estimate(&f, &Place::Finite(17), n, 3, 50).unwrap();
            assert_eq!(est, 1.0, "n={n}");
            assert_eq!(cfg.objective, 0.0);
        }
        // More points than ℙ¹(𝔽₁₇) residue classes: some wedge must drop.
        let (_, est) = d0n_estimate(&f, &Place::Finite(17), 20, 3, 50).unwrap();
        assert!(est < 1.0 && est > 0.0, "n=20 gave {est}");
    }

    #[test]
    fn two_point_estimate_dominates_hand_pairs() {
        let f = newton();
        let (_, est) = d0n_estimate(&f, &Place::Archimedean, 2, 9, 200).unwrap();
        // Hand pair on K_F: the two fixed-point directions (±1, 1), scaled
        // to height zero by the optimizer's own normalizer.
        let a = scale_to_zero_height(&f, (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)))
            .unwrap();
        let b = scale_to_zero_height(&f, (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)))
            .unwrap();
        let hand = wedge_complex(a, b).norm();
        assert!(est >= hand - 1e-6, "estimate {est} below hand pair {hand}");
    }

    #[test]
    fn estimates_respect_chain_bound() {
        for f in [tsq(), newton()] {
            for v in [Place::Archimedean, Place::Finite(2), Place::Finite(5)] {
                let rep = verify_tfd_inequality(&f, &v, &[2, 4, 8], 13).unwrap();
                for row in &rep.rows {
                    assert!(row.chain_ok, "n={} at {v}: chain violated", row.n);
                    assert!(
                        row.estimate <= (1.0 + row.slack) * row.bound + 1e-6,
                        "n={} at {v}: {} > {}",
                        row.n,
                        row.estimate,
                        (1.0 + row.slack) * row.bound
                    );
                }
            }
        }
    }

    #[test]
    fn squaring_map_estimates_decrease_toward_limit() {
        let rep =
            verify_tfd_inequality(&tsq(), &Place::Archimedean, &[2, 4, 8, 16], 7).unwrap();
        let es: Vec<f64> = rep.rows.iter().map(|r| r.estimate).collect();
        for w in es.windows(2) {
            assert!(w[1] <= w[0] + 1e-6, "estimates increased: {es:?}");
        }
        assert!(es[0] >= 2.0 - 1e-6);
        assert!(*es.last().unwrap() >= 1.0 - 1e-9, "limit is d⁰_∞ = 1");
        assert!(es.last().unwrap() - 1.0 <= 0.35, "16-point estimate far from limit");
    }

    #[test]
    fn deterministic_given_seed() {
        let f = newton();
        let (c1, e1) = d0n_estimate(&f, &Place::Archimedean, 5, 21, 60).unwrap();
        let (c2, e2) = d0n_estimate(&f, &Place::Archimedean, 5, 21, 60).unwrap();
        assert_eq!(e1, e2);
        match (&c1.lifts, &c2.lifts) {
            (ConfigLifts::Complex(a), ConfigLifts::Complex(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert_eq!(x.0, y.0);
                    assert_eq!(x.1, y.1);
                }
            }
            _ => panic!("expected complex lifts"),
        }
    }

    #[test]
    fn objective_invariant_under_unimodular_change() {
        let pts = vec![
            (Complex64::new(1.0, 0.2), Complex64::new(0.3, -1.0)),
            (Complex64::new(-0.5, 0.8), Complex64::new(1.0, 0.1)),
            (Complex64::new(0.9, -0.4), Complex64::new(-0.2, 0.7)),
        ];
        let before = raw_pair_sum(&pts);
        // M = [[2,3],[1,2]], det 1.
        let moved: Vec<(Complex64, Complex64)> = pts
            .iter()
            .map(|(a, b)| (2.0 * a + 3.0 * b, *a + 2.0 * b))
            .collect();
        let after = raw_pair_sum(&moved);
        assert!((before - after).abs() < 1e-9, "{before} vs {after}");
    }

    #[test]
    fn validate_rejects_off_set_lifts() {
        let f = tsq();
        let cfg = Configuration {
            n: 2,
            lifts: ConfigLifts::Rational(vec![Lift::from_i64(3, 1), Lift::from_i64(0, 1)]),
            objective: 0.0,
        };
        let err = cfg.validate(&f, &Place::Archimedean, 1e-7).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let dup = Configuration {
            n: 2,
            lifts: ConfigLifts::Rational(vec![Lift::from_i64(2, 1), Lift::from_i64(4, 2)]),
            objective: 0.0,
        };
        assert!(dup.validate(&f, &Place::Finite(3), 1e-7).is_err());
    }

    #[test]
    fn bad_n_list_rejected() {
        let f = tsq();
        assert!(verify_tfd_inequality(&f, &Place::Archimedean, &[4, 2], 1).is_err());
        assert!(verify_tfd_inequality(&f, &Place::Archimedean, &[], 1).is_err());
        assert!(d0n_estimate(&f, &Place::Archimedean, 1, 1, 10).is_err());
    }
}
