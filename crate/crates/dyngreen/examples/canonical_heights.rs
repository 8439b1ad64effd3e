//! Global canonical heights over ℚ: place sums, orbit oracle, Green sums.
//!
//! The canonical height ĥ_φ(P) = Σ_v Ĥ_{F,v}(P) of a rational point is
//! computed by summing local heights of a normalized integer model over
//! the archimedean place and the bad primes — every other place
//! contributes exactly zero. Two independent routes must agree:
//!
//!   1. the place decomposition with certified local tails, and
//!   2. the orbit oracle h(φⁿP)/dⁿ with its uniform naive-vs-canonical gap.
//!
//! The same local data assembles the global Green identity
//! Σ_v g_v(z, w) = ĥ(z) + ĥ(w).
//!
//! Run with: `cargo run --example canonical_heights`

use dyngreen::global::{
    canonical_height, canonical_height_orbit_oracle, green_sum_identity_check, orbit_step,
    preperiodic_detect, RationalPoint,
};
use dyngreen::forms::MapPair;

fn main() -> dyngreen::Result<()> {
    let tsq = MapPair::from_i64(&[1, 0, 0], &[0, 0, 1])?;
    let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0])?;
    let tol = 1e-10;

    // For z ↦ z², the canonical height IS the naive height log max(|a|,|b|).
    println!("squaring map: canonical = naive height");
    for s in ["[2:1]", "[3:2]", "[1:1]", "7/3"] {
        let p = RationalPoint::parse(s)?;
        let h = canonical_height(&tsq, &p, tol)?;
        println!(
            "  h^({}) = {:.12} ± {:.1e}   naive = {:.12}",
            p,
            h.value,
            h.err,
            p.naive_height()
        );
        assert!((h.value - p.naive_height()).abs() <= h.err + 1e-12);
    }

    // Newton's method for z² − 1 sends every rational point toward ±1;
    // its fixed points and their preimages have height zero.
    println!("\nnewton map heights:");
    for s in ["[1:1]", "[-1:1]", "[0:1]", "[3:1]"] {
        let p = RationalPoint::parse(s)?;
        let h = canonical_height(&newton, &p, tol)?;
        println!("  h^({s}) = {:.12} ± {:.1e}", h.value, h.err);
    }

    // Orbit oracle: push the point forward n steps, take h(φⁿP)/dⁿ. The
    // two routes agree within the sum of their certified radii.
    println!("\ndecomposition vs orbit oracle for the squaring map at [3:2]:");
    let p = RationalPoint::parse("[3:2]")?;
    let dec = canonical_height(&tsq, &p, tol)?;
    let orc = canonical_height_orbit_oracle(&tsq, &p, 12)?;
    println!("  decomposition: {:.12} ± {:.1e}", dec.value, dec.err);
    println!(
        "  orbit oracle:  {:.12} ± {:.1e}  (n = {})",
        orc.value, orc.err, orc.n_used
    );
    assert!((dec.value - orc.value).abs() <= dec.err + orc.err + 1e-12);

    // The orbit itself: exact big-integer coordinates, reduced each step.
    println!("\nfirst newton steps from [5:1]:");
    let mut q = RationalPoint::parse("[5:1]")?;
    for k in 0..4 {
        println!("  step {k}: {q}  (naive height {:.6})", q.naive_height());
        q = orbit_step(&newton, &q)?;
    }

    // Global Green identity Σ_v g_v(z, w) = ĥ(z) + ĥ(w); the residual is
    // bounded by the requested tolerance.
    println!("\nglobal Green identity residuals:");
    for (map, name, z, w) in [
        (&tsq, "squaring", "[2:1]", "[0:1]"),
        (&tsq, "squaring", "[3:2]", "[1:1]"),
        (&newton, "newton", "[2:1]", "[3:1]"),
    ] {
        let zp = RationalPoint::parse(z)?;
        let wp = RationalPoint::parse(w)?;
        let resid = green_sum_identity_check(map, &zp, &wp, 1e-8)?;
        println!("  {name:<9} z = {z:<6} w = {w:<6} residual = {resid:.2e}");
        assert!(resid <= 1e-8);
    }

    // Preperiodicity is decidable from exact orbits plus a height gap:
    // wandering points are caught by exceeding the uniform naive-canonical
    // gap; preperiodic points revisit.
    println!("\npreperiodicity under the newton map:");
    for s in ["[1:1]", "[0:1]", "[2:1]"] {
        let p = RationalPoint::parse(s)?;
        let verdict = preperiodic_detect(&newton, &p, 64)?;
        println!("  {s} → {verdict:?}");
    }

    Ok(())
}
