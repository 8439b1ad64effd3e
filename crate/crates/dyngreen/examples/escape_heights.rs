//! Local dynamical heights Ĥ_F, escape radii, and filled-Julia membership.
//!
//! At each place v of ℚ, the homogeneous escape rate
//!
//!   Ĥ_{F,v}(z) = lim_k d^{−k}·log‖F^{(k)}(z)‖_v
//!
//! exists for every nonzero lift z and satisfies the functional equation
//! Ĥ(F(z)) = d·Ĥ(z). This example evaluates it with certified error radii,
//! finds escape radii for the filled Julia set, and classifies points
//! against K_F = {Ĥ ≤ 0}.
//!
//! Run with: `cargo run --example escape_heights`

use dyngreen::dynheight::{escape_radius_bound, filled_julia_member, hhat, normalize_lift, r_of};
use dyngreen::forms::{rat, Lift, MapPair};
use dyngreen::places::Place;

fn main() -> dyngreen::Result<()> {
    let tsq = MapPair::from_i64(&[1, 0, 0], &[0, 0, 1])?; // z ↦ z²
    let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0])?; // z ↦ (z²+1)/(2z)
    let tol = 1e-12;

    // For the squaring pair, Ĥ at the archimedean place is exactly
    // log max(|z₀|, |z₁|): the height of [2:1] is log 2.
    println!("squaring pair, archimedean place:");
    for (a, b) in [(2i64, 1), (1, 1), (3, 2), (0, 1)] {
        let h = hhat(&tsq, &Lift::from_i64(a, b), &Place::Archimedean, tol)?;
        println!(
            "  H^([{a}:{b}]) = {:+.12}  (err ≤ {:.1e}, {} terms)",
            h.value, h.err, h.iters
        );
    }
    let h2 = hhat(&tsq, &Lift::from_i64(2, 1), &Place::Archimedean, tol)?;
    assert!((h2.value - 2.0f64.ln()).abs() <= h2.err + 1e-12);

    // Good reduction at p: the local height of any coprime integer lift is
    // exactly zero, certified with zero error (the recursion terminates).
    println!("\nnewton pair at finite places:");
    for p in [3u64, 5, 7] {
        let h = hhat(&newton, &Lift::from_i64(7, 5), &Place::finite(p)?, tol)?;
        println!("  p = {p}: H^([7:5]) = {} (err = {})", h.value, h.err);
        assert_eq!((h.value, h.err), (0.0, 0.0), "good reduction is exact");
    }
    // p = 2 divides Res = 4: bad reduction, the height can be negative.
    let h = hhat(&newton, &Lift::from_i64(1, 1), &Place::finite(2)?, tol)?;
    println!("  p = 2: H^([1:1]) = {:+.12} (bad reduction)", h.value);

    // The functional equation H^(F(z)) = d·H^(z), checked at both kinds of
    // place.
    println!("\nfunctional equation H^(F z) = d·H^(z):");
    for v in [Place::Archimedean, Place::finite(2)?] {
        let z = Lift::from_i64(3, 1);
        let hz = hhat(&newton, &z, &v, tol)?;
        let hfz = hhat(&newton, &newton.eval(&z), &v, tol)?;
        let gap = (hfz.value - 2.0 * hz.value).abs();
        println!("  v = {v}:  |H^(Fz) − 2·H^(z)| = {gap:.2e}");
        assert!(gap <= 2.0 * hz.err + hfz.err + 1e-12);
    }

    // Escape radius: beyond r_up the map at least doubles the sup norm, so
    // the filled Julia set lives in the closed ball of radius r_up.
    println!("\nescape radii (archimedean):");
    for (label, f) in [("squaring", &tsq), ("newton", &newton)] {
        let e = escape_radius_bound(f, &Place::Archimedean)?;
        println!("  {label:<9} r_up = {:.6}  (log r_up = {:+.6})", e.r_up, e.log_r_up);
    }

    // Membership in K_F = {H^ ≤ 0}: the unit circle never escapes under
    // z ↦ z², points outside do.
    println!("\nfilled-Julia classification for the squaring pair:");
    for (a, b) in [(1i64, 1), (1, 2), (3, 1)] {
        let class = filled_julia_member(&tsq, &Lift::from_i64(a, b), &Place::Archimedean, 1e-9)?;
        println!("  [{a}:{b}] → {class:?}");
    }

    // normalize_lift rescales a lift to move its height into a canonical
    // window: [−ε, ε] at the archimedean place, (−log p, 0] at p.
    let z = Lift::new(rat(200, 1), rat(100, 1))?;
    let zn = normalize_lift(&tsq, &z, &Place::Archimedean, 1e-9)?;
    let hn = hhat(&tsq, &zn, &Place::Archimedean, tol)?;
    println!(
        "\nnormalize_lift: H^([200:100]) = {:.4} → H^(normalized) = {:+.2e}",
        hhat(&tsq, &z, &Place::Archimedean, tol)?.value,
        hn.value
    );
    assert!(hn.value.abs() <= 1e-9 + hn.err);

    // r(F) = log|Res F|_v/(d(d−1)) enters every bound downstream; the
    // product formula over all places makes the global sum vanish.
    println!("\nr(F) for the newton pair (Res = 4):");
    let places = [Place::Archimedean, Place::finite(2)?, Place::finite(3)?];
    for v in &places {
        println!("  r_{v}(F) = {:+.12}", r_of(&newton, v));
    }
    let total: f64 = places.iter().map(|v| r_of(&newton, v)).sum();
    println!("  sum over inf, 2, 3 = {total:+.2e}  (product formula)");
    assert!(total.abs() <= 1e-12);

    Ok(())
}
