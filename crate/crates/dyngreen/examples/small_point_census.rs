//! Small-point censuses, preperiodic points, and Lattès pairs.
//!
//! A census enumerates every rational point [a:b] with |a|, |b| ≤ e^B and
//! reports those with canonical height below a threshold θ. For z ↦ z²
//! the answer is classical: the only height-zero points are 0, ∞, ±1, and
//! the smallest positive height in any window is log 2. Lattès pairs from
//! elliptic curves supply richer examples: 2-torsion x-coordinates are
//! preperiodic, so they surface as height-zero witnesses.
//!
//! Run with: `cargo run --example small_point_census`

use dyngreen::forms::{rat_int, MapPair};
use dyngreen::global::{lattes_from_curve, preperiodic_detect, small_point_census, RationalPoint};

fn main() -> dyngreen::Result<()> {
    let tsq = MapPair::from_i64(&[1, 0, 0], &[0, 0, 1])?;

    // Census for the squaring map over |a|, |b| ≤ e^1.2 ≈ 3.3.
    let census = small_point_census(&tsq, 1.2, 0.05)?;
    println!(
        "squaring map census (B = {}, θ = {}): {} witnesses",
        census.bound, census.theta, census.count
    );
    for w in &census.witnesses {
        println!(
            "  {}  h^ = {:.2e} ± {:.1e}  preperiodic = {}",
            w.point, w.hhat, w.err, w.preperiodic
        );
    }
    assert_eq!(census.count, 4, "exactly 0, ∞, 1, −1");
    assert!(census.witnesses.iter().all(|w| w.preperiodic));

    // The height spectrum has a gap: the smallest positive value in the
    // window is log 2, attained at [2:1] and friends.
    let min_pos = census.min_positive_height.expect("window contains wandering points");
    println!(
        "smallest positive height in window = {min_pos:.12} (log 2 = {:.12})",
        2.0f64.ln()
    );
    assert!((min_pos - 2.0f64.ln()).abs() <= 1e-9);

    // A Lattès pair: the degree-4 map induced on x-coordinates by
    // doubling on y² = x³ − x.
    let lat = lattes_from_curve(&rat_int(-1), &rat_int(0))?;
    println!("\nlattes pair for y² = x³ − x:");
    let f1: Vec<String> = lat.f1().coeffs().iter().map(|c| c.to_string()).collect();
    let f2: Vec<String> = lat.f2().coeffs().iter().map(|c| c.to_string()).collect();
    println!("  F1 = [{}]", f1.join(", "));
    println!("  F2 = [{}]", f2.join(", "));
    println!("  d = {}, Res = {}", lat.d(), lat.resultant());

    // The 2-torsion x-coordinates {0, ±1, ∞} are preperiodic: doubling
    // kills 2-torsion, so each maps to the image of the origin.
    println!("  2-torsion x-coordinates:");
    for s in ["[0:1]", "[1:1]", "[-1:1]", "[1:0]"] {
        let p = RationalPoint::parse(s)?;
        let img = dyngreen::global::orbit_step(&lat, &p)?;
        let verdict = preperiodic_detect(&lat, &p, 32)?;
        println!("    {s} → {img}  ({verdict:?})");
        assert!(verdict.is_preperiodic());
    }

    // A census over the Lattès map finds exactly the torsion x-coordinates
    // in a small window: generic points on y² = x³ − x have height ≫ θ.
    let census = small_point_census(&lat, 1.2, 0.01)?;
    println!(
        "  census (B = 1.2, θ = 0.01): {} witnesses:",
        census.count
    );
    for w in &census.witnesses {
        println!("    {}  h^ = {:.2e}  preperiodic = {}", w.point, w.hhat, w.preperiodic);
    }
    assert!(census.count >= 4, "at least the 2-torsion appears");

    // Singular curves are rejected: y² = x³ has a cusp, no Lattès pair.
    let err = lattes_from_curve(&rat_int(0), &rat_int(0)).unwrap_err();
    println!("\nsingular curve rejected: {err}");

    Ok(())
}
