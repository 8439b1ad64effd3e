//! Pairwise discriminant-energy sums D(z₁,…,z_N) and their lower bounds.
//!
//! For N distinct points with lifts z_i, the sum
//!
//!   D(z₁,…,z_N) = Σ_{i<j} −2 log|z_i ∧ z_j|_v + 2(N−1) Σ_i Ĥ(z_i) − N(N−1)·r(F)
//!
//! is lift-invariant and bounded below by an explicit −C·N·log N. For the
//! squaring pair at the archimedean place, the N-th roots of unity realize
//! D = −N·log N exactly — the Fekete-optimal configuration. This example
//! evaluates D on several configurations and compares it against the two
//! right-hand sides and the effective constant C.
//!
//! Run with: `cargo run --example discriminant_sums`

use dyngreen::basis::SigmaIndex;
use dyngreen::bounds::{bound_report, corollary_rhs, dsum, dsum_complex, effective_c, technical_rhs};
use dyngreen::dynheight::escape_radius_bound;
use dyngreen::forms::{Lift, MapPair};
use dyngreen::places::Place;
use num_complex::Complex64;
use std::f64::consts::TAU;

fn main() -> dyngreen::Result<()> {
    let tsq = MapPair::from_i64(&[1, 0, 0], &[0, 0, 1])?;
    let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0])?;
    let arch = Place::Archimedean;
    let tol = 1e-10;

    // Roots of unity under z ↦ z²: D = −N log N exactly in the limit.
    println!("squaring pair, N-th roots of unity (expect −N·log N):");
    for n in [2usize, 4, 8, 16] {
        let pts: Vec<(Complex64, Complex64)> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                (Complex64::new(t.cos(), t.sin()), Complex64::new(1.0, 0.0))
            })
            .collect();
        let d = dsum_complex(&tsq, &pts, tol)?;
        let target = -(n as f64) * (n as f64).ln();
        println!("  N = {n:>2}:  D = {d:>14.9}   −N log N = {target:>14.9}");
        assert!((d - target).abs() <= 1e-6 * target.abs().max(1.0));
    }

    // Rational configurations through the exact path.
    println!("\nrational configurations for the squaring pair:");
    let configs: [(&str, Vec<Lift>); 3] = [
        ("{0, ∞}", vec![Lift::from_i64(0, 1), Lift::from_i64(1, 0)]),
        ("{±1}", vec![Lift::from_i64(1, 1), Lift::from_i64(-1, 1)]),
        (
            "{0, ∞, ±1}",
            vec![
                Lift::from_i64(0, 1),
                Lift::from_i64(1, 0),
                Lift::from_i64(1, 1),
                Lift::from_i64(-1, 1),
            ],
        ),
    ];
    for (name, pts) in &configs {
        let d = dsum(&tsq, pts, &arch, tol)?;
        println!("  {name:<10} N = {}:  D = {d:+.9}", pts.len());
    }
    // {0, ∞} is a zero-energy pair: orthogonal lifts of height zero.
    assert!(dsum(&tsq, &configs[0].1, &arch, tol)?.abs() <= 1e-9);

    // The effective constant C in D ≥ −C·N·log N, per place.
    println!("\neffective constants C (D ≥ −C·N·log N):");
    for (label, f) in [("squaring", &tsq), ("newton", &newton)] {
        for v in [Place::Archimedean, Place::finite(2)?, Place::finite(7)?] {
            let c = effective_c(f, &v)?;
            println!("  {label:<9} v = {v:<4} C = {c:.6}");
        }
    }
    // Good reduction at an odd prime makes every term vanish: C = 0.
    assert_eq!(effective_c(&newton, &Place::finite(7)?)?, 0.0);

    // The two right-hand sides for N ∈ Σ, and a full report row.
    let idx = SigmaIndex::new(2, 2, 1)?; // N = 4
    let r_up = escape_radius_bound(&newton, &arch)?.log_r_up;
    println!(
        "\nnewton pair, N = 4: technical rhs = {:.6}, corollary rhs = {:.6}",
        technical_rhs(&newton, &arch, &idx, r_up),
        corollary_rhs(&newton, &arch, &idx, r_up)
    );

    let pts = vec![
        Lift::from_i64(1, 1),
        Lift::from_i64(-1, 1),
        Lift::from_i64(0, 1),
        Lift::from_i64(1, 0),
    ];
    let rep = bound_report(&newton, &arch, &idx, &pts, tol)?;
    println!("\nbound report for {{±1, 0, ∞}} under the newton pair:");
    println!("  observed D        = {:+.9}", rep.observed_sum);
    println!("  rhs (technical)   = {:+.9}", rep.rhs_technical);
    println!("  rhs (corollary)   = {:+.9}", rep.rhs_corollary);
    println!("  −C·N·log N        = {:+.9}", -rep.c_effective * 4.0 * 4.0f64.ln());
    assert!(rep.observed_sum >= rep.rhs_technical - 1e-9);
    assert!(rep.observed_sum >= rep.rhs_corollary - 1e-9);
    assert!(rep.observed_sum >= -rep.c_effective * 4.0 * 4.0f64.ln() - 1e-9);

    Ok(())
}
