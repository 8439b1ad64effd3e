//! Two-point Green's functions g_φ(z, w) on ℙ¹, archimedean and p-adic.
//!
//! The pairing g_φ(z, w) = −log|z ∧ w|_v + Ĥ_F(z) + Ĥ_F(w) is the
//! Arakelov–Green's function of the canonical measure: symmetric, finite
//! off the diagonal, +∞ on it, and lift-invariant. For the squaring pair
//! at the archimedean place it reduces to the classical logarithmic
//! potential of the unit circle,
//!
//!   g(z, w) = −log|z − w| + log⁺|z| + log⁺|w|.
//!
//! Run with: `cargo run --example green_pairs`

use dyngreen::bounds::{naive_green, P1C};
use dyngreen::dynheight::{green, green_complex};
use dyngreen::forms::{Lift, MapPair};
use dyngreen::places::Place;
use num_complex::Complex64;

fn main() -> dyngreen::Result<()> {
    let tsq = MapPair::from_i64(&[1, 0, 0], &[0, 0, 1])?;
    let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0])?;
    let tol = 1e-12;

    println!("squaring pair at the archimedean place:");
    let cases = [((2i64, 1i64), (0i64, 1i64)), ((2, 1), (1, 1)), ((3, 2), (-1, 1))];
    for ((a, b), (c, d)) in cases {
        let z = Lift::from_i64(a, b);
        let w = Lift::from_i64(c, d);
        let g = green(&tsq, &z, &w, &Place::Archimedean, tol)?;
        // Classical check: the potential-theory formula for the unit circle.
        let zc = P1C::Finite(Complex64::new(a as f64 / b as f64, 0.0));
        let wc = P1C::Finite(Complex64::new(c as f64 / d as f64, 0.0));
        let classical = naive_green(zc, wc)?;
        println!(
            "  g([{a}:{b}], [{c}:{d}]) = {:+.12}   classical = {:+.12}",
            g.value, classical
        );
        assert!((g.value - classical).abs() <= g.err + 1e-9);
    }

    // Symmetry g(z, w) = g(w, z), here for the newton pair.
    let z = Lift::from_i64(3, 1);
    let w = Lift::from_i64(1, 2);
    let gzw = green(&newton, &z, &w, &Place::Archimedean, tol)?;
    let gwz = green(&newton, &w, &z, &Place::Archimedean, tol)?;
    println!(
        "\nsymmetry (newton pair): g(z,w) = {:+.12}, g(w,z) = {:+.12}",
        gzw.value, gwz.value
    );
    assert!((gzw.value - gwz.value).abs() <= gzw.err + gwz.err + 1e-12);

    // Coincident points: the diagonal value is +∞ by convention.
    let diag = green(&tsq, &z, &Lift::from_i64(6, 2), &Place::Archimedean, tol)?;
    println!("diagonal: g([3:1], [6:2]) = {} (projectively equal lifts)", diag.value);
    assert!(diag.is_infinite());

    // p-adic values: at a good-reduction prime the pairing is an integer
    // multiple of log p — here the 5-adic pairing for the squaring map is
    // log 5 times the intersection multiplicity of the reductions.
    println!("\n5-adic pairings for the squaring pair (log 5 = {:.6}):", 5.0f64.ln());
    for ((a, b), (c, d)) in [((1i64, 1i64), (6i64, 1i64)), ((1, 1), (2, 1)), ((5, 1), (0, 1))] {
        let g = green(
            &tsq,
            &Lift::from_i64(a, b),
            &Lift::from_i64(c, d),
            &Place::finite(5)?,
            tol,
        )?;
        println!(
            "  g_5([{a}:{b}], [{c}:{d}]) = {:+.12} = {:+.3}·log 5",
            g.value,
            g.value / 5.0f64.ln()
        );
        // Local heights are exact here; err only charges f64 rounding.
        assert!(g.err <= 1e-14, "finite-place pairings carry no truncation error");
    }

    // Complex arguments via green_complex: points off the rational line.
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let g = green_complex(&tsq, (i, one), (one * 2.0, one), tol)?;
    println!(
        "\ncomplex: g(i, 2) for the squaring pair = {:+.12}",
        g.value
    );
    // −log|i − 2| + log⁺|i| + log⁺|2| = −(1/2)log 5 + log 2.
    let expected = -(5.0f64.ln()) / 2.0 + 2.0f64.ln();
    assert!((g.value - expected).abs() <= g.err + 1e-9);
    println!("  matches −(1/2)·log 5 + log 2 = {expected:+.12}");

    Ok(())
}
