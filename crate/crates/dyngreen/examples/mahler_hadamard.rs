//! Mahler measures, discriminants, and Hadamard/Vandermonde inequalities.
//!
//! For a degree-N polynomial f with Mahler measure M(f), the discriminant
//! obeys |disc f| ≤ N^N · M(f)^{2N−2}, with equality for f = x² − 1. The
//! bound comes from writing disc f as a Vandermonde determinant in the
//! roots and applying Hadamard's inequality row by row. This example
//! computes all three ingredients and shows the inequality chain at work,
//! at the archimedean place and p-adically.
//!
//! Run with: `cargo run --example mahler_hadamard`

use dyngreen::bounds::{
    discriminant, hadamard_check, mahler_inequality_check, mahler_measure, vandermonde_check,
    UnivariatePoly,
};
use dyngreen::forms::{rat_int, Lift};
use dyngreen::places::Place;

fn main() -> dyngreen::Result<()> {
    println!("Mahler measures and discriminants:");
    let cases: [(&str, &[i64]); 5] = [
        ("x² − 1", &[1, 0, -1]),
        ("x² + x + 1", &[1, 1, 1]),
        ("2x + 4", &[2, 4]),
        ("x³ − 2", &[1, 0, 0, -2]),
        ("x² − x − 1", &[1, -1, -1]), // golden ratio: M = (1+√5)/2
    ];
    for (name, coeffs) in cases {
        let f = UnivariatePoly::from_i64(coeffs)?;
        let m = mahler_measure(&f)?;
        let n = f.degree();
        if n < 2 {
            println!("  {name:<12} M = {m:.12}  (degree < 2: no discriminant)");
            continue;
        }
        let disc = discriminant(&f)?;
        let margin = mahler_inequality_check(&f)?;
        println!(
            "  {name:<12} M = {m:<18.12} |disc| = {:<10.6} N^N·M^(2N−2) − |disc| = {margin:.6}",
            disc.abs_f64()
        );
        assert!(margin >= -1e-9, "the Mahler bound always holds");
    }

    // Equality case: x² − 1 has M = 1, disc = 4 = 2².
    let eq = mahler_inequality_check(&UnivariatePoly::from_i64(&[1, 0, -1])?)?;
    println!("\nequality for x² − 1: margin = {eq:.2e}");
    assert!(eq.abs() <= 1e-10);

    // The golden-ratio polynomial pins down the Mahler measure exactly.
    let golden = mahler_measure(&UnivariatePoly::from_i64(&[1, -1, -1])?)?;
    assert!((golden - (1.0 + 5.0f64.sqrt()) / 2.0).abs() <= 1e-10);

    // Hadamard's inequality |det| ≤ ∏ ‖rows‖₂ for an exact rational
    // matrix, and its ultrametric analogue v_p(det) ≥ Σ min row valuation.
    let m = vec![
        vec![rat_int(1), rat_int(2), rat_int(3)],
        vec![rat_int(0), rat_int(4), rat_int(10)],
        vec![rat_int(-2), rat_int(1), rat_int(5)],
    ];
    println!("\nHadamard margins for a 3×3 integer matrix:");
    for v in [Place::Archimedean, Place::finite(2)?, Place::finite(5)?] {
        let margin = hadamard_check(&m, &v)?;
        println!("  v = {v}: margin = {margin:.6}");
        assert!(margin >= -1e-9);
    }

    // The homogeneous Vandermonde identity behind the discriminant bound:
    // ∏_{i≠j} (z_i ∧ z_j) equals det(S)² for the monomial matrix S, checked
    // here exactly in ℚ (residual 0).
    let pts = vec![
        Lift::from_i64(1, 1),
        Lift::from_i64(-1, 1),
        Lift::from_i64(2, 1),
        Lift::from_i64(1, 0),
    ];
    let residual = vandermonde_check(&pts)?;
    println!("\nhomogeneous Vandermonde residual for 4 rational points: {residual}");
    assert_eq!(residual, 0.0, "the identity is exact");

    Ok(())
}
