//! Iterate monomial bases H(m) and the exact identity det(A) = ±Res(F)^r.
//!
//! For N = t·d^k (2 ≤ t ≤ 2d−1, k ≥ 1) and m = N − 1, the degree-m forms
//!
//!   x^i y^{t−1−i} · (F₁^{(k)})^a (F₂^{(k)})^{k-fold mixture}
//!
//! built from iterates of F form a basis of the space of degree-m forms,
//! and the change-of-basis matrix A from the monomial basis satisfies
//! det(A) = ±Res(F)^r with r = (N² − N(t + k(d−1)))/(2d(d−1)) — an exact
//! rational identity this example verifies by fraction-free elimination.
//!
//! Run with: `cargo run --example basis_determinant`

use dyngreen::basis::{
    alpha, build_h, change_matrix_det, nearest_sigma, prop_exponent, sigma_elements,
    verify_proposition, SigmaIndex,
};
use dyngreen::forms::{rat_pow, MapPair};
use num_traits::{Signed, ToPrimitive};

fn main() -> dyngreen::Result<()> {
    let newton = MapPair::from_i64(&[1, 0, 1], &[0, 2, 0])?;
    let d = newton.d();
    println!("newton pair (x²+y², 2xy): d = {d}, Res = {}", newton.resultant());

    // The index set Σ = {t·d^k} below 40 for d = 2.
    let sigma: Vec<u64> = sigma_elements(2, 40).iter().map(|i| i.n).collect();
    println!("Σ ∩ [1, 40] = {sigma:?}");

    // Build H(m) for N = 4 (t = 2, k = 1) and show its members.
    let idx = SigmaIndex::new(2, 2, 1)?;
    let fam = build_h(&newton, &idx)?;
    println!("\nbasis family for N = {} (m = {}):", idx.n, idx.n - 1);
    for (j, g) in fam.members.iter().enumerate() {
        let cs: Vec<String> = g.coeffs().iter().map(|c| c.to_string()).collect();
        println!("  h_{j} = [{}]", cs.join(", "));
    }

    // The determinant identity, exact in ℚ.
    println!("\ndet(A) = ±Res(F)^r across Σ-indices:");
    for (t, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let idx = SigmaIndex::new(2, t, k)?;
        let det = change_matrix_det(&newton, &idx)?;
        let r = prop_exponent(&idx);
        let e = r.to_integer().to_u64().expect("small exponent");
        let power = rat_pow(&newton.resultant().abs(), e);
        let sign = if det.is_negative() { "−" } else { "+" };
        println!(
            "  N = {:>2} (t = {t}, k = {k}):  det A = {sign}{} = {sign}Res^{e}   α(N) = {}",
            idx.n,
            det.abs(),
            alpha(&idx)
        );
        assert_eq!(det.abs(), power, "exact power identity");
        assert!(verify_proposition(&newton, &idx)?);
    }

    // The same identity for a map with rational coefficients.
    let half = MapPair::from_i64(&[1, 0, 3], &[0, 1, 0])?.scale(&dyngreen::forms::rat(1, 2))?;
    let idx = SigmaIndex::new(2, 2, 1)?;
    println!(
        "\nscaled pair (F/2): Res = {}, det A = {}",
        half.resultant(),
        change_matrix_det(&half, &idx)?
    );
    assert!(verify_proposition(&half, &idx)?);

    // Every N ≥ 2 is within a bounded gap of Σ; nearest_sigma finds the
    // witness used when transferring bounds to general N.
    println!("\nnearest Σ-elements for d = 2:");
    for n in [5u64, 7, 11, 23] {
        let near = nearest_sigma(n, 2)?;
        println!("  N = {n:>2} → nearest t·d^k = {} (t = {}, k = {})", near.n, near.t, near.k);
    }

    Ok(())
}

