//! Dynamical Green's functions and canonical heights for rational maps on ℙ¹.
//!
//! A rational map φ: ℙ¹ → ℙ¹ of degree d ≥ 2 over ℚ is presented by a pair of
//! homogeneous degree-d forms F = (F₁, F₂) with nonzero resultant. This crate
//! computes, exactly where the objects are algebraic and with certified error
//! radii where they are limits:
//!
//! - exact homogeneous resultants (fraction-free Sylvester determinants),
//!   compositions and iterates of map pairs, and the cofactor identities
//!   g·F = Res(F)·(monomial) that power every later bound ([`forms`]);
//! - places of ℚ (archimedean and p-adic), exact valuations, good/bad
//!   reduction, and the product formula ([`places`]);
//! - the homogeneous escape-rate (dynamical height) Ĥ_F at each place, the
//!   two-variable Arakelov–Green's function g_φ, filled-Julia membership, and
//!   explicit escape radii ([`dynheight`]);
//! - iterate monomial bases H(m) of forms of degree m = N−1 for N = t·dᵏ and
//!   the exact identity det(A) = ±Res(F)^r for the change-of-basis matrix
//!   ([`basis`]);
//! - Mahler/discriminant inequalities, Hadamard bounds, homogeneous
//!   Vandermonde identities, pairwise Green-energy sums D_φ, and effective
//!   lower bounds D_φ ≥ −C·N·log N ([`bounds`]);
//! - transfinite-diameter estimates d⁰_n(K_F) by deterministic seeded Fekete
//!   search, with the comparison against exp(−r(F)) ([`tfd`]);
//! - global canonical heights over ℚ as sums of local terms, an independent
//!   orbit oracle, small-point censuses, preperiodicity detection, and Lattès
//!   pairs from elliptic curves ([`global`]);
//! - a thin report-oriented command-line front end ([`cli`]).
//!
//! # Runnable examples
//!
//! Each major capability has a self-contained example under `examples/`:
//!
//! ```text
//! cargo run --example resultants            # exact Res, cofactors, iterate powers
//! cargo run --example escape_heights        # Ĥ_F per place, escape radii, K_F tests
//! cargo run --example green_pairs           # Arakelov-Green values g_φ(z,w)
//! cargo run --example basis_determinant     # H(m) bases and det(A) = ±Res^r
//! cargo run --example mahler_hadamard       # Mahler, discriminant, Hadamard checks
//! cargo run --example discriminant_sums     # D_φ at roots of unity, -C N log N bounds
//! cargo run --example transfinite_diameter  # Fekete search for d⁰_n(K_F)
//! cargo run --example canonical_heights     # global ĥ, orbit oracle, Green sums
//! cargo run --example small_point_census    # censuses, torsion, Lattès maps
//! ```
//!
//! # Conventions
//!
//! Lifts z = (z₀, z₁) ∈ K² carry the sup norm ‖z‖ = max(|z₀|, |z₁|); the wedge
//! is z ∧ w = z₀w₁ − z₁w₀. Binary forms store coefficients leading-first
//! (x^d, x^{d−1}y, …, y^d). All rational arithmetic is exact arbitrary
//! precision; floating results are IEEE doubles accompanied by an error radius
//! that accounts for series truncation (certified tail bounds) and rounding.
//!
//! Determinism: every randomized routine takes an explicit seed and produces
//! identical results for identical inputs, independent of thread count.

pub mod basis;
pub mod bounds;
pub mod cli;
pub mod dynheight;
pub mod error;
pub mod forms;
pub mod global;
pub mod places;
pub mod roots;
pub mod tfd;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default numerical tolerance for height/Green computations.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default RNG seed for optimizers and samplers.
pub const DEFAULT_SEED: u64 = 0;

/// Default cap on the bit size of any single coefficient numerator or
/// denominator produced by composition, iteration, or determinant expansion.
/// Override with the `DYNGREEN_MAX_BITS` environment variable.
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;

/// Default cap on the basis size N = t·d^k accepted by [`basis::build_h`].
pub const DEFAULT_MAX_BASIS: u64 = 64;

/// Effective coefficient-size limit in bits, honoring `DYNGREEN_MAX_BITS`.
pub fn max_bits() -> u64 {
    std::env::var("DYNGREEN_MAX_BITS")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .filter(|&b| b >= 64)
        .unwrap_or(DEFAULT_MAX_BITS)
}

/// Effective basis-size limit, honoring `DYNGREEN_MAX_BASIS`.
pub fn max_basis() -> u64 {
    std::env::var("DYNGREEN_MAX_BASIS")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .filter(|&b| b >= 2)
        .unwrap_or(DEFAULT_MAX_BASIS)
}
