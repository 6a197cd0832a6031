//! A tour of the exact calculus underneath the engine.
//!
//! Gaussian-rational scalars, graded polynomial arithmetic, Lie brackets,
//! differential forms with contraction, and the Poincaré homotopy — all
//! with exact coefficients, so each identity printed below is an equality
//! of rational numbers.
//!
//! ```text
//! cargo run -p dulac --example calculus
//! ```

use dulac::diff_form::{contract, poincare_integrate, DiffForm};
use dulac::poly::Poly;
use dulac::scalar::Scalar;
use dulac::vector_field::{lie_bracket, VectorField};

fn main() {
    // scalars: arbitrary-precision rationals with an imaginary unit
    let a = Scalar::from_rational(3, 4);
    let b = &Scalar::from_rational(-2, 5) * &Scalar::i();
    let c = &a + &b;
    println!("scalar arithmetic: 3/4 + (-2/5)i = {c}");
    println!("conjugate {}, norm {}", c.conj(), c.norm_sqr());

    // polynomials: graded-lexicographic terms, exact products
    let p = &Poly::var(2, 0) + &Poly::monomial(2, vec![0, 2], Scalar::from_int(-3));
    let q = &p * &p;
    println!("\n(x1 - 3 x2^2)^2 = {q}");

    // vector fields act on functions as derivations
    let saddle = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
    let g = Poly::monomial(2, vec![1, 1], Scalar::one());
    println!("\nsaddle applied to x1 x2: {}", saddle.apply_to(&g));

    // the Lie bracket, graded and truncated
    let w = VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
    let bracket = lie_bracket(&saddle, &w, 8).unwrap();
    println!("[saddle, x1^2 d1] = {bracket}");

    // contraction of the volume form computes a divergence-flavored dual
    let omega = DiffForm::volume(2);
    let alpha = contract(&saddle, &omega).unwrap();
    println!("\ni_saddle (dx1 ^ dx2) = {alpha}");
    println!("d(i_saddle omega) = {}", alpha.exterior_derivative());

    // the Poincaré homotopy inverts d on closed 1-forms
    let primitive = poincare_integrate(&alpha).unwrap();
    println!("primitive of the contraction: {primitive}");
    let dg = DiffForm::function(primitive.clone()).exterior_derivative();
    assert_eq!(dg, alpha);
    println!("d(primitive) reproduces the 1-form exactly");
}
