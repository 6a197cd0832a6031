//! Volume-preserving normalization of a divergence-free field.
//!
//! The input is a divergence-free perturbation of the saddle. Asking for
//! the isochore variant makes the engine certify, exactly, that every
//! generator is divergence free, that the accumulated coordinate change
//! has Jacobian determinant 1, and that the normal form is again
//! divergence free. In the plane a divergence-free normal form has a
//! first integral, produced by contracting the volume form and applying
//! the Poincaré homotopy.
//!
//! ```text
//! cargo run -p dulac --example isochore
//! ```

use dulac::integrability::isochore_first_integral;
use dulac::normal_form::normalize;
use dulac::poly::Poly;
use dulac::scalar::Scalar;
use dulac::vector_field::VectorField;

fn main() {
    // x' = x + x^2, y' = -y - 2xy: divergence (1 + 2x) + (-1 - 2x) = 0
    let x = VectorField::from_components(vec![
        &Poly::var(2, 0) + &Poly::monomial(2, vec![2, 0], Scalar::one()),
        &(-&Poly::var(2, 1)) + &Poly::monomial(2, vec![1, 1], Scalar::from_int(-2)),
    ])
    .unwrap();
    println!("input field:        {x}");
    println!("input divergence:   {}", x.divergence());

    let result = normalize(&x, 6, true).unwrap();
    let cert = result.isochore.as_ref().expect("certificate was requested");

    println!("\nnormal form:        {}", result.normalized);
    println!("generator divergences: {:?}",
        cert.generator_divergences.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("det(D transform) - 1:  {}", cert.jacobian_defect);
    println!("normal form divergence: {}", cert.normalized_divergence);
    println!("certificate clean:  {}", cert.is_clean());

    // contract the volume form with the normal form and integrate
    let fi = isochore_first_integral(std::slice::from_ref(&result.normalized)).unwrap();
    println!("\ncontraction 1-form: {}", fi.one_form);
    println!("first integral g:   {}", fi.integral);
    assert!(result.normalized.apply_to(&fi.integral).is_zero());
    println!("X(g) = 0 holds exactly");
}
