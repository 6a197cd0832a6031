//! Normalize a planar saddle with one removable quadratic term.
//!
//! The field `x' = x + x^2, y' = -y` has spectrum `(1, -1)`. The
//! quadratic term has weight 1, so a single degree-2 generator removes it
//! — and because that generator brackets to zero with everything it
//! creates, the field linearizes exactly at every order.
//!
//! ```text
//! cargo run -p dulac --example normalize
//! ```

use dulac::normal_form::normalize;
use dulac::scalar::Scalar;
use dulac::vector_field::VectorField;

fn main() {
    let x = &VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)])
        + &VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
    println!("input field:");
    println!("    {x}");

    let result = normalize(&x, 6, false).unwrap();

    println!("\nspectrum: {:?}", result.linear.gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("normal form (order 6):");
    println!("    {}", result.normalized);
    println!("linearized: {}", result.is_linearized());

    println!("\ngenerators used, degree by degree:");
    for g in &result.generators {
        println!("    degree {}: {}", g.degree, g.field);
    }

    println!("\nchange of coordinates (new in terms of old):");
    println!("{}", result.transform);
    println!("and back:");
    println!("{}", result.inverse_transform);

    // Everything is exact: the commutation residual with the semisimple
    // part is the zero field, not a small one.
    assert!(result.residual.is_zero());
    println!("[S, normal form] = 0 holds exactly");
}
