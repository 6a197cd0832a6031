//! Normalize a commuting family of fields with one change of coordinates.
//!
//! The first field drives the normalization; the same sequence of Lie
//! transforms is applied to the rest of the family. Because the family
//! commutes exactly, every transformed field ends up invariant under the
//! semisimple part of the first — the engine records those commutation
//! residuals, and they are zero fields.
//!
//! ```text
//! cargo run -p dulac --example simultaneous
//! ```

use dulac::normal_form::normalize_simultaneous;
use dulac::scalar::Scalar;
use dulac::vector_field::VectorField;

fn main() {
    // base field: spectrum (1, -1, 0) with a removable quadratic term
    let base = &VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1), Scalar::zero()])
        + &VectorField::monomial(3, vec![2, 0, 0], 0, Scalar::one());
    // partner: a diagonal field commuting with the base
    let partner = VectorField::diagonal(&[Scalar::zero(), Scalar::one(), Scalar::from_int(-1)]);

    println!("base field:    {base}");
    println!("partner field: {partner}");

    let family = [base, partner];
    let sn = normalize_simultaneous(&family, 6, 10).unwrap();

    println!("\nafter the shared change of coordinates:");
    for (k, x) in sn.transformed.iter().enumerate() {
        println!("    field {k}: {x}");
    }
    println!("\ncommutation residuals with the semisimple part:");
    for (k, r) in sn.residuals.iter().enumerate() {
        println!("    [S, field {k}] = {r}");
        assert!(r.is_zero());
    }
    println!(
        "\nresonance relations of the base spectrum (bound {}): {:?}",
        sn.resonances.bound,
        sn.resonances.relations.iter().map(|r| r.c.clone()).collect::<Vec<_>>()
    );
}
