//! The four integrability checks on a field-and-integral family.
//!
//! A family of `m` vector fields and `n - m` functions in dimension `n`
//! is integrable when the fields commute pairwise, every function is
//! invariant under every field, the fields are generically independent,
//! and so are the differentials of the functions. All four checks are
//! exact polynomial identities here.
//!
//! ```text
//! cargo run -p dulac --example integrability
//! ```

use dulac::integrability::check_integrability;
use dulac::poly::Poly;
use dulac::scalar::Scalar;
use dulac::vector_field::VectorField;

fn report(label: &str, fields: &[VectorField], integrals: &[Poly]) {
    match check_integrability(fields, integrals, 8) {
        Ok(r) => {
            println!("{label}:");
            println!("    commuting fields:          {}", r.commuting);
            println!("    invariant integrals:       {}", r.invariant);
            println!("    independent fields:        {}", r.fields_independent);
            println!("    independent differentials: {}", r.integrals_independent);
            println!("    integrable:                {}", r.is_integrable());
        }
        Err(e) => println!("{label}: rejected ({e})"),
    }
    println!();
}

fn main() {
    let saddle = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
    let xy = Poly::monomial(2, vec![1, 1], Scalar::one());

    // the saddle with its product integral
    report("saddle with g = x*y", &[saddle.clone()], &[xy.clone()]);

    // a resonant but still integrable perturbation: the cubic part is
    // xy times the saddle itself
    let tail = &VectorField::monomial(2, vec![2, 1], 0, Scalar::one())
        - &VectorField::monomial(2, vec![1, 2], 1, Scalar::one());
    report(
        "saddle with resonant tail",
        &[&saddle + &tail],
        &[xy.clone()],
    );

    // a pair that does not commute: the family is rejected by the checks
    let shear = VectorField::monomial(2, vec![0, 1], 0, Scalar::one());
    report("saddle with a shear", &[saddle.clone(), shear], &[]);

    // wrong family count: 1 field + 0 integrals in dimension 2
    report("missing an integral", &[saddle], &[]);
}
