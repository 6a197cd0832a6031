//! Explore the resonance structure of a few spectra.
//!
//! For each spectrum the engine enumerates the resonance relations up to
//! a bound, reports how many are independent and whether the listing is
//! certified complete, then computes the weight lattice and the induced
//! torus of linear symmetries.
//!
//! ```text
//! cargo run -p dulac --example resonance
//! ```

use dulac::resonance::{enumerate_resonances, torus_generators, weight_lattice};
use dulac::scalar::Scalar;

fn describe(label: &str, gamma: &[Scalar], bound: u32) {
    let set = enumerate_resonances(gamma, bound);
    println!("spectrum {label}, bound {bound}:");
    if set.relations.is_empty() {
        println!("    no resonance relations");
    }
    for rel in &set.relations {
        println!("    relation c = {:?}, order {}", rel.c, rel.order());
    }
    println!(
        "    independent: {} (upper bound {}), complete: {}",
        set.q, set.q_upper, set.complete
    );
    let lat = weight_lattice(&set);
    println!("    weight lattice rank {}: {:?}", lat.r, lat.basis);
    let torus = torus_generators(&lat);
    for (w, z) in torus.weights.iter().zip(&torus.fields) {
        println!("    torus generator for {w:?}: {z}");
    }
    println!();
}

fn main() {
    let int = |vals: &[i64]| -> Vec<Scalar> { vals.iter().map(|&v| Scalar::from_int(v)).collect() };

    // the saddle: one relation family, rank-1 lattice
    describe("(1, -1)", &int(&[1, -1]), 8);

    // nonresonant integers: nothing, certified by the doubling check
    describe("(2, 3)", &int(&[2, 3]), 8);

    // a resonant triple: two independent relations
    describe("(1, -1, 2)", &int(&[1, -1, 2]), 8);

    // a Gaussian spectrum: mixing real and imaginary parts kills every
    // candidate relation
    describe("(1, i)", &[Scalar::one(), Scalar::i()], 8);

    // fractional spectra are cleared to integers internally
    describe(
        "(1/2, -1/2)",
        &[Scalar::from_rational(1, 2), Scalar::from_rational(-1, 2)],
        8,
    );
}
