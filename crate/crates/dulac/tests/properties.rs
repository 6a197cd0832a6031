//! Randomized structural identities, cross-checked against the
//! brute-force implementations in `dulac-oracles` where one exists.
//! Every assertion is an exact equality of Gaussian-rational objects.

use dulac::diff_form::{contract, poincare_integrate, DiffForm};
use dulac::linear::jordan_chevalley;
use dulac::matrix::Matrix;
use dulac::normal_form::{homological_solve, lie_transform, normalize};
use dulac::poly::Poly;
use dulac::problem::{parse_problem, Mode, ProblemSpec};
use dulac::resonance::{
    enumerate_resonances, is_resonant_monomial, torus_generators, weight_lattice,
};
use dulac::scalar::Scalar;
use dulac::transform::{flow_map, invert_map, push_forward};
use dulac::vector_field::{lie_bracket, VectorField};
use dulac_oracles::{brute_bracket, brute_pushforward, brute_resonances};
use proptest::collection::vec as pvec;
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// strategies

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 1i64..=2)
        .prop_map(|(a, b, c, d)| Scalar::from_parts(a, b, c, d))
}

fn small_poly(dim: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    pvec((pvec(0..=max_deg, dim), small_scalar()), 0..4).prop_map(move |terms| {
        let mut p = Poly::zero(dim);
        for (exps, c) in terms {
            if exps.iter().sum::<u32>() <= max_deg {
                p = &p + &Poly::monomial(dim, exps, c);
            }
        }
        p
    })
}

fn small_field(dim: usize, max_deg: u32) -> impl Strategy<Value = VectorField> {
    pvec(small_poly(dim, max_deg), dim)
        .prop_map(|comps| VectorField::from_components(comps).unwrap())
}

/// A homogeneous field of the given degree, built by truncating away
/// everything else; may be zero.
fn homogeneous_field(dim: usize, degree: u32) -> impl Strategy<Value = VectorField> {
    small_field(dim, degree).prop_map(move |x| x.homogeneous_part(degree))
}

fn gaussian_int_spectrum(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
    pvec((-3i64..=3, -1i64..=1), dim)
        .prop_map(|entries| entries.into_iter().map(|(a, b)| Scalar::from_parts(a, 1, b, 1)).collect())
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    pvec(-3i64..=3, n * n).prop_map(move |entries| {
        Matrix::from_fn(n, n, |i, j| Scalar::from_int(entries[i * n + j]))
    })
}

// ---------------------------------------------------------------------------
// brackets

fn field_pair() -> impl Strategy<Value = (VectorField, VectorField)> {
    (1usize..=3).prop_flat_map(|dim| (small_field(dim, 3), small_field(dim, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_matches_the_component_formula((x, y) in field_pair()) {
        // degree <= 3 fields have brackets of degree <= 5, so order 8 is exact
        let graded = lie_bracket(&x, &y, 8).unwrap();
        let literal = brute_bracket(&x, &y);
        prop_assert_eq!(&graded, &literal);
        // antisymmetry
        prop_assert_eq!(&graded, &(-&brute_bracket(&y, &x)));
        // truncation consistency
        prop_assert_eq!(lie_bracket(&x, &y, 2).unwrap(), literal.truncate(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_identity(
        x in small_field(2, 2),
        y in small_field(2, 2),
        z in small_field(2, 2),
    ) {
        let cycle = &(&brute_bracket(&x, &brute_bracket(&y, &z))
            + &brute_bracket(&y, &brute_bracket(&z, &x)))
            + &brute_bracket(&z, &brute_bracket(&x, &y));
        prop_assert!(cycle.is_zero());
    }

    #[test]
    fn divergence_is_a_derivation(
        x in small_field(2, 3),
        f in small_poly(2, 3),
    ) {
        let scaled = VectorField::from_components(
            x.components().iter().map(|c| &f * c).collect(),
        ).unwrap();
        let lhs = scaled.divergence();
        let rhs = &(&f * &x.divergence()) + &x.apply_to(&f);
        prop_assert_eq!(lhs, rhs);
    }
}

// ---------------------------------------------------------------------------
// differential forms

fn random_one_form(dim: usize) -> impl Strategy<Value = DiffForm> {
    pvec(small_poly(dim, 3), dim).prop_map(move |coeffs| {
        let mut alpha = DiffForm::zero(dim, 1);
        for (j, f) in coeffs.into_iter().enumerate() {
            alpha = &alpha + &DiffForm::term(dim, vec![j], f);
        }
        alpha
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exterior_derivative_squares_to_zero(
        f in small_poly(3, 3),
        alpha in random_one_form(3),
    ) {
        prop_assert!(DiffForm::function(f)
            .exterior_derivative()
            .exterior_derivative()
            .is_zero());
        prop_assert!(alpha.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn contraction_with_volume_computes_divergence(x in small_field(3, 3)) {
        let omega = DiffForm::volume(3);
        let d_ix = contract(&x, &omega).unwrap().exterior_derivative();
        prop_assert_eq!(d_ix, omega.mul_function(&x.divergence()));
    }

    #[test]
    fn poincare_homotopy_inverts_the_differential(g in small_poly(3, 4)) {
        // normalize away the constant term, which the homotopy cannot see
        let g0 = &g - &Poly::constant(3, g.constant_term());
        let dg = DiffForm::function(g0.clone()).exterior_derivative();
        prop_assert_eq!(poincare_integrate(&dg).unwrap(), g0);
    }
}

// ---------------------------------------------------------------------------
// linear algebra

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_chevalley_invariants(a in int_matrix(3)) {
        let split = jordan_chevalley(&a);
        prop_assert_eq!(&(&split.semisimple + &split.nilpotent), &a);
        prop_assert_eq!(
            &split.semisimple * &split.nilpotent,
            &split.nilpotent * &split.semisimple
        );
        // the nilpotent part actually is nilpotent
        let n3 = &(&split.nilpotent * &split.nilpotent) * &split.nilpotent;
        prop_assert!(n3.is_zero());
        // the witness polynomial evaluates the matrix to its semisimple part
        prop_assert_eq!(a.eval_poly(&split.witness), split.semisimple);
    }
}

// ---------------------------------------------------------------------------
// resonances

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resonance_enumeration_matches_exhaustive_scan(
        gamma in gaussian_int_spectrum(3),
        bound in 2u32..=6,
    ) {
        let set = enumerate_resonances(&gamma, bound);
        let listed: Vec<Vec<i64>> = set.relations.iter().map(|r| r.c.clone()).collect();
        prop_assert_eq!(&listed, &brute_resonances(&gamma, bound));
        prop_assert!(set.q <= set.q_upper);
        for rel in &set.relations {
            let sum: i64 = rel.c.iter().sum();
            prop_assert!((1..=bound as i64).contains(&sum));
            prop_assert!(rel.c.iter().all(|&v| v >= -1));
            prop_assert!(rel.c.iter().filter(|&&v| v < 0).count() <= 1);
        }
        // monotonicity under doubling the bound
        let doubled = enumerate_resonances(&gamma, 2 * bound);
        let larger: Vec<Vec<i64>> = doubled.relations.iter().map(|r| r.c.clone()).collect();
        for c in &listed {
            prop_assert!(larger.contains(c));
        }
        // scaling the spectrum by a positive rational changes nothing
        let scaled: Vec<Scalar> =
            gamma.iter().map(|g| g * &Scalar::from_rational(1, 3)).collect();
        let rescaled = enumerate_resonances(&scaled, bound);
        let listed_scaled: Vec<Vec<i64>> = rescaled.relations.iter().map(|r| r.c.clone()).collect();
        prop_assert_eq!(&listed, &listed_scaled);
    }

    #[test]
    fn weight_lattice_annihilates_relations(
        gamma in gaussian_int_spectrum(3),
        bound in 2u32..=6,
    ) {
        let set = enumerate_resonances(&gamma, bound);
        let lat = weight_lattice(&set);
        prop_assert_eq!(lat.basis.len(), lat.r);
        for w in &lat.basis {
            for rel in &set.relations {
                let dot: i64 = w.iter().zip(&rel.c).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, 0);
            }
        }
        // torus generators are diagonal with divergence sum(w)
        let torus = torus_generators(&lat);
        for (w, z) in torus.weights.iter().zip(&torus.fields) {
            let total: i64 = w.iter().sum();
            prop_assert_eq!(z.divergence(), Poly::constant(3, Scalar::from_int(total)));
        }
    }
}

// ---------------------------------------------------------------------------
// the homological equation and Lie transforms

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homological_solve_splits_exactly(
        gamma in pvec(-2i64..=2, 2),
        y in homogeneous_field(2, 3),
    ) {
        prop_assume!(!y.is_zero());
        let spectrum: Vec<Scalar> = gamma.iter().map(|&g| Scalar::from_int(g)).collect();
        let a = Matrix::diagonal(&spectrum);
        let solution = homological_solve(&a, &y, 3).unwrap();
        let a_field = VectorField::linear(&a);
        // [A x d, W] + resonant = Y, exactly
        let recombined =
            &brute_bracket(&a_field, &solution.generator) + &solution.resonant;
        prop_assert_eq!(&recombined, &y);
        // the resonant part carries only resonant monomials, the
        // generator only nonresonant ones
        for (l, comp) in solution.resonant.components().iter().enumerate() {
            for (b, _) in comp.terms() {
                prop_assert!(is_resonant_monomial(&spectrum, b, l).unwrap());
            }
        }
        for (l, comp) in solution.generator.components().iter().enumerate() {
            for (b, _) in comp.terms() {
                prop_assert!(!is_resonant_monomial(&spectrum, b, l).unwrap());
            }
        }
    }

    #[test]
    fn lie_transform_agrees_with_series_reversion(
        w in homogeneous_field(2, 2),
        raw in small_field(2, 2),
        order in 3u32..=5,
    ) {
        prop_assume!(!w.is_zero());
        // pushing forward an order-M jet is only exact for fields fixing
        // the origin, which is the engine's whole domain
        let x = &raw - &raw.truncate(0);
        let via_series = lie_transform(&x, &w, order).unwrap();
        let phi = flow_map(&(-&w), order).unwrap();
        let via_reversion = brute_pushforward(phi.components(), &x, order);
        prop_assert_eq!(via_series, via_reversion);
        // the engine's own pushforward agrees as well
        prop_assert_eq!(
            push_forward(&phi, &x, order).unwrap(),
            lie_transform(&x, &w, order).unwrap()
        );
        // flowing backwards inverts the map
        let phi_inverse = flow_map(&w, order).unwrap();
        prop_assert_eq!(invert_map(&phi).unwrap(), phi_inverse);
    }
}

// ---------------------------------------------------------------------------
// normalization

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_form_a_prefix_and_normalization_is_idempotent(
        gamma in pvec(-2i64..=2, 2),
        higher in small_field(2, 4),
    ) {
        let spectrum: Vec<Scalar> = gamma.iter().map(|&g| Scalar::from_int(g)).collect();
        let tail = &higher - &higher.truncate(1);
        let x = &VectorField::diagonal(&spectrum) + &tail;
        let short = normalize(&x, 3, false).unwrap();
        let long = normalize(&x, 5, false).unwrap();
        // the degree-by-degree generators of the longer run start with
        // the generators of the shorter one
        for g in &short.generators {
            let matching = long.generators.iter().find(|h| h.degree == g.degree);
            prop_assert_eq!(matching.map(|h| &h.field), Some(&g.field));
        }
        for h in long.generators.iter().filter(|h| h.degree <= 3) {
            let matching = short.generators.iter().find(|g| g.degree == h.degree);
            prop_assert_eq!(matching.map(|g| &g.field), Some(&h.field));
        }
        // a normal form is its own normal form
        let again = normalize(&long.normalized, 5, false).unwrap();
        prop_assert!(again.generators.is_empty());
        prop_assert!(again.transform.is_identity());
        prop_assert_eq!(&again.normalized, &long.normalized);
    }
}

// ---------------------------------------------------------------------------
// the problem format

fn variable_pool() -> Vec<String> {
    ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect()
}

fn random_problem() -> impl Strategy<Value = ProblemSpec> {
    (2usize..=3, 2u32..=6, 2u32..=10, 0usize..=3).prop_flat_map(|(dim, order, bound, mode_ix)| {
        let mode = [
            Mode::Normalize,
            Mode::Isochore,
            Mode::ResonanceOnly,
            Mode::Integrability,
        ][mode_ix];
        (pvec(small_field(dim, 3), 1..=2), pvec(small_poly(dim, 3), 0..=2)).prop_map(
            move |(fields, integrals)| ProblemSpec {
                variables: variable_pool()[..dim].to_vec(),
                fields,
                integrals,
                order,
                res_bound: bound,
                mode,
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn problems_survive_printing_and_reparsing(spec in random_problem()) {
        let printed = spec.to_string();
        let reparsed = parse_problem(&printed).unwrap();
        prop_assert_eq!(&reparsed, &spec);
        // printing is canonical: a second round trip is byte-identical
        prop_assert_eq!(reparsed.to_string(), printed);
    }
}
