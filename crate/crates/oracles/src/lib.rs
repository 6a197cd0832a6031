//! Brute-force reference implementations used to cross-check the engine.
//!
//! Each function here recomputes something the `dulac` crate computes
//! cleverly, using the most literal method available: exhaustive box
//! scans instead of pruned searches, the textbook component formula
//! instead of graded bracket plumbing, direct series reversion instead of
//! the engine's transform layer. Tests compare the two; the crate is a
//! dev-dependency only and none of this is part of the engine.

use dulac::poly::Poly;
use dulac::scalar::Scalar;
use dulac::vector_field::VectorField;

/// All resonance tuples for a spectrum by exhaustive scan.
///
/// A tuple `c` qualifies when `<c, gamma> = 0` exactly, every entry is at
/// least `-1`, at most one entry is negative, and `1 <= sum(c) <= bound`.
/// Every qualifying tuple has entries at most `bound + n - 1`, so the box
/// `[-1, bound + n - 1]^n` is scanned whole. Results are sorted by total
/// order, then lexicographically — the same order the engine reports.
pub fn brute_resonances(gamma: &[Scalar], bound: u32) -> Vec<Vec<i64>> {
    let n = gamma.len();
    let hi = bound as i64 + n as i64 - 1;
    let mut found = Vec::new();
    let mut c = vec![-1i64; n];
    loop {
        let sum: i64 = c.iter().sum();
        let negatives = c.iter().filter(|&&v| v < 0).count();
        if (1..=bound as i64).contains(&sum) && negatives <= 1 {
            let mut dot = Scalar::zero();
            for (cj, gj) in c.iter().zip(gamma) {
                dot = &dot + &gj.mul_int(*cj);
            }
            if dot.is_zero() {
                found.push(c.clone());
            }
        }
        // odometer step over the box
        let mut k = 0;
        loop {
            if k == n {
                found.sort_by(|a, b| {
                    let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
                    sa.cmp(&sb).then_with(|| a.cmp(b))
                });
                return found;
            }
            c[k] += 1;
            if c[k] <= hi {
                break;
            }
            c[k] = -1;
            k += 1;
        }
    }
}

/// The Lie bracket by the component formula, with no truncation:
/// `[x, y]_i = sum_j x_j d(y_i)/dx_j - y_j d(x_i)/dx_j`.
pub fn brute_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let n = x.dim();
    assert_eq!(n, y.dim(), "dimension mismatch");
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Poly::zero(n);
        for j in 0..n {
            acc = &acc + &(x.component(j) * &y.component(i).derivative(j));
            acc = &acc - &(y.component(j) * &x.component(i).derivative(j));
        }
        components.push(acc);
    }
    VectorField::from_components(components).expect("component count matches dimension")
}

/// The pushforward of a field under a polynomial map near the identity,
/// by direct series reversion: invert the map with fixed-point iteration,
/// multiply by the Jacobian, and substitute.
///
/// The map must fix the origin with identity linear part. Everything is
/// truncated at the given order.
pub fn brute_pushforward(map: &[Poly], x: &VectorField, order: u32) -> VectorField {
    let n = map.len();
    assert_eq!(n, x.dim(), "dimension mismatch");
    let identity: Vec<Poly> = (0..n).map(|j| Poly::var(n, j)).collect();
    for (j, phi) in map.iter().enumerate() {
        let linear: Poly = phi.homogeneous_part(1);
        assert!(
            phi.lowest_degree().map_or(true, |d| d >= 1) && linear == identity[j],
            "map must be the identity plus higher-order terms"
        );
    }
    // higher-order part h with map = id + h
    let higher: Vec<Poly> = map
        .iter()
        .zip(&identity)
        .map(|(phi, xj)| &phi.truncate(order) - xj)
        .collect();
    // fixed point iteration for the inverse: psi = id - h(psi)
    let mut inverse = identity.clone();
    for _ in 0..order {
        inverse = identity
            .iter()
            .zip(&higher)
            .map(|(xj, hj)| xj - &hj.compose(&inverse, order).expect("dimensions agree"))
            .collect();
    }
    // (D map · x) composed with the inverse
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Poly::zero(n);
        for j in 0..n {
            acc = &acc + &map[i].derivative(j).mul_trunc(x.component(j), order);
        }
        components.push(acc.compose(&inverse, order).expect("dimensions agree"));
    }
    VectorField::from_components(components).expect("component count matches dimension")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_spectrum(values: &[i64]) -> Vec<Scalar> {
        values.iter().map(|&v| Scalar::from_int(v)).collect()
    }

    #[test]
    fn saddle_resonances() {
        let found = brute_resonances(&int_spectrum(&[1, -1]), 4);
        assert_eq!(found, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn degenerate_axis_resonances() {
        let found = brute_resonances(&int_spectrum(&[0, 1]), 3);
        assert_eq!(found, vec![vec![1, 0], vec![2, 0], vec![3, 0]]);
    }

    #[test]
    fn nonresonant_spectrum_is_empty() {
        assert!(brute_resonances(&int_spectrum(&[2, 3]), 10).is_empty());
        let mixed = vec![Scalar::one(), Scalar::i()];
        assert!(brute_resonances(&mixed, 10).is_empty());
    }

    #[test]
    fn bracket_of_commuting_fields_vanishes() {
        let x = VectorField::diagonal(&int_spectrum(&[1, -1]));
        let y = VectorField::monomial(2, vec![2, 1], 0, Scalar::from_int(4));
        assert!(brute_bracket(&x, &y).is_zero());
    }

    #[test]
    fn bracket_component_formula() {
        // [x1 d1, x1^2 d1] = x1^2 d1
        let x = VectorField::monomial(1, vec![1], 0, Scalar::one());
        let y = VectorField::monomial(1, vec![2], 0, Scalar::one());
        assert_eq!(brute_bracket(&x, &y), y);
    }

    #[test]
    fn pushforward_in_one_variable() {
        // under phi = x + x^2 the field x d/dx becomes (x + x^2) d/dx + O(3)
        let phi = vec![&Poly::var(1, 0) + &Poly::monomial(1, vec![2], Scalar::one())];
        let x = VectorField::monomial(1, vec![1], 0, Scalar::one());
        let pushed = brute_pushforward(&phi, &x, 2);
        let expected = &x + &VectorField::monomial(1, vec![2], 0, Scalar::one());
        assert_eq!(pushed, expected);
    }
}
