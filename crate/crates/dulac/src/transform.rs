//! Polynomial coordinate transformations truncated at a fixed order:
//! time-1 flows of higher-order generators, composition, inversion by
//! fixed-point iteration, Jacobian determinants, and pushforwards of
//! vector fields.
//!
//! A [`PolyMap`] is a tuple of polynomials with the truncation order it
//! was computed to; all operations stay inside that order, and composing
//! maps of different orders truncates to the coarser one.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vector_field::{poly_det, VectorField};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    dim: usize,
    order: u32,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(components: Vec<Poly>, order: u32) -> Result<PolyMap> {
        if components.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let dim = components[0].dim();
        for c in &components {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        let components = components.iter().map(|c| c.truncate(order)).collect();
        Ok(PolyMap { dim, order, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn truncate(&self, order: u32) -> PolyMap {
        PolyMap {
            dim: self.dim,
            order: order.min(self.order),
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    /// The matrix of degree-1 coefficients.
    pub fn linear_part(&self) -> Matrix {
        let n = self.dim;
        let mut a = Matrix::zero(n, n);
        for (i, c) in self.components.iter().enumerate() {
            let lin = c.homogeneous_part(1);
            for (idx, v) in lin.terms() {
                let j = (0..n).find(|&j| idx.get(j) == 1).expect("degree-one monomial");
                a.set(i, j, v.clone());
            }
        }
        a
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Poly::var(self.dim, i))
    }

    /// Substitutes the map into a polynomial: `f ∘ Φ`,
    /// truncated at the map's order.
    pub fn apply_to_poly(&self, f: &Poly) -> Result<Poly> {
        f.compose(&self.components, self.order)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.dim).map(|j| format!("x{j}")).collect();
        for (i, c) in self.components.iter().enumerate() {
            writeln!(f, "y{} = {}", i + 1, c.to_text(&names))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The identity map on `dim` coordinates.
pub fn identity_map(dim: usize, order: u32) -> PolyMap {
    let components = (0..dim).map(|i| Poly::var(dim, i)).collect();
    PolyMap { dim, order, components }
}

/// The linear map `x -> M x`.
pub fn linear_map(m: &Matrix, order: u32) -> PolyMap {
    let n = m.cols();
    let components = (0..m.rows())
        .map(|i| {
            let mut c = Poly::zero(n);
            for j in 0..n {
                c = &c + &Poly::var(n, j).scale(m.get(i, j));
            }
            c
        })
        .collect();
    PolyMap { dim: n, order, components }
}

/// Composition as functions: the result sends `x` to `outer(inner(x))`,
/// truncated at the coarser of the two orders.
pub fn compose_map(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap> {
    if outer.dim != inner.dim {
        return Err(Error::DimensionMismatch { expected: outer.dim, found: inner.dim });
    }
    let order = outer.order.min(inner.order);
    let components = outer
        .components
        .iter()
        .map(|c| c.compose(&inner.components, order))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(components, order)
}

/// The time-1 flow of a generator whose terms all have degree at least 2:
/// `Φ_i = sum_m W^m(x_i) / m!`, truncated at `order`. Each
/// application of `W` raises degree, so the sum is finite.
pub fn flow_map(w: &VectorField, order: u32) -> Result<PolyMap> {
    if let Some(low) = w.lowest_degree() {
        if low < 2 {
            return Err(Error::GeneratorDegree { degree: low });
        }
    }
    let n = w.dim();
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Poly::var(n, i);
        let mut term = Poly::var(n, i);
        let mut factorial = Scalar::one();
        let mut m = 1i64;
        loop {
            term = w.apply_to_trunc(&term, order);
            if term.is_zero() {
                break;
            }
            factorial = &factorial * &Scalar::from_rational(1, m);
            acc = &acc + &term.scale(&factorial);
            m += 1;
        }
        components.push(acc);
    }
    PolyMap::new(components, order)
}

pub fn is_unipotent(phi: &PolyMap) -> bool {
    phi.components.iter().all(|c| c.constant_term().is_zero())
        && phi.linear_part() == Matrix::identity(phi.dim)
}

/// Inverts a unipotent map by fixed-point iteration: writing
/// `Φ = id + F` with `F` of lowest degree at least 2, the inverse
/// is the limit of `Ψ <- id - F ∘ Ψ`, which
/// stabilizes below the truncation order in at most `order - 1` steps.
/// The result is verified by composing both ways before it is returned.
pub fn invert_map(phi: &PolyMap) -> Result<PolyMap> {
    if !is_unipotent(phi) {
        return Err(Error::NotUnipotent);
    }
    let n = phi.dim;
    let order = phi.order;
    let id = identity_map(n, order);
    let f: Vec<Poly> = (0..n)
        .map(|i| &phi.components[i] - &Poly::var(n, i))
        .collect();
    let mut psi = id.clone();
    for _ in 1..order.max(1) {
        let f_psi: Vec<Poly> = f
            .iter()
            .map(|c| c.compose(&psi.components, order))
            .collect::<Result<Vec<_>>>()?;
        let components: Vec<Poly> = (0..n)
            .map(|i| &Poly::var(n, i) - &f_psi[i])
            .collect();
        psi = PolyMap::new(components, order)?;
    }
    let check_a = compose_map(phi, &psi)?;
    let check_b = compose_map(&psi, phi)?;
    assert!(check_a.is_identity() && check_b.is_identity(), "inverse verification failed");
    Ok(psi)
}

/// Determinant of the Jacobian matrix of the map. The map is only known
/// through its order, so the determinant is reliable through degree
/// `order - 1` and truncated there.
pub fn jacobian_det(phi: &PolyMap) -> Poly {
    let n = phi.dim;
    let jac: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| phi.components[i].derivative(j)).collect())
        .collect();
    poly_det(&jac, n).truncate(phi.order.saturating_sub(1))
}

/// Pushforward of a vector field: `Φ_* X = (DΦ · X) ∘ Φ^{-1}`,
/// truncated at `order`. The map must be unipotent so its inverse exists
/// as a polynomial map, and the field must fix the origin for the
/// truncation to be exact: a constant component would need one more
/// degree of `Φ` than the jet carries.
pub fn push_forward(phi: &PolyMap, x: &VectorField, order: u32) -> Result<VectorField> {
    if phi.dim != x.dim() {
        return Err(Error::DimensionMismatch { expected: phi.dim, found: x.dim() });
    }
    let n = phi.dim;
    let order = order.min(phi.order);
    let psi = invert_map(phi)?;
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut dot = Poly::zero(n);
        for j in 0..n {
            let d = phi.components[i].derivative(j);
            if d.is_zero() {
                continue;
            }
            dot = &dot + &d.mul_trunc(x.component(j), order);
        }
        components.push(dot.compose(&psi.components, order)?);
    }
    VectorField::from_components(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim_field(terms: &[(u32, i64)]) -> VectorField {
        let mut p = Poly::zero(1);
        for &(deg, c) in terms {
            p = &p + &Poly::monomial(1, vec![deg], Scalar::from_int(c));
        }
        VectorField::from_components(vec![p]).unwrap()
    }

    #[test]
    fn flow_of_quadratic_generator() {
        // the time-1 flow of x^2 d_x is x/(1-x) = x + x^2 + x^3 + ...
        let w = one_dim_field(&[(2, 1)]);
        let phi = flow_map(&w, 4).unwrap();
        let mut expected = Poly::zero(1);
        for d in 1..=4 {
            expected = &expected + &Poly::monomial(1, vec![d], Scalar::one());
        }
        assert_eq!(phi.component(0), &expected);
    }

    #[test]
    fn flow_rejects_low_degree_generators() {
        let w = one_dim_field(&[(1, 1)]);
        assert_eq!(flow_map(&w, 4).unwrap_err(), Error::GeneratorDegree { degree: 1 });
    }

    #[test]
    fn flow_of_zero_is_identity() {
        let w = VectorField::zero(2);
        assert!(flow_map(&w, 5).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_quadratic_shift() {
        // the inverse of x + x^2 starts x - x^2 + 2x^3 - 5x^4
        let phi = PolyMap::new(
            vec![&Poly::var(1, 0) + &Poly::monomial(1, vec![2], Scalar::one())],
            4,
        )
        .unwrap();
        let psi = invert_map(&phi).unwrap();
        let expected = PolyMap::new(
            vec![
                &(&Poly::var(1, 0) - &Poly::monomial(1, vec![2], Scalar::one()))
                    + &(&Poly::monomial(1, vec![3], Scalar::from_int(2))
                        - &Poly::monomial(1, vec![4], Scalar::from_int(5))),
            ],
            4,
        )
        .unwrap();
        assert_eq!(psi, expected);
    }

    #[test]
    fn inversion_requires_unipotent() {
        let phi = linear_map(&Matrix::diagonal(&[Scalar::from_int(2)]), 3);
        assert_eq!(invert_map(&phi).unwrap_err(), Error::NotUnipotent);
        assert!(!is_unipotent(&phi));
    }

    #[test]
    fn flow_and_inverse_flow_cancel() {
        let w = VectorField::from_components(vec![
            Poly::monomial(2, vec![2, 0], Scalar::one()),
            Poly::monomial(2, vec![1, 1], Scalar::from_int(-1)),
        ])
        .unwrap();
        let phi = flow_map(&w, 6).unwrap();
        let psi = flow_map(&(-&w), 6).unwrap();
        // the flow of -W inverts the flow of W
        assert!(compose_map(&phi, &psi).unwrap().is_identity());
        assert_eq!(invert_map(&phi).unwrap(), psi);
    }

    #[test]
    fn composition_truncates_to_the_coarser_order() {
        let a = identity_map(1, 5);
        let b = PolyMap::new(
            vec![&Poly::var(1, 0) + &Poly::monomial(1, vec![3], Scalar::one())],
            3,
        )
        .unwrap();
        assert_eq!(compose_map(&a, &b).unwrap().order(), 3);
    }

    #[test]
    fn jacobian_of_shear() {
        // Phi = (x1 + x1 x2, x2) has Jacobian determinant 1 + x2
        let phi = PolyMap::new(
            vec![
                &Poly::var(2, 0) + &Poly::monomial(2, vec![1, 1], Scalar::one()),
                Poly::var(2, 1),
            ],
            2,
        )
        .unwrap();
        let det = jacobian_det(&phi);
        assert_eq!(det, &Poly::one(2) + &Poly::var(2, 1));
    }

    #[test]
    fn jacobian_of_volume_preserving_flow() {
        // W = x1^2 d1 - 2 x1 x2 d2 is divergence free, so det DPhi = 1
        let w = VectorField::from_components(vec![
            Poly::monomial(2, vec![2, 0], Scalar::one()),
            Poly::monomial(2, vec![1, 1], Scalar::from_int(-2)),
        ])
        .unwrap();
        assert!(w.divergence().is_zero());
        let phi = flow_map(&w, 6).unwrap();
        assert_eq!(jacobian_det(&phi), Poly::one(2));
    }

    #[test]
    fn push_forward_matches_series_expansion() {
        // X = x d_x pushed through the flow of -x^2 d_x gains -x^2 at
        // second order: exp(ad_W) X = x d_x - x^2 d_x + ...
        let x = one_dim_field(&[(1, 1)]);
        let w = one_dim_field(&[(2, 1)]);
        let phi = flow_map(&(-&w), 2).unwrap();
        let pushed = push_forward(&phi, &x, 2).unwrap();
        assert_eq!(pushed, one_dim_field(&[(1, 1), (2, -1)]));
    }

    #[test]
    fn push_forward_by_identity_is_identity() {
        let x = one_dim_field(&[(1, 2), (3, 5)]);
        let id = identity_map(1, 4);
        assert_eq!(push_forward(&id, &x, 4).unwrap(), x);
    }

    #[test]
    fn linear_part_extraction() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::from_int(1), Scalar::from_int(2)],
            vec![Scalar::from_int(0), Scalar::from_int(1)],
        ])
        .unwrap();
        let phi = linear_map(&m, 3);
        assert_eq!(phi.linear_part(), m);
    }
}
