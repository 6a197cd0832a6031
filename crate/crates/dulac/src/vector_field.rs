//! Polynomial vector fields and their Lie calculus.
//!
//! A [`VectorField`] on Q(i)^n is an n-tuple of polynomials, read as
//! `X = sum_i X_i d/dx_i`. The bracket, divergence and wedge operations
//! here are the exact substrate for the normal-form layers: the Taylor
//! grading assigns degree `k` to a field whose components are homogeneous
//! polynomials of degree `k`, so the bracket of degrees `j` and `k` has
//! degree `j + k - 1`.

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Poly};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    dim: usize,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn zero(dim: usize) -> Self {
        VectorField { dim, components: vec![Poly::zero(dim); dim] }
    }

    pub fn from_components(components: Vec<Poly>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::EmptyFamily);
        }
        for c in &components {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        Ok(VectorField { dim, components })
    }

    /// The single monomial field `c * x^b d/dx_axis`.
    pub fn monomial(dim: usize, exponents: Vec<u32>, axis: usize, c: Scalar) -> Self {
        assert!(axis < dim, "axis out of range");
        let mut f = VectorField::zero(dim);
        f.components[axis] = Poly::monomial(dim, exponents, c);
        f
    }

    /// The linear field `x -> A x`, i.e. components `(A x)_i`.
    pub fn linear(a: &crate::matrix::Matrix) -> Self {
        let n = a.rows();
        assert_eq!(n, a.cols(), "linear field needs a square matrix");
        let mut components = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = Poly::zero(n);
            for j in 0..n {
                let c = a.get(i, j).clone();
                if !c.is_zero() {
                    p.add_term(MultiIndex::unit(n, j), c);
                }
            }
            components.push(p);
        }
        VectorField { dim: n, components }
    }

    /// The diagonal field `sum_j w_j x_j d/dx_j`.
    pub fn diagonal(weights: &[Scalar]) -> Self {
        let n = weights.len();
        let mut f = VectorField::zero(n);
        for (j, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                f.components[j] = Poly::monomial(n, MultiIndex::unit(n, j).exponents().to_vec(), w.clone());
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> VectorField {
        VectorField {
            dim: self.dim,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn truncate(&self, order: u32) -> VectorField {
        VectorField {
            dim: self.dim,
            components: self.components.iter().map(|p| p.truncate(order)).collect(),
        }
    }

    /// The graded piece of degree `k`: components restricted to their
    /// homogeneous part of degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> VectorField {
        VectorField {
            dim: self.dim,
            components: self.components.iter().map(|p| p.homogeneous_part(k)).collect(),
        }
    }

    /// True when every component is homogeneous of degree `k`.
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.components.iter().all(|p| p.is_homogeneous_of(k))
    }

    /// Largest component degree, `None` when the field is zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.components.iter().filter_map(|p| p.total_degree()).max()
    }

    /// Smallest degree carrying a nonzero term, `None` when zero.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.components.iter().filter_map(|p| p.lowest_degree()).min()
    }

    /// Applies the field as a derivation: `X(f) = sum_j X_j df/dx_j`.
    pub fn apply_to(&self, f: &Poly) -> Poly {
        assert_eq!(self.dim, f.dim(), "dimension mismatch in derivation");
        let mut out = Poly::zero(self.dim);
        for j in 0..self.dim {
            if self.components[j].is_zero() {
                continue;
            }
            out = &out + &(&self.components[j] * &f.derivative(j));
        }
        out
    }

    /// Same as [`apply_to`](Self::apply_to) with truncation at `order`.
    pub fn apply_to_trunc(&self, f: &Poly, order: u32) -> Poly {
        let mut out = Poly::zero(self.dim);
        for j in 0..self.dim {
            if self.components[j].is_zero() {
                continue;
            }
            out = &out + &self.components[j].mul_trunc(&f.derivative(j), order);
        }
        out
    }

    /// `div X = sum_j dX_j/dx_j`, exact.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.dim);
        for j in 0..self.dim {
            out = &out + &self.components[j].derivative(j);
        }
        out
    }
}

/// `[X, Y]_i = sum_j (X_j dY_i/dx_j - Y_j dX_i/dx_j)`, truncated at `order`.
pub fn lie_bracket(x: &VectorField, y: &VectorField, order: u32) -> Result<VectorField> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    if order < 1 {
        return Err(Error::InvalidOrder { required: 1, got: order });
    }
    let n = x.dim;
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = Poly::zero(n);
        for j in 0..n {
            if !x.components[j].is_zero() {
                p = &p + &x.components[j].mul_trunc(&y.components[i].derivative(j), order);
            }
            if !y.components[j].is_zero() {
                p = &p - &y.components[j].mul_trunc(&x.components[i].derivative(j), order);
            }
        }
        components.push(p);
    }
    Ok(VectorField { dim: n, components })
}

/// The lowest degree in which `[X, Y]` fails to vanish, scanning degrees
/// `<= order`; `None` when the truncated bracket is zero.
pub fn bracket_failure_degree(x: &VectorField, y: &VectorField, order: u32) -> Result<Option<u32>> {
    let b = lie_bracket(x, y, order)?;
    Ok(b.lowest_degree())
}

/// An alternating m-vector: coefficients of `d/dx_{j_1} ^ ... ^ d/dx_{j_m}`
/// indexed by strictly increasing axis tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiVector {
    dim: usize,
    grade: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl MultiVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn component(&self, axes: &[usize]) -> Poly {
        self.terms.get(axes).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }
}

fn increasing_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for j in start..n {
            current.push(j);
            rec(n, m, j + 1, current, out);
            current.pop();
        }
    }
    rec(n, m, 0, &mut current, &mut out);
    out
}

/// `X_1 ^ ... ^ X_m`: the component on axes `J` is the m x m minor
/// `det (X_a)_{j in J}`. Exact; errors when `m > n` or the family is empty.
pub fn wedge_vectors(fields: &[VectorField]) -> Result<MultiVector> {
    let m = fields.len();
    if m == 0 {
        return Err(Error::EmptyFamily);
    }
    let n = fields[0].dim;
    for f in fields {
        if f.dim != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.dim });
        }
    }
    if m > n {
        return Err(Error::WedgeTooLarge { count: m, dim: n });
    }
    let mut terms = BTreeMap::new();
    for axes in increasing_subsets(n, m) {
        let minor: Vec<Vec<Poly>> = (0..m)
            .map(|a| axes.iter().map(|&j| fields[a].components[j].clone()).collect())
            .collect();
        let det = poly_det(&minor, n);
        if !det.is_zero() {
            terms.insert(axes, det);
        }
    }
    Ok(MultiVector { dim: n, grade: m, terms })
}

/// Determinant of a square matrix of polynomials by Laplace expansion on
/// the first row. Fine at the small sizes this crate encounters.
pub(crate) fn poly_det(m: &[Vec<Poly>], dim: usize) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::one(dim);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(dim);
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly>> = (1..k)
            .map(|r| {
                (0..k)
                    .filter(|&cc| cc != c)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let cofactor = entry * &poly_det(&sub, dim);
        if c % 2 == 0 {
            det = &det + &cofactor;
        } else {
            det = &det - &cofactor;
        }
    }
    det
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        VectorField {
            dim: self.dim,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        VectorField {
            dim: self.dim,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            dim: self.dim,
            components: self.components.iter().map(|p| -p).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(dim: usize, exps: Vec<u32>, axis: usize, c: i64) -> VectorField {
        VectorField::monomial(dim, exps, axis, Scalar::from_int(c))
    }

    #[test]
    fn bracket_on_the_line() {
        // [x d/dx, x^2 d/dx] = x^2 d/dx
        let x = mono(1, vec![1], 0, 1);
        let x2 = mono(1, vec![2], 0, 1);
        let b = lie_bracket(&x, &x2, 10).unwrap();
        assert_eq!(b, x2);
    }

    #[test]
    fn bracket_with_diagonal_field_scales_by_weight() {
        // gamma = (1, -1): [x1 d1 - x2 d2, x1^2 x2 d1] = 0, because the
        // monomial weight 2*1 + 1*(-1) - 1 vanishes.
        let s = VectorField::diagonal(&[Scalar::from_int(1), Scalar::from_int(-1)]);
        let v = mono(2, vec![2, 1], 0, 1);
        let b = lie_bracket(&s, &v, 10).unwrap();
        assert!(b.is_zero());
        // Nonresonant monomial x1^2 d1 gets weight 2 - 1 = 1.
        let w = mono(2, vec![2, 0], 0, 1);
        let b = lie_bracket(&s, &w, 10).unwrap();
        assert_eq!(b, w);
    }

    #[test]
    fn bracket_truncates() {
        let x = mono(1, vec![2], 0, 1);
        let y = mono(1, vec![3], 0, 1);
        // Full bracket has degree 4; order 3 truncates it away.
        let b = lie_bracket(&x, &y, 3).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn bracket_antisymmetry() {
        let x = &mono(2, vec![1, 1], 0, 2) + &mono(2, vec![0, 1], 1, 1);
        let y = mono(2, vec![2, 0], 1, 3);
        let xy = lie_bracket(&x, &y, 8).unwrap();
        let yx = lie_bracket(&y, &x, 8).unwrap();
        assert_eq!(xy, -&yx);
    }

    #[test]
    fn divergence_examples() {
        // div(x1 d1 + x2 d2) = 2
        let e = VectorField::diagonal(&[Scalar::one(), Scalar::one()]);
        assert_eq!(e.divergence(), Poly::constant(2, Scalar::from_int(2)));
        // div of a Hamiltonian field vanishes: here H = x1^2 x2
        let h = &mono(2, vec![2, 0], 0, 1) - &mono(2, vec![1, 1], 1, 2);
        assert!(h.divergence().is_zero());
    }

    #[test]
    fn wedge_pair_in_the_plane() {
        // (x1 d1) ^ (x2 d2) has single component x1 x2 on axes (0, 1)
        let a = mono(2, vec![1, 0], 0, 1);
        let b = mono(2, vec![0, 1], 1, 1);
        let w = wedge_vectors(&[a, b]).unwrap();
        assert_eq!(w.component(&[0, 1]), Poly::monomial(2, vec![1, 1], Scalar::one()));
    }

    #[test]
    fn wedge_detects_dependence() {
        // X ^ (f X) = 0
        let x = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let fx = VectorField::from_components(vec![
            Poly::monomial(2, vec![2, 1], Scalar::one()),
            Poly::monomial(2, vec![1, 2], Scalar::from_int(-1)),
        ])
        .unwrap();
        let w = wedge_vectors(&[x, fx]).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn wedge_arity_checked() {
        let x = mono(1, vec![1], 0, 1);
        let err = wedge_vectors(&[x.clone(), x]).unwrap_err();
        assert!(matches!(err, Error::WedgeTooLarge { count: 2, dim: 1 }));
        assert!(matches!(wedge_vectors(&[]).unwrap_err(), Error::EmptyFamily));
    }

    #[test]
    fn derivation_kills_first_integral() {
        // (x1 d1 - x2 d2)(x1 x2) = 0
        let x = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let f = Poly::monomial(2, vec![1, 1], Scalar::one());
        assert!(x.apply_to(&f).is_zero());
    }
}
