//! Polynomial differential forms and exterior calculus.
//!
//! A degree-p [`DiffForm`] stores one polynomial coefficient per strictly
//! increasing p-tuple of axes, `omega = sum_I f_I dx_I`. Everything here is
//! exact: no truncation parameters, since none of these operations can run
//! away in degree. The Poincaré-lemma primitive integrates a closed
//! 1-form termwise, which supplies the first integrals of the
//! volume-preserving theory.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vector_field::VectorField;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct DiffForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl DiffForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "form degree exceeds dimension");
        DiffForm { dim, degree, terms: BTreeMap::new() }
    }

    /// A 0-form, i.e. a function.
    pub fn function(f: Poly) -> Self {
        let dim = f.dim();
        let mut form = DiffForm::zero(dim, 0);
        form.add_term(vec![], f);
        form
    }

    /// `f dx_{axes}`; the axes must be strictly increasing.
    pub fn term(dim: usize, axes: Vec<usize>, f: Poly) -> Self {
        let mut form = DiffForm::zero(dim, axes.len());
        form.add_term(axes, f);
        form
    }

    /// The standard volume form `dx_1 ^ ... ^ dx_n`.
    pub fn volume(dim: usize) -> Self {
        DiffForm::term(dim, (0..dim).collect(), Poly::one(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn add_term(&mut self, axes: Vec<usize>, f: Poly) {
        assert_eq!(axes.len(), self.degree, "axis tuple has wrong length");
        assert_eq!(f.dim(), self.dim, "coefficient dimension mismatch");
        assert!(axes.windows(2).all(|w| w[0] < w[1]), "axes must be strictly increasing");
        assert!(axes.iter().all(|&j| j < self.dim), "axis out of range");
        if f.is_zero() {
            return;
        }
        match self.terms.entry(axes) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree);
        for (axes, f) in &self.terms {
            out.add_term(axes.clone(), f.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn mul_function(&self, g: &Poly) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree);
        for (axes, f) in &self.terms {
            out.add_term(axes.clone(), f * g);
        }
        out
    }

    /// Exterior derivative: `d(f dx_I) = sum_j df/dx_j dx_j ^ dx_I`.
    pub fn exterior_derivative(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, (self.degree + 1).min(self.dim));
        if self.degree + 1 > self.dim {
            return out; // top-degree forms are closed for free
        }
        for (axes, f) in &self.terms {
            for j in 0..self.dim {
                if axes.contains(&j) {
                    continue;
                }
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                let pos = axes.iter().filter(|&&a| a < j).count();
                let mut new_axes = axes.clone();
                new_axes.insert(pos, j);
                let signed = if pos % 2 == 0 { df } else { -&df };
                out.add_term(new_axes, signed);
            }
        }
        out
    }

    /// Wedge product of two forms.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            // The product lives in degree > n and is identically zero;
            // represent it as the zero top form.
            return Ok(DiffForm::zero(self.dim, self.dim));
        }
        let mut out = DiffForm::zero(self.dim, degree);
        for (ia, fa) in &self.terms {
            for (ib, fb) in &other.terms {
                if ia.iter().any(|j| ib.contains(j)) {
                    continue;
                }
                let mut merged: Vec<usize> = ia.iter().chain(ib.iter()).copied().collect();
                let sign = sort_count_inversions(&mut merged);
                let prod = fa * fb;
                out.add_term(merged, if sign % 2 == 0 { prod } else { -&prod });
            }
        }
        Ok(out)
    }
}

/// Sorts the axis tuple in place, returning the number of inversions
/// (the parity of the merge permutation).
fn sort_count_inversions(v: &mut [usize]) -> usize {
    let mut inversions = 0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            inversions += 1;
            j -= 1;
        }
    }
    inversions
}

/// Interior product `i_X omega`:
/// `i_X (f dx_I) = f * sum_t (-1)^t X_{i_t} dx_{I minus i_t}`.
pub fn contract(x: &VectorField, omega: &DiffForm) -> Result<DiffForm> {
    if x.dim() != omega.dim {
        return Err(Error::DimensionMismatch { expected: omega.dim, found: x.dim() });
    }
    if omega.degree == 0 {
        return Err(Error::NotOneForm { degree: 0 });
    }
    let mut out = DiffForm::zero(omega.dim, omega.degree - 1);
    for (axes, f) in &omega.terms {
        for (t, &axis) in axes.iter().enumerate() {
            let xc = x.component(axis);
            if xc.is_zero() {
                continue;
            }
            let mut rest = axes.clone();
            rest.remove(t);
            let prod = f * xc;
            out.add_term(rest, if t % 2 == 0 { prod } else { -&prod });
        }
    }
    Ok(out)
}

/// `df_1 ^ ... ^ df_k` for functions `f_i`; the empty family gives the
/// constant 0-form 1.
pub fn wedge_differentials(functions: &[Poly]) -> Result<DiffForm> {
    if functions.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let dim = functions[0].dim();
    for f in functions {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: f.dim() });
        }
    }
    if functions.len() > dim {
        return Err(Error::WedgeTooLarge { count: functions.len(), dim });
    }
    let mut acc = DiffForm::function(Poly::one(dim));
    for f in functions {
        let df = DiffForm::function(f.clone()).exterior_derivative();
        acc = acc.wedge(&df)?;
    }
    Ok(acc)
}

/// The wedge of differentials of an *empty* family: the constant function 1,
/// used when a commuting family already has full rank and no integrals are
/// required.
pub fn empty_wedge(dim: usize) -> DiffForm {
    DiffForm::function(Poly::one(dim))
}

/// Integrates a closed 1-form along radial lines:
/// `g(x) = int_0^1 sum_j x_j alpha_j(t x) dt`, so `dg = alpha` and `g(0) = 0`.
/// Errors when `alpha` is not a 1-form or not closed.
pub fn poincare_integrate(alpha: &DiffForm) -> Result<Poly> {
    if alpha.degree != 1 {
        return Err(Error::NotOneForm { degree: alpha.degree });
    }
    let d = alpha.exterior_derivative();
    if let Some((axes, _)) = d.terms().next() {
        return Err(Error::NotClosed { axis_a: axes[0], axis_b: axes[1] });
    }
    let n = alpha.dim;
    let mut g = Poly::zero(n);
    for (axes, f) in &alpha.terms {
        let j = axes[0];
        for (idx, c) in f.terms() {
            // x_j * c x^b * t^{|b|} integrates to c x^{b + e_j} / (|b| + 1).
            let target = idx.step_up(j);
            let deg = target.degree() as i64;
            let coeff = c * &Scalar::from_rational(1, deg);
            g.add_term(target, coeff);
        }
    }
    Ok(g)
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = (1..=self.dim).map(|j| format!("x{j}")).collect();
        let mut parts = Vec::new();
        for (axes, p) in &self.terms {
            let basis: Vec<String> = axes.iter().map(|&j| format!("dx{}", j + 1)).collect();
            let coeff = p.to_text(&names);
            if basis.is_empty() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(basis.join("^"));
            } else {
                parts.push(format!("({})*{}", coeff, basis.join("^")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        assert_eq!(self.degree, rhs.degree, "degree mismatch in sum");
        let mut out = self.clone();
        for (axes, f) in &rhs.terms {
            out.add_term(axes.clone(), f.clone());
        }
        out
    }
}

impl Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self + &(-rhs)
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree);
        for (axes, f) in &self.terms {
            out.terms.insert(axes.clone(), -f);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, j: usize) -> Poly {
        Poly::var(n, j)
    }

    #[test]
    fn contract_volume_in_the_plane() {
        // i_{x1 d1 - x2 d2} (dx1 ^ dx2) = x1 dx2 + x2 dx1
        let x = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let omega = DiffForm::volume(2);
        let alpha = contract(&x, &omega).unwrap();
        assert_eq!(alpha.component(&[1]), var(2, 0));
        assert_eq!(alpha.component(&[0]), var(2, 1));
    }

    #[test]
    fn contract_requires_positive_degree() {
        let x = VectorField::diagonal(&[Scalar::one()]);
        let f = DiffForm::function(Poly::one(1));
        assert!(matches!(contract(&x, &f).unwrap_err(), Error::NotOneForm { degree: 0 }));
    }

    #[test]
    fn exterior_derivative_of_function() {
        // d(x1 x2) = x2 dx1 + x1 dx2
        let f = Poly::monomial(2, vec![1, 1], Scalar::one());
        let df = DiffForm::function(f).exterior_derivative();
        assert_eq!(df.component(&[0]), var(2, 1));
        assert_eq!(df.component(&[1]), var(2, 0));
    }

    #[test]
    fn d_squared_is_zero() {
        let f = Poly::monomial(3, vec![2, 1, 1], Scalar::from_rational(3, 2));
        let df = DiffForm::function(f).exterior_derivative();
        assert!(df.exterior_derivative().is_zero());
        // also on a 1-form with mixed coefficients
        let alpha = &DiffForm::term(3, vec![0], Poly::monomial(3, vec![0, 2, 0], Scalar::i()))
            + &DiffForm::term(3, vec![2], Poly::monomial(3, vec![1, 1, 0], Scalar::one()));
        assert!(alpha.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn wedge_anticommutes() {
        let a = DiffForm::term(3, vec![0], var(3, 1));
        let b = DiffForm::term(3, vec![1], var(3, 0));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, -&ba);
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn integrate_closed_one_form() {
        // x1 dx2 + x2 dx1 = d(x1 x2)
        let alpha = &DiffForm::term(2, vec![1], var(2, 0)) + &DiffForm::term(2, vec![0], var(2, 1));
        let g = poincare_integrate(&alpha).unwrap();
        assert_eq!(g, Poly::monomial(2, vec![1, 1], Scalar::one()));
        // and dg really is alpha
        assert_eq!(DiffForm::function(g).exterior_derivative(), alpha);
    }

    #[test]
    fn integrate_rejects_non_closed() {
        // alpha = x2 dx1 has d(alpha) = -dx1^dx2 != 0
        let alpha = DiffForm::term(2, vec![0], var(2, 1));
        let err = poincare_integrate(&alpha).unwrap_err();
        assert_eq!(err, Error::NotClosed { axis_a: 0, axis_b: 1 });
    }

    #[test]
    fn integrate_constant_form() {
        // dx1 integrates to x1
        let alpha = DiffForm::term(2, vec![0], Poly::one(2));
        assert_eq!(poincare_integrate(&alpha).unwrap(), var(2, 0));
    }

    #[test]
    fn wedge_differentials_full_rank() {
        let f = Poly::monomial(2, vec![1, 1], Scalar::one());
        let g = var(2, 1);
        let w = wedge_differentials(&[f, g]).unwrap();
        // d(x1x2) ^ dx2 = x2 dx1^dx2
        assert_eq!(w.component(&[0, 1]), var(2, 1));
    }

    #[test]
    fn divergence_via_volume_contraction() {
        // d(i_X Omega) = (div X) Omega
        let x = VectorField::from_components(vec![
            Poly::monomial(2, vec![2, 0], Scalar::one()),
            Poly::monomial(2, vec![1, 1], Scalar::from_int(3)),
        ])
        .unwrap();
        let omega = DiffForm::volume(2);
        let d_ix = contract(&x, &omega).unwrap().exterior_derivative();
        assert_eq!(d_ix.component(&[0, 1]), x.divergence());
    }
}
