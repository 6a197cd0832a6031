//! Analysis of the linear part of a vector field: extraction, the
//! semisimple/nilpotent splitting, diagonalization over the coefficient
//! field, and linear changes of coordinates.
//!
//! The splitting is computed without leaving exact arithmetic: Newton's
//! iteration against the squarefree part of the characteristic polynomial
//! converges in the quotient ring to a polynomial `w` with `S = w(A)`
//! semisimple and `N = A - S` nilpotent. The witness polynomial is kept so
//! the commutation `[S, N] = 0` is true by construction and checkable.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::roots::field_roots;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use crate::vector_field::VectorField;

/// The additive Jordan decomposition `A = S + N` with a polynomial witness
/// `S = witness(A)`.
#[derive(Clone, Debug)]
pub struct LinearSplit {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
    pub witness: UniPoly,
}

/// Extracts the linear part of a vector field as a matrix, `A[i][j]` being
/// the coefficient of `x_j` in the `i`-th component. Errors when some
/// component has a nonzero constant term, since the whole theory is local
/// at a fixed point.
pub fn linear_part(x: &VectorField) -> Result<Matrix> {
    let n = x.dim();
    for i in 0..n {
        if !x.component(i).constant_term().is_zero() {
            return Err(Error::NonVanishingAtOrigin { component: i });
        }
    }
    let mut a = Matrix::zero(n, n);
    for i in 0..n {
        let lin = x.component(i).homogeneous_part(1);
        for (idx, c) in lin.terms() {
            let j = (0..n).find(|&j| idx.get(j) == 1).expect("degree-one monomial");
            a.set(i, j, c.clone());
        }
    }
    Ok(a)
}

/// Computes the semisimple/nilpotent splitting of a square matrix by
/// Newton iteration in `F[t]/(chi)` against the squarefree part `g` of the
/// characteristic polynomial `chi`. The iterate `s` starts at `t` and
/// satisfies `g(s) = 0 mod chi` after at most `log2(n) + 1` steps; the
/// final `s` is the witness.
pub fn jordan_chevalley(a: &Matrix) -> LinearSplit {
    assert!(a.is_square(), "splitting of a non-square matrix");
    let n = a.rows();
    let chi = a.charpoly();
    let g = chi.squarefree_part();
    // g is squarefree, so gcd(g, g') = 1 and v solves v*g' = 1 mod g.
    let (one, _u, v) = g.xgcd(&g.derivative());
    debug_assert!(one == UniPoly::one());

    let mut s = UniPoly::t();
    let mut steps = 0usize;
    loop {
        let gs = g.compose_mod(&s, &chi);
        if gs.is_zero() {
            break;
        }
        let vs = v.compose_mod(&s, &chi);
        s = s.sub(&vs.mul(&gs)).rem(&chi);
        steps += 1;
        assert!(steps <= n + 1, "Newton iteration failed to converge");
    }

    let semisimple = a.eval_poly(&s);
    let nilpotent = a - &semisimple;
    debug_assert!(is_nilpotent(&nilpotent));
    debug_assert!(semisimple.eval_poly(&g).is_zero());
    LinearSplit { semisimple, nilpotent, witness: s }
}

fn is_nilpotent(m: &Matrix) -> bool {
    let n = m.rows();
    let mut acc = m.clone();
    for _ in 0..n {
        if acc.is_zero() {
            return true;
        }
        acc = &acc * m;
    }
    acc.is_zero()
}

/// Diagonalizes a semisimple matrix over the coefficient field: returns
/// `(gamma, p, p_inv)` with `p_inv * s * p = diag(gamma)`.
///
/// A matrix that is already diagonal passes through untouched (its diagonal
/// order is preserved and `p = I`); otherwise the eigenvalues are sorted
/// descending by real part, then imaginary part, and each eigenvector
/// column is normalized so its first nonzero entry is 1. Errors when an
/// eigenvalue lies outside the field or an eigenspace is too small.
pub fn diagonalize(s: &Matrix) -> Result<(Vec<Scalar>, Matrix, Matrix)> {
    assert!(s.is_square(), "diagonalization of a non-square matrix");
    let n = s.rows();
    if s.is_diagonal() {
        return Ok((s.diagonal_entries(), Matrix::identity(n), Matrix::identity(n)));
    }

    let chi = s.charpoly();
    let (roots, remainder) = field_roots(&chi);
    if remainder.degree() > Some(0) {
        return Err(Error::SpectrumNotInField { factor: remainder.to_string() });
    }

    let mut p = Matrix::zero(n, n);
    let mut col = 0;
    let mut idx = 0;
    while idx < roots.len() {
        let lambda = roots[idx].clone();
        let mut mult = 0;
        while idx < roots.len() && roots[idx] == lambda {
            mult += 1;
            idx += 1;
        }
        let shifted = s - &Matrix::diagonal(&vec![lambda.clone(); n]);
        let kernel = shifted.kernel_basis();
        if kernel.len() != mult {
            return Err(Error::NotSemisimple { eigenvalue: lambda.to_string() });
        }
        for v in kernel {
            let lead = v.iter().find(|c| !c.is_zero()).expect("kernel vector is nonzero");
            let inv = lead.inv().expect("leading entry is nonzero");
            for (row, c) in v.iter().enumerate() {
                p.set(row, col, c * &inv);
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, n);
    let p_inv = p.inverse().expect("eigenvector matrix is invertible");
    Ok((roots, p, p_inv))
}

/// Everything the normalization pipeline needs to know about a linear
/// part, in the original coordinates: the matrix itself, its splitting,
/// and the change of basis that diagonalizes the semisimple factor.
#[derive(Clone, Debug)]
pub struct LinearData {
    pub a: Matrix,
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
    pub witness: UniPoly,
    pub gamma: Vec<Scalar>,
    pub p: Matrix,
    pub p_inv: Matrix,
}

impl LinearData {
    pub fn analyze(x: &VectorField) -> Result<LinearData> {
        let a = linear_part(x)?;
        let split = jordan_chevalley(&a);
        let (gamma, p, p_inv) = diagonalize(&split.semisimple)?;
        Ok(LinearData {
            a,
            semisimple: split.semisimple,
            nilpotent: split.nilpotent,
            witness: split.witness,
            gamma,
            p,
            p_inv,
        })
    }

    /// The nilpotent part expressed in the eigen-coordinates, where it
    /// commutes with `diag(gamma)`.
    pub fn eigen_nilpotent(&self) -> Matrix {
        &(&self.p_inv * &self.nilpotent) * &self.p
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.nilpotent.is_zero()
    }
}

/// Pushes a vector field through the linear substitution `x = P y`:
/// the result is `Y(y) = P^{-1} X(P y)`, truncated at `order`. A field
/// with linear part `A` acquires linear part `P^{-1} A P`.
pub fn apply_linear_change(x: &VectorField, p: &Matrix, order: u32) -> Result<VectorField> {
    let n = x.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.rows() });
    }
    let p_inv = p.inverse()?;
    // Substitution polynomials: (P y)_i = sum_j P[i][j] y_j.
    let subst: Vec<Poly> = (0..n)
        .map(|i| {
            let mut s = Poly::zero(n);
            for j in 0..n {
                s = &s + &Poly::var(n, j).scale(p.get(i, j));
            }
            s
        })
        .collect();
    let composed: Vec<Poly> = (0..n)
        .map(|i| x.component(i).compose(&subst, order))
        .collect::<Result<_>>()?;
    let components: Vec<Poly> = (0..n)
        .map(|i| {
            let mut c = Poly::zero(n);
            for (j, comp) in composed.iter().enumerate() {
                c = &c + &comp.scale(p_inv.get(i, j));
            }
            c
        })
        .collect();
    VectorField::from_components(components)
}
