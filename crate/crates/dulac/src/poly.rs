//! Sparse multivariate polynomials over Q(i).
//!
//! Terms are stored in a `BTreeMap` keyed by [`MultiIndex`] under the
//! graded lexicographic order, so iteration order — and therefore printing,
//! serialization and hashing of results — is canonical. Zero coefficients
//! are never stored; structural equality is mathematical equality.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a monomial. Its length always equals the ambient
/// dimension of the polynomial that owns it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The zero multi-index in `dim` variables (the constant monomial).
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit multi-index `e_j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Decrement coordinate `j`; `None` when it is already zero.
    pub fn step_down(&self, j: usize) -> Option<MultiIndex> {
        if self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(MultiIndex(e))
    }

    pub fn step_up(&self, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    /// Graded lexicographic: total degree first, then the exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `dim` variables with [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Scalar::one())
    }

    /// The coordinate function `x_j`.
    pub fn var(dim: usize, j: usize) -> Self {
        assert!(j < dim, "variable index out of range");
        let mut p = Poly::zero(dim);
        p.add_term(MultiIndex::unit(dim, j), Scalar::one());
        p
    }

    /// `c * x^exps`.
    pub fn monomial(dim: usize, exponents: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exponents.len(), dim, "exponent vector has wrong length");
        let mut p = Poly::zero(dim);
        p.add_term(MultiIndex::new(exponents), c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// Adds `c * x^idx`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, idx: MultiIndex, c: Scalar) {
        assert_eq!(idx.len(), self.dim, "multi-index has wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        let mut out = Poly::zero(self.dim);
        for (idx, a) in &self.terms {
            out.terms.insert(idx.clone(), a * c);
        }
        out
    }

    /// Largest total degree among the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|i| i.degree()).max()
    }

    /// Smallest total degree among the terms; `None` for the zero polynomial.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|i| i.degree())
    }

    /// The homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if idx.degree() == k {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// True when every term has total degree exactly `k` (vacuously true
    /// for the zero polynomial).
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|i| i.degree() == k)
    }

    /// Drops every term of total degree greater than `order`.
    pub fn truncate(&self, order: u32) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if idx.degree() <= order {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// `d/dx_j`.
    pub fn derivative(&self, j: usize) -> Poly {
        assert!(j < self.dim, "variable index out of range");
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if let Some(down) = idx.step_down(j) {
                out.add_term(down, c.mul_int(idx.get(j) as i64));
            }
        }
        out
    }

    /// Product with all terms of degree above `order` discarded.
    pub fn mul_trunc(&self, other: &Poly, order: u32) -> Poly {
        assert_eq!(self.dim, other.dim, "dimension mismatch in product");
        let mut out = Poly::zero(self.dim);
        for (ia, ca) in &self.terms {
            let da = ia.degree();
            if da > order {
                continue;
            }
            for (ib, cb) in &other.terms {
                if da + ib.degree() > order {
                    continue;
                }
                out.add_term(ia.add(ib), ca * cb);
            }
        }
        out
    }

    /// `self^k` truncated at `order`.
    pub fn pow_trunc(&self, k: u32, order: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        for _ in 0..k {
            out = out.mul_trunc(self, order);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    /// Substitutes `maps[j]` for `x_j` and truncates at `order`. All the
    /// substituted polynomials must share one target dimension.
    pub fn compose(&self, maps: &[Poly], order: u32) -> Result<Poly> {
        if maps.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: maps.len() });
        }
        let out_dim = maps.first().map(|m| m.dim).unwrap_or(0);
        for m in maps {
            if m.dim != out_dim {
                return Err(Error::DimensionMismatch { expected: out_dim, found: m.dim });
            }
        }
        // When every substituted polynomial vanishes at the origin, a term
        // of degree d contributes only in degrees >= d.
        let maps_vanish = maps.iter().all(|m| m.constant_term().is_zero());
        let mut powers: Vec<Vec<Poly>> = maps.iter().map(|_| vec![Poly::one(out_dim)]).collect();
        let mut acc = Poly::zero(out_dim);
        for (idx, c) in &self.terms {
            if maps_vanish && idx.degree() > order {
                continue;
            }
            let mut prod = Poly::constant(out_dim, c.clone());
            for j in 0..self.dim {
                let e = idx.get(j) as usize;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap().mul_trunc(&maps[j], order);
                    powers[j].push(next);
                }
                prod = prod.mul_trunc(&powers[j][e], order);
                if prod.is_zero() {
                    break;
                }
            }
            acc = &acc + &prod;
        }
        Ok(acc.truncate(order))
    }

    /// Renders with the supplied variable names; the output parses back
    /// under the problem-text grammar.
    pub fn to_text(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.dim, "need one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (idx, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.display_sign_split();
            if pos == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut pieces: Vec<String> = Vec::new();
            let is_constant = idx.degree() == 0;
            if !mag.is_one() || is_constant {
                // A mixed real/imaginary coefficient is a sum and must be
                // parenthesized before multiplying by the monomial, and
                // also after a minus sign, where "-1-i" would rebind.
                let s = mag.to_string();
                if !mag.re().is_zero() && !mag.im().is_zero() && (!is_constant || neg) {
                    pieces.push(format!("({s})"));
                } else {
                    pieces.push(s);
                }
            }
            for j in 0..self.dim {
                match idx.get(j) {
                    0 => {}
                    1 => pieces.push(names[j].clone()),
                    e => pieces.push(format!("{}^{}", names[j], e)),
                }
            }
            out.push_str(&pieces.join("*"));
        }
        out
    }

    fn default_names(dim: usize) -> Vec<String> {
        (1..=dim).map(|j| format!("x{j}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Poly::default_names(self.dim)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(idx.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let mut out = Poly::zero(self.dim);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &rhs.terms {
                out.add_term(ia.add(ib), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), -c);
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
