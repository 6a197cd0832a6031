//! Univariate polynomials over the coefficient field, used for
//! characteristic polynomials and the polynomial side of the semisimple /
//! nilpotent splitting: division with remainder, extended gcd, squarefree
//! part, and composition modulo a fixed polynomial.

use crate::scalar::Scalar;
use num_traits::Zero;
use std::fmt;

/// Coefficients in ascending powers; the representation keeps no trailing
/// zeros, so `degree` is `coeffs.len() - 1` and the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `t - c`.
    pub fn linear_root(c: &Scalar) -> Self {
        UniPoly::new(vec![-c, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_int(k as i64))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = self.leading_coeff().inv().expect("leading coefficient is nonzero");
        self.scale(&inv)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading_coeff().inv().expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = &rem[k - d + j] - &(&q * b);
            }
            quot[k - d] = q;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, modulus: &UniPoly) -> UniPoly {
        self.divrem(modulus).1
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, `g`
    /// monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = UniPoly::one();
        let mut u1 = UniPoly::zero();
        let mut v0 = UniPoly::zero();
        let mut v1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if r0.is_zero() {
            return (UniPoly::zero(), UniPoly::zero(), UniPoly::zero());
        }
        let lead_inv = r0.leading_coeff().inv().expect("leading coefficient is nonzero");
        (
            r0.scale(&lead_inv),
            u0.scale(&lead_inv),
            v0.scale(&lead_inv),
        )
    }

    /// The squarefree part `self / gcd(self, self')`, monic. In
    /// characteristic zero this has exactly the distinct roots of `self`.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// `self(arg)` reduced modulo `modulus` at every Horner step, so
    /// intermediate degrees stay below `deg(modulus)`.
    pub fn compose_mod(&self, arg: &UniPoly, modulus: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(arg).add(&UniPoly::constant(c.clone())).rem(modulus);
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let (neg, mag) = c.display_sign_split();
            let mag_str = mag.to_string();
            let body = if power.is_empty() {
                mag_str
            } else if mag_str == "1" {
                power
            } else if mag.is_rational() || mag.re().is_zero() {
                format!("{mag_str}*{power}")
            } else {
                format!("({mag_str})*{power}")
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, -3, 2, 1]); // 1 - 3t^2 + 2t^3 + t^4
        let b = p(&[-1, 1]); // t - 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().map_or(true, |d| d < 1));
    }

    #[test]
    fn gcd_of_common_factor() {
        // (t-1)(t-2) and (t-1)(t-3) share t-1
        let a = p(&[2, -3, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = p(&[2, -3, 1]);
        let b = p(&[3, -4, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (t-1)^2 (t-2) -> (t-1)(t-2)
        let a = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(a.squarefree_part(), p(&[-1, 1]).mul(&p(&[-2, 1])).monic());
    }

    #[test]
    fn squarefree_of_squarefree_is_identity() {
        let a = p(&[-2, 0, 1]); // t^2 - 2, irreducible over the rationals
        assert_eq!(a.squarefree_part(), a);
    }

    #[test]
    fn compose_mod_matches_direct() {
        let f = p(&[0, 0, 1]); // t^2
        let g = p(&[1, 1]); // t + 1
        let m = p(&[0, 0, 0, 1]); // t^3
        // (t+1)^2 = t^2 + 2t + 1, already reduced mod t^3
        assert_eq!(f.compose_mod(&g, &m), p(&[1, 2, 1]));
    }

    #[test]
    fn eval_with_complex_argument() {
        // t^2 + 1 vanishes at i
        let f = p(&[1, 0, 1]);
        assert!(f.eval(&Scalar::i()).is_zero());
        assert_eq!(f.eval(&Scalar::from_int(2)), Scalar::from_int(5));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "t^2 - 2");
        assert_eq!(p(&[0, 1]).to_string(), "t");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let c = UniPoly::new(vec![Scalar::i(), Scalar::from_int(1)]);
        assert_eq!(c.to_string(), "t + i");
    }
}
