//! Root finding over the coefficient field.
//!
//! A monic characteristic polynomial with rational-complex coefficients is
//! rescaled to a monic polynomial over the Gaussian integers; its roots in
//! the field are then Gaussian-integer divisors of the constant term (the
//! ring is integrally closed), which we enumerate by factoring the constant
//! term into Gaussian primes. Whatever does not split off stays behind as a
//! rootless remainder for error reporting.

use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian integer, used only inside root enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussInt::new(BigInt::from(re), BigInt::from(im))
    }

    pub fn one() -> Self {
        GaussInt::new(BigInt::one(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    pub fn mul(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    #[cfg(test)]
    pub fn add(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    /// Nearest-lattice-point division: returns `(q, r)` with
    /// `self = q*rhs + r` and `norm(r) < norm(rhs)`.
    pub fn divrem(&self, rhs: &GaussInt) -> (GaussInt, GaussInt) {
        assert!(!rhs.is_zero(), "division by zero Gaussian integer");
        let n = rhs.norm();
        let prod = self.mul(&rhs.conj());
        let q = GaussInt::new(round_div(&prod.re, &n), round_div(&prod.im, &n));
        let r = self.sub(&q.mul(rhs));
        (q, r)
    }

    /// Exact division test.
    pub fn divides(&self, dividend: &GaussInt) -> Option<GaussInt> {
        let (q, r) = dividend.divrem(self);
        r.is_zero().then_some(q)
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

/// Rounds `a / b` to the nearest integer, halves away from zero (any
/// consistent tie rule keeps the remainder norm strictly smaller).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (num, den) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    if num.is_negative() {
        -((-&num * &two + &den) / (&den * &two))
    } else {
        (&num * &two + &den) / (&den * &two)
    }
}

const UNITS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Factors a nonzero Gaussian integer into Gaussian primes; returns the
/// list of `(prime, exponent)` pairs, ignoring the unit.
fn factor(z: &GaussInt) -> Vec<(GaussInt, u32)> {
    let mut z = z.clone();
    let mut factors: Vec<(GaussInt, u32)> = Vec::new();
    let mut push = |p: GaussInt, z: &mut GaussInt| {
        let mut count = 0;
        while let Some(q) = p.divides(z) {
            *z = q;
            count += 1;
        }
        if count > 0 {
            factors.push((p, count));
        }
    };
    let mut norm = z.norm();
    let mut p = BigInt::from(2);
    while norm > BigInt::one() {
        while (&norm % &p).is_zero() {
            for pi in gaussian_primes_above(&p) {
                push(pi, &mut z);
            }
            norm = z.norm();
        }
        p += 1u32;
        if &p * &p > norm && norm > BigInt::one() {
            // the remaining norm is a rational prime
            p = norm.clone();
        }
    }
    factors
}

/// The Gaussian primes above a rational prime `p`: `1+i` above 2, `p`
/// itself when inert (`p = 3 mod 4`), and a conjugate pair when split.
fn gaussian_primes_above(p: &BigInt) -> Vec<GaussInt> {
    if *p == BigInt::from(2) {
        return vec![GaussInt::from_ints(1, 1)];
    }
    if p.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        return vec![GaussInt::new(p.clone(), BigInt::zero())];
    }
    // p = 1 mod 4 splits: find a^2 + b^2 = p by direct search.
    let mut a = BigInt::one();
    loop {
        let rest = p - &a * &a;
        if rest < BigInt::zero() {
            unreachable!("every prime 1 mod 4 is a sum of two squares");
        }
        let b = Roots::sqrt(&rest);
        if &b * &b == rest {
            let pi = GaussInt::new(a, b);
            return vec![pi.conj(), pi];
        }
        a += 1u32;
    }
}

/// All divisors of a nonzero Gaussian integer, up to units.
fn divisors(z: &GaussInt) -> Vec<GaussInt> {
    let factors = factor(z);
    let mut divs = vec![GaussInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&p);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs
}

/// All roots of `p` that lie in the coefficient field, with multiplicity,
/// together with the monic rootless factor that remains after deflation.
/// The roots are sorted descending by real part, then imaginary part.
pub fn field_roots(p: &UniPoly) -> (Vec<Scalar>, UniPoly) {
    assert!(!p.is_zero(), "root finding on the zero polynomial");
    let monic = p.monic();
    let n = monic.degree().unwrap();
    if n == 0 {
        return (Vec::new(), monic);
    }

    // Clear denominators: with t = s/d, q(s) = d^n p(s/d) is monic over the
    // Gaussian integers, and field roots of p correspond to ring roots of q.
    let mut d = BigInt::one();
    for c in monic.coeffs() {
        d = d.lcm(c.re().denom()).lcm(c.im().denom());
    }
    let d_scalar = Scalar::new(BigRational::from_integer(d.clone()), BigRational::zero());
    let mut power = Scalar::one(); // d^{n-j}, built from the top down
    let mut scaled = vec![Scalar::zero(); n + 1];
    for j in (0..=n).rev() {
        scaled[j] = &monic.coeff(j) * &power;
        debug_assert!(scaled[j].re().denom().is_one() && scaled[j].im().denom().is_one());
        power = &power * &d_scalar;
    }
    let mut q = UniPoly::new(scaled);

    let mut roots: Vec<Scalar> = Vec::new();
    // Split off any roots at zero first so the constant term is nonzero.
    while q.coeff(0).is_zero() && q.degree() > Some(0) {
        roots.push(Scalar::zero());
        let (quot, rem) = q.divrem(&UniPoly::t());
        debug_assert!(rem.is_zero());
        q = quot;
    }

    if q.degree() > Some(0) {
        let c0 = q.coeff(0);
        let z0 = GaussInt::new(c0.re().to_integer(), c0.im().to_integer());
        let mut candidates: Vec<GaussInt> = Vec::new();
        for base in divisors(&z0) {
            for (ur, ui) in UNITS {
                candidates.push(base.mul(&GaussInt::from_ints(ur, ui)));
            }
        }
        let d_rat = BigRational::from_integer(d);
        for cand in candidates {
            let s = cand.to_scalar();
            while q.degree() > Some(0) && q.eval(&s).is_zero() {
                roots.push(Scalar::new(s.re() / &d_rat, s.im() / &d_rat));
                let (quot, rem) = q.divrem(&UniPoly::linear_root(&s));
                debug_assert!(rem.is_zero());
                q = quot;
            }
        }
    }

    roots.sort_by(|a, b| b.canonical_cmp(a));

    // Map the rootless remainder back to the original variable and make it
    // monic: r(t) = q(d t) / d^{deg q}.
    let deg_rem = q.degree().unwrap();
    let d_scalar_pow = |k: usize| -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * &d_scalar;
        }
        acc
    };
    let rem_coeffs: Vec<Scalar> = (0..=deg_rem)
        .map(|j| &q.coeff(j) * &d_scalar_pow(j))
        .collect();
    let remainder = UniPoly::new(rem_coeffs).monic();
    (roots, remainder)
}
