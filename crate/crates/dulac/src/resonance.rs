//! Resonance structure of a spectrum: enumeration of the resonance
//! relations among eigenvalues, the lattice of toral weights orthogonal to
//! them, and the diagonal symmetry fields those weights generate.
//!
//! A monomial `x^b d_l` has weight `<b, gamma> - gamma_l`; it survives in a
//! normal form exactly when the weight vanishes. Writing `c = b - e_l`
//! turns this into an integer relation `<c, gamma> = 0` with every entry of
//! `c` at least -1, at most one entry negative, and `sum(c) >= 1`. The
//! enumeration below searches that simplex exactly.

use crate::error::{Error, Result};
use crate::lattice;
use crate::poly::MultiIndex;
use crate::scalar::Scalar;
use crate::vector_field::{lie_bracket, VectorField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Weight of the monomial vector field `x^b d_l` with respect to the
/// eigenvalues: `sum_j b_j gamma_j - gamma_l`.
pub fn monomial_weight(gamma: &[Scalar], b: &MultiIndex, l: usize) -> Result<Scalar> {
    let n = gamma.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    if l >= n {
        return Err(Error::AxisOutOfRange { axis: l, dim: n });
    }
    let mut w = -&gamma[l];
    for (j, g) in gamma.iter().enumerate() {
        let e = b.get(j);
        if e != 0 {
            w = &w + &g.mul_int(e as i64);
        }
    }
    Ok(w)
}

/// True when `x^b d_l` is a resonant monomial: total degree at least 2 and
/// vanishing weight.
pub fn is_resonant_monomial(gamma: &[Scalar], b: &MultiIndex, l: usize) -> Result<bool> {
    if b.degree() < 2 {
        return Ok(false);
    }
    Ok(monomial_weight(gamma, b, l)?.is_zero())
}

/// True when `x^b d_l` is resonant and, on its own, divergence free
/// (`b_l = 0`); these are the building blocks of volume-preserving normal
/// forms.
pub fn isochore_weight_check(gamma: &[Scalar], b: &MultiIndex, l: usize) -> Result<bool> {
    Ok(is_resonant_monomial(gamma, b, l)? && b.get(l) == 0)
}

/// One resonance relation `<c, gamma> = 0` in shifted exponents
/// `c = b - e_l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ResonanceRelation {
    pub c: Vec<i64>,
}

impl ResonanceRelation {
    /// The order `sum(c)`; resonant monomials built on this relation have
    /// total degree `order + 1`.
    pub fn order(&self) -> i64 {
        self.c.iter().sum()
    }
}

/// All resonance relations up to a search bound, with the rank data that
/// says how much of the full relation lattice they span.
#[derive(Clone, Debug)]
pub struct ResonanceSet {
    pub gamma: Vec<Scalar>,
    pub bound: u32,
    pub relations: Vec<ResonanceRelation>,
    /// Rank of the lattice spanned by the relations found.
    pub q: usize,
    /// Rank of the full lattice `{ c : <c, gamma> = 0 }`, with no sign
    /// constraints; `q` can never exceed it.
    pub q_upper: usize,
    /// True when the search provably saw the whole structure: either the
    /// found relations already span a lattice of the maximal rank, or
    /// doubling the bound produces no larger span.
    pub complete: bool,
}

/// Clears denominators: returns integer vectors `a`, `b` with
/// `gamma_j = (a_j + i b_j) / d` for a common positive `d`.
fn integer_spectrum(gamma: &[Scalar]) -> (Vec<i128>, Vec<i128>) {
    let mut d = BigInt::one();
    for g in gamma {
        d = d.lcm(g.re().denom()).lcm(g.im().denom());
    }
    let to_int = |r: &num_rational::BigRational| -> i128 {
        let v = r.numer() * (&d / r.denom());
        i128::try_from(&v).expect("eigenvalue numerator fits in 128 bits after clearing denominators")
    };
    let a = gamma.iter().map(|g| to_int(g.re())).collect();
    let b = gamma.iter().map(|g| to_int(g.im())).collect();
    (a, b)
}

fn collect_relations(re: &[i128], im: &[i128], bound: i64) -> Vec<Vec<i64>> {
    let n = re.len();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    // Depth-first over c_j >= -1 with sum(c) <= bound; remaining
    // coordinates can always contribute -1 each, which bounds the current
    // coordinate exactly.
    fn recurse(
        j: usize,
        sum: i64,
        dot_re: i128,
        dot_im: i128,
        negatives: usize,
        bound: i64,
        re: &[i128],
        im: &[i128],
        c: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = re.len();
        if j == n {
            if sum >= 1 && dot_re == 0 && dot_im == 0 {
                out.push(c.clone());
            }
            return;
        }
        let slack = (n - j - 1) as i64;
        let hi = bound - sum + slack;
        let lo = if negatives > 0 { 0 } else { -1 };
        for v in lo..=hi {
            c[j] = v;
            recurse(
                j + 1,
                sum + v,
                dot_re + v as i128 * re[j],
                dot_im + v as i128 * im[j],
                negatives + usize::from(v < 0),
                bound,
                re,
                im,
                c,
                out,
            );
        }
        c[j] = 0;
    }
    recurse(0, 0, 0, 0, 0, bound, re, im, &mut c, &mut out);
    out.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
    out
}

fn span_hnf(relations: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rank = lattice::row_hnf(&mut rows);
    rows.truncate(rank);
    rows
}

/// Enumerates every resonance relation with `sum(c) <= bound` and computes
/// the rank and completeness data.
pub fn enumerate_resonances(gamma: &[Scalar], bound: u32) -> ResonanceSet {
    assert!(!gamma.is_empty(), "empty spectrum");
    let n = gamma.len();
    let (re, im) = integer_spectrum(gamma);

    let found = collect_relations(&re, &im, bound as i64);
    let span = span_hnf(&found);
    let q = span.len();

    // The full lattice has rank n minus the rational rank of the real and
    // imaginary constraint rows.
    let constraint_rows: Vec<Vec<BigInt>> = vec![
        re.iter().map(|&v| BigInt::from(v)).collect(),
        im.iter().map(|&v| BigInt::from(v)).collect(),
    ];
    let q_upper = n - lattice::rank_big(&constraint_rows);

    let complete = if q == q_upper {
        true
    } else {
        let doubled = collect_relations(&re, &im, 2 * bound as i64);
        span_hnf(&doubled) == span
    };

    ResonanceSet {
        gamma: gamma.to_vec(),
        bound,
        relations: found.into_iter().map(|c| ResonanceRelation { c }).collect(),
        q,
        q_upper,
        complete,
    }
}

/// The lattice of integer weight vectors orthogonal to every resonance
/// relation and constant across equal eigenvalues; its rank `r` is the
/// dimension of the torus acting on the normal form.
#[derive(Clone, Debug)]
pub struct WeightLattice {
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
    pub r: usize,
}

pub fn weight_lattice(resonances: &ResonanceSet) -> WeightLattice {
    let n = resonances.gamma.len();
    let mut rows: Vec<Vec<i64>> = resonances.relations.iter().map(|r| r.c.clone()).collect();
    // Weights must agree on coordinates with equal eigenvalues, so the
    // torus also commutes with any nilpotent coupling between them.
    for j in 0..n {
        for k in j + 1..n {
            if resonances.gamma[j] == resonances.gamma[k] {
                let mut row = vec![0i64; n];
                row[j] = 1;
                row[k] = -1;
                rows.push(row);
            }
        }
    }
    let basis = lattice::integer_kernel(&rows, n);
    let r = basis.len();
    WeightLattice { dim: n, basis, r }
}

/// The diagonal symmetry fields `Z_w = sum_j w_j x_j d_j`, one per basis
/// weight.
#[derive(Clone, Debug)]
pub struct TorusGenerators {
    pub weights: Vec<Vec<i64>>,
    pub fields: Vec<VectorField>,
}

pub fn torus_generators(lat: &WeightLattice) -> TorusGenerators {
    let fields: Vec<VectorField> = lat
        .basis
        .iter()
        .map(|w| {
            let entries: Vec<Scalar> = w.iter().map(|&v| Scalar::from_int(v)).collect();
            VectorField::diagonal(&entries)
        })
        .collect();
    // Diagonal fields commute; keep the check because the generators are
    // advertised as a commuting family.
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let br = lie_bracket(&fields[i], &fields[j], 2).expect("same dimension");
            debug_assert!(br.is_zero(), "torus generators must commute");
        }
    }
    TorusGenerators { weights: lat.basis.clone(), fields }
}
