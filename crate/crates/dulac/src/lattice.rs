//! Integer linear algebra: row-style Hermite normal form with a unimodular
//! transform, integer matrix rank, and saturated integer kernels. This is
//! what turns eigenvalue relations into a canonical basis of the resonance
//! lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form computed in place by unimodular row
/// operations: pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, zero rows sink to the bottom. Returns the rank.
pub(crate) fn row_hnf(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        // Clear below the pivot with 2x2 unimodular combinations.
        for i in r + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[r][col].clone();
            let b = m[i][col].clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            for j in 0..cols {
                let top = &m[r][j] * &s + &m[i][j] * &t;
                let bot = &m[r][j] * &b_g - &m[i][j] * &a_g;
                m[r][j] = top;
                m[i][j] = bot;
            }
        }
        if m[r][col].is_negative() {
            for j in 0..cols {
                m[r][j] = -&m[r][j];
            }
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..r {
            if m[i][col].is_zero() {
                continue;
            }
            let q = m[i][col].div_floor(&m[r][col]);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = &m[i][j] - &(&q * &m[r][j]);
                m[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// Rank of an integer matrix given by rows.
pub(crate) fn rank_big(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    row_hnf(&mut m)
}

/// Basis of the saturated kernel `{ c : A c = 0 }` of the integer matrix
/// whose rows are given, acting on integer column vectors of length `n`.
/// The basis is itself in Hermite normal form, so it is canonical.
pub(crate) fn kernel_big(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // Row-reduce [A^T | I]; rows whose A^T-block vanishes carry kernel
    // vectors of A in their identity block, and unimodularity of the whole
    // transform makes the result a basis of the full (saturated) kernel.
    let m = rows.len();
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..m).map(|i| rows[i][j].clone()).collect();
            row.extend((0..n).map(|k| {
                if k == j {
                    BigInt::from(1)
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    // Restrict pivot search to the A^T block by reducing it first: the HNF
    // routine scans columns left to right, so the first m columns are
    // cleared before the identity block is ever used for pivots.
    row_hnf(&mut aug);
    let mut kernel: Vec<Vec<BigInt>> = aug
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    row_hnf(&mut kernel);
    kernel
}

/// Public `i64` surface over [`kernel_big`]; the lattice entries that occur
/// in practice are tiny, so the narrowing is checked but expected to pass.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    kernel_big(&big, n)
        .into_iter()
        .map(|row| row.into_iter().map(|v| narrow(&v)).collect())
        .collect()
}

/// Rank of an integer matrix given by rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    rank_big(&big)
}

pub(crate) fn narrow(v: &BigInt) -> i64 {
    i64::try_from(v).expect("lattice entry fits in 64 bits")
}
