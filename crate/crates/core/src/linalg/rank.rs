use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// Scales every row by the lcm of its denominators. Returns the integer
/// matrix and the per-row multipliers. Row scaling preserves rank.
pub fn clear_denominators(m: &RatMatrix) -> (IntMatrix, Vec<BigInt>) {
    let multipliers: Vec<BigInt> = (0..m.rows())
        .map(|i| common_denominator(m.row(i)))
        .collect();
    let cleared = IntMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let q = &m[(i, j)];
        q.numer() * (&multipliers[i] / q.denom())
    });
    (cleared, multipliers)
}

/// Fraction-free (Bareiss) elimination in place. Pivots are the first
/// nonzero entry at or below the current row, scanning columns left to
/// right. Returns the rank and the number of row swaps performed.
fn bareiss_eliminate(a: &mut IntMatrix) -> (usize, usize) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap_rows(p, rank);
            swaps += 1;
        }
        let pivot = a[(rank, c)].clone();
        for i in rank + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = &pivot * &a[(i, j)] - &lead * &a[(rank, j)];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[(i, j)] = q;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    (rank, swaps)
}

pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    bareiss_eliminate(&mut a).0
}

/// Rank over the rationals.
pub fn rank_rational(m: &RatMatrix) -> usize {
    let (cleared, _) = clear_denominators(m);
    bareiss_rank(&cleared)
}

pub fn determinant_int(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let (rank, swaps) = bareiss_eliminate(&mut a);
    if rank < n {
        return Ok(BigInt::zero());
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if swaps % 2 == 1 { -det } else { det })
}

pub fn determinant_rational(m: &RatMatrix) -> Result<Rational> {
    let (cleared, multipliers) = clear_denominators(m);
    let det = determinant_int(&cleared)?;
    let scale: BigInt = multipliers.iter().product();
    Ok(Rational::new(det, scale))
}

/// Solves `a x = b` for square invertible `a`; `None` when `a` is singular.
pub fn solve_rational(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::Dimension {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let rhs = RatMatrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    Ok(gauss_jordan(a, &rhs).map(|x| (0..x.rows()).map(|i| x[(i, 0)].clone()).collect()))
}

pub fn inverse_rational(a: &RatMatrix) -> Result<Option<RatMatrix>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(gauss_jordan(a, &RatMatrix::identity(a.rows())))
}

fn gauss_jordan(a: &RatMatrix, rhs: &RatMatrix) -> Option<RatMatrix> {
    let n = a.rows();
    let w = rhs.cols();
    let mut m = RatMatrix::from_fn(n, n + w, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            rhs[(i, j - n)].clone()
        }
    });
    for c in 0..n {
        let p = (c..n).find(|&i| !m[(i, c)].is_zero())?;
        m.swap_rows(p, c);
        let inv = m[(c, c)].recip();
        for j in c..n + w {
            m[(c, j)] = &m[(c, j)] * &inv;
        }
        for i in 0..n {
            if i == c || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..n + w {
                let v = &m[(i, j)] - &f * &m[(c, j)];
                m[(i, j)] = v;
            }
        }
    }
    Some(RatMatrix::from_fn(n, w, |i, j| m[(i, n + j)].clone()))
}
