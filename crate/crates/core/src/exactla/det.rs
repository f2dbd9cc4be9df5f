use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

fn require_square(a: &IntegerMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(a: &IntegerMatrix) -> Result<BigInt> {
    require_square(a)?;
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // (m_kk * m_ij - m_ik * m_kj) / prev is exact
                let v = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = v / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

pub fn is_unimodular(a: &IntegerMatrix) -> Result<bool> {
    Ok(det_bareiss(a)?.abs().is_one())
}
