//! Determinantal divisors by minor enumeration. Exponential cost; this path
//! exists to certify the elimination-based SNF on small matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::det::det_bareiss;
use crate::error::{invalid, Result};
use crate::matrix::IntegerMatrix;

/// Largest `min(rows, cols)` accepted by the enumeration oracle.
pub const ORACLE_MAX_DIM: usize = 8;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

fn check_oracle_size(a: &IntegerMatrix) -> Result<()> {
    let dim = a.rows().min(a.cols());
    if dim > ORACLE_MAX_DIM {
        return Err(invalid(format!(
            "determinantal-divisor oracle limited to min dimension {ORACLE_MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

/// `Δ_k(a)`: the nonnegative gcd of all `k×k` minors.
pub fn determinantal_divisor(a: &IntegerMatrix, k: usize) -> Result<BigInt> {
    check_oracle_size(a)?;
    if k == 0 || k > a.rows().min(a.cols()) {
        return Err(invalid(format!(
            "minor size {k} out of range for a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let row_sets = combinations(a.rows(), k);
    let col_sets = combinations(a.cols(), k);
    let partial = crate::par::map(&row_sets, |rows| {
        let mut g = BigInt::zero();
        for cols in &col_sets {
            let minor = det_bareiss(&a.submatrix(rows, cols)).expect("square minor");
            g = g.gcd(&minor);
            if g.is_one() {
                break;
            }
        }
        g
    });
    Ok(partial.iter().fold(BigInt::zero(), |acc, g| acc.gcd(g)))
}

/// Invariant factors `t_i = Δ_i / Δ_{i-1}` (`Δ_0 = 1`); every factor after
/// the first vanishing divisor is 0.
pub fn invariant_factors_from_divisors(a: &IntegerMatrix) -> Result<Vec<BigInt>> {
    check_oracle_size(a)?;
    let k = a.rows().min(a.cols());
    let mut out = Vec::with_capacity(k);
    let mut prev = BigInt::one();
    for i in 1..=k {
        let delta = determinantal_divisor(a, i)?;
        if delta.is_zero() {
            out.resize(k, BigInt::zero());
            break;
        }
        out.push(&delta / &prev);
        prev = delta;
    }
    Ok(out)
}
