use num_bigint::BigInt;

use super::coeffs::{coeffs_table, ReductionCoeffs};
use crate::error::{invalid, Result};
use crate::matrix::IntegerMatrix;

/// The symmetric circulant block with rows `(a, b, c, b)` rotated.
fn circulant(k: &ReductionCoeffs) -> [[BigInt; 4]; 4] {
    let pattern = [&k.a, &k.b, &k.c, &k.b];
    std::array::from_fn(|r| std::array::from_fn(|s| pattern[(s + 4 - r) % 4].clone()))
}

/// `M - I` for `C4 × Cn`, acting on `(x_0^1..x_3^1, x_0^0..x_3^0)`:
///
/// ```text
/// | A_{n+1} - I   -A_n         |
/// | A_n           -A_{n-1} - I |
/// ```
pub fn relations_matrix(n: usize) -> Result<IntegerMatrix> {
    if n < 3 {
        return Err(invalid(format!("n must be at least 3, got {n}")));
    }
    let table = coeffs_table(n + 2);
    let next = circulant(&table[n + 1]);
    let cur = circulant(&table[n]);
    let prev = circulant(&table[n - 1]);
    let mut m = IntegerMatrix::zeros(8, 8);
    for r in 0..4 {
        for s in 0..4 {
            m[(r, s)] = next[r][s].clone();
            m[(r, 4 + s)] = -&cur[r][s];
            m[(4 + r, s)] = cur[r][s].clone();
            m[(4 + r, 4 + s)] = -&prev[r][s];
        }
        m[(r, r)] -= 1;
        m[(4 + r, 4 + r)] -= 1;
    }
    Ok(m)
}

/// `M - I` with its last four rows negated; every row and column of this
/// form sums to zero.
pub fn relations_matrix_sign_balanced(n: usize) -> Result<IntegerMatrix> {
    let mut m = relations_matrix(n)?;
    for r in 4..8 {
        m.negate_row(r);
    }
    Ok(m)
}
