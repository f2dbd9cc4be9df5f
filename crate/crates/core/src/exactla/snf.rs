use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntegerMatrix;

/// Smith normal form `P·A·Q = diag(d_1, ..., d_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonnegative divisibility chain of length `min(rows, cols)`; zeros trail.
    pub diagonal: Vec<BigInt>,
    /// `(P, Q)` when requested.
    pub transforms: Option<(IntegerMatrix, IntegerMatrix)>,
    /// Largest entry bit-length seen in the working matrix.
    pub peak_bits: u64,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Number of trailing zero entries on the diagonal.
    pub fn nullity(&self) -> usize {
        self.diagonal.len() - self.rank()
    }

    /// Diagonal entries that are neither 0 nor 1.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

struct Reducer {
    d: IntegerMatrix,
    p: Option<IntegerMatrix>,
    q: Option<IntegerMatrix>,
    peak_bits: u64,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(p) = &mut self.p {
            p.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(q) = &mut self.q {
            q.swap_cols(a, b);
        }
    }

    // row[target] += k * row[source]; entries left of `from` are zero in the source row of d.
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt, from: usize) {
        self.d.add_row_multiple(target, source, k, from);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(target, source, k, 0);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, k: &BigInt, from: usize) {
        self.d.add_col_multiple(target, source, k, from);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(target, source, k, 0);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some(p) = &mut self.p {
            p.negate_row(i);
        }
    }

    fn note_bits(&mut self, t: usize) {
        for i in t..self.d.rows() {
            for x in &self.d.row(i)[t..] {
                self.peak_bits = self.peak_bits.max(x.bits());
            }
        }
    }

    /// One reduction pass against the pivot at `(t, t)`: every other entry
    /// of row `t` and column `t` is replaced by its centred remainder.
    /// Returns whether the row and column are now clear.
    fn reduce_cross(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        let mut clear = true;
        for i in t + 1..rows {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let k = -nearest_quotient(&self.d[(i, t)], &self.d[(t, t)]);
            self.add_row(i, t, &k, t);
            clear &= self.d[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let k = -nearest_quotient(&self.d[(t, j)], &self.d[(t, t)]);
            self.add_col(j, t, &k, t);
            clear &= self.d[(t, j)].is_zero();
        }
        clear
    }

    /// First entry of the trailing block not divisible by the pivot at `t`.
    fn find_non_multiple(&self, t: usize) -> Option<(usize, usize)> {
        let pivot = &self.d[(t, t)];
        if pivot.abs().is_one() {
            return None;
        }
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                let x = &self.d[(i, j)];
                if !x.is_zero() && !x.is_multiple_of(pivot) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Quotient of `a / b` rounded to the nearest integer, so that the
/// remainder has magnitude at most `|b| / 2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if (&r + &r).magnitude() > b.magnitude() {
        q += 1;
    }
    q
}

/// Smith normal form by elementary row and column operations.
///
/// Each stage repeatedly takes the nonzero entry of least magnitude in the
/// remaining block as pivot and replaces the rest of its row and column by
/// centred remainders, re-pivoting whenever a smaller remainder appears.
/// Once the row and column are clear, an entry not divisible by the pivot
/// has its column added into the pivot column and the stage continues. Signs are normalised so that
/// every diagonal entry is nonnegative.
pub fn snf(a: &IntegerMatrix, want_transforms: bool) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = Reducer {
        d: a.clone(),
        p: want_transforms.then(|| IntegerMatrix::identity(rows)),
        q: want_transforms.then(|| IntegerMatrix::identity(cols)),
        peak_bits: a.max_bits(),
    };
    let k = rows.min(cols);
    let mut diagonal = Vec::with_capacity(k);
    for t in 0..k {
        while let Some((pi, pj)) = r.d.abs_min_nonzero(t, t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            if !r.reduce_cross(t) {
                // a smaller remainder appeared; re-pivot on it
                continue;
            }
            match r.find_non_multiple(t) {
                Some((_, j)) => r.add_col(t, j, &BigInt::one(), t),
                None => break,
            }
        }
        if r.d[(t, t)].is_zero() {
            break;
        }
        if r.d[(t, t)].is_negative() {
            r.negate_row(t);
        }
        r.note_bits(t);
        diagonal.push(r.d[(t, t)].clone());
    }
    diagonal.resize(k, BigInt::zero());
    SnfResult {
        diagonal,
        transforms: r.p.zip(r.q),
        peak_bits: r.peak_bits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{c4xcn, cycle, laplacian};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_transforms(a: &IntegerMatrix) {
        let res = snf(a, true);
        let (p, q) = res.transforms.clone().unwrap();
        let d = &(&p * a) * &q;
        let mut expected = IntegerMatrix::zeros(a.rows(), a.cols());
        for (i, x) in res.diagonal.iter().enumerate() {
            expected[(i, i)] = x.clone();
        }
        assert_eq!(d, expected);
        assert!(crate::exactla::is_unimodular(&p).unwrap());
        assert!(crate::exactla::is_unimodular(&q).unwrap());
    }

    #[test]
    fn diag_four_six() {
        let a = IntegerMatrix::from_diagonal(&[4, 6]);
        assert_eq!(snf(&a, false).diagonal, ints(&[2, 12]));
        check_transforms(&a);
    }

    #[test]
    fn triangle_laplacian() {
        let l = laplacian(&cycle(3).unwrap());
        let res = snf(&l, true);
        assert_eq!(res.diagonal, ints(&[1, 3, 0]));
        assert_eq!(res.rank(), 2);
        check_transforms(&l);
    }

    #[test]
    fn c4xc5_laplacian() {
        let res = snf(&laplacian(&c4xcn(5).unwrap()), false);
        let mut expected = vec![1; 15];
        expected.extend([19, 19, 779, 15580, 0]);
        assert_eq!(res.diagonal, ints(&expected));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = IntegerMatrix::from_array(&[[2, 4, 6], [4, 8, 13]]);
        check_transforms(&a);
        let z = IntegerMatrix::zeros(3, 2);
        let res = snf(&z, true);
        assert_eq!(res.diagonal, ints(&[0, 0]));
        check_transforms(&z);
    }

    #[test]
    fn negative_entries_normalised() {
        let a = IntegerMatrix::from_array(&[[-3]]);
        assert_eq!(snf(&a, false).diagonal, ints(&[3]));
        let a = IntegerMatrix::from_array(&[[0, 2], [3, 0]]);
        assert_eq!(snf(&a, false).diagonal, ints(&[1, 6]));
    }
}
