//! Dense matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows; fails on ragged input.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut nrows = 0;
        let mut ncols = None;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            let len = data.len() - before;
            match ncols {
                None => ncols = Some(len),
                Some(c) if c != len => {
                    return Err(Error::DimensionMismatch(format!(
                        "row {nrows} has {len} entries, expected {c}"
                    )))
                }
                _ => {}
            }
            nrows += 1;
        }
        Ok(IntegerMatrix {
            rows: nrows,
            cols: ncols.unwrap_or(0),
            data,
        })
    }

    /// Builds a matrix from a fixed-size literal.
    pub fn from_array<const R: usize, const C: usize>(a: &[[i64; C]; R]) -> Self {
        IntegerMatrix {
            rows: R,
            cols: C,
            data: a.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Square diagonal matrix with the given entries.
    pub fn from_diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Submatrix on the given (ordered) row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut s = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s[(a, b)] = self[(i, j)].clone();
            }
        }
        s
    }

    /// Copy with one row and one column removed.
    pub fn without(&self, row: usize, col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&rows, &cols)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntegerMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, mut k: u32) -> Result<IntegerMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Largest bit-length among all entries.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`, starting at column `from`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt, from: usize) {
        debug_assert_ne!(target, source);
        let c = self.cols;
        for j in from..c {
            let s = &self.data[source * c + j];
            if s.is_zero() {
                continue;
            }
            let delta = s * factor;
            self.data[target * c + j] += delta;
        }
    }

    /// `col[target] += factor * col[source]`, starting at row `from`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt, from: usize) {
        debug_assert_ne!(target, source);
        let c = self.cols;
        for i in from..self.rows {
            let s = &self.data[i * c + source];
            if s.is_zero() {
                continue;
            }
            let delta = s * factor;
            self.data[i * c + target] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }


    pub fn scale_row_exact(&mut self, i: usize, divisor: &BigInt) -> Result<()> {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = crate::arith::exact_div(x, divisor)?;
        }
        Ok(())
    }

    pub fn scale_col_exact(&mut self, j: usize, divisor: &BigInt) -> Result<()> {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = crate::arith::exact_div(x, divisor)?;
        }
        Ok(())
    }

    /// Parses the text format: `rows cols` on the first line, then the
    /// entries in row-major order separated by whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                tokens.push((lineno + 1, tok));
            }
        }
        let mut it = tokens.into_iter();
        let mut dim = |what: &str| -> Result<usize> {
            let (line, tok) = it.next().ok_or(Error::Parse {
                line: 1,
                msg: format!("missing {what}"),
            })?;
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad {what} {tok:?}"),
            })
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        if rows == 0 || cols == 0 {
            return Err(Error::Parse {
                line: 1,
                msg: "dimensions must be positive".into(),
            });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (line, tok) in it {
            let v = tok.parse::<BigInt>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad integer {tok:?}"),
            })?;
            data.push(v);
        }
        if data.len() != rows * cols {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!("expected {} entries, found {}", rows * cols, data.len()),
            });
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub(crate) fn abs_min_nonzero(&self, from_row: usize, from_col: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from_row..self.rows {
            for j in from_col..self.cols {
                let x = &self[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.magnitude() < self[(bi, bj)].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    /// Panics on a dimension mismatch; see [`IntegerMatrix::checked_mul`].
    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.checked_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let m = IntegerMatrix::parse("2 3\n1 -2 3\n4 5 -6\n").unwrap();
        assert_eq!(m, IntegerMatrix::from_array(&[[1, -2, 3], [4, 5, -6]]));
        assert_eq!(IntegerMatrix::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn parse_rejects_wrong_count() {
        assert!(matches!(
            IntegerMatrix::parse("2 2\n1 2 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(IntegerMatrix::parse("2 2\n1 2 x 4").is_err());
        assert!(IntegerMatrix::parse("").is_err());
        assert!(IntegerMatrix::parse("0 2\n").is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = IntegerMatrix::from_rows(vec![vec![1, 2], vec![3]]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn multiply_and_power() {
        let a = IntegerMatrix::from_array(&[[1, 1], [1, 0]]);
        let f10 = a.pow(10).unwrap();
        assert_eq!(f10[(0, 1)], BigInt::from(55));
        assert_eq!(&a * &IntegerMatrix::identity(2), a);
        assert!(a.checked_mul(&IntegerMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn direct_sum_and_delete() {
        let a = IntegerMatrix::from_array(&[[1]]);
        let b = IntegerMatrix::from_array(&[[2, 3], [4, 5]]);
        let s = a.direct_sum(&b);
        assert_eq!(s, IntegerMatrix::from_array(&[[1, 0, 0], [0, 2, 3], [0, 4, 5]]));
        assert_eq!(s.without(0, 0), b);
    }
}
