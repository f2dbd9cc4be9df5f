//! The constant unimodular matrices used by the explicit `C4 × Cn`
//! reduction.
//!
//! Note `L3[6][4] = 0` and `R3[4][4] = -6`: with 1 and -1 there, `L3` has
//! determinant 8 and the even-`n` reduction misses its target matrix.

use crate::matrix::IntegerMatrix;

pub const L1: [[i64; 7]; 7] = [
    [0, 0, 0, 1, 1, 1, 1],
    [1, 2, 1, -1, -1, -1, -1],
    [0, 0, 0, -1, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0],
];

pub const R1: [[i64; 7]; 7] = [
    [-1, -1, 0, 1, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, -1, 0],
    [-1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, -1, 0, -1],
    [-1, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
];

/// Shift matrix: `U^i · M2` advances the `p`/`q` indices by `i`.
pub const U: [[i64; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, -1, 4, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [-1, 0, -1, -1, 6, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [-1, 0, 0, 0, 0, -1, 4],
];

pub const L2: [[i64; 7]; 7] = [
    [0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, -1],
    [0, 0, 0, -1, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0],
];

pub const R2: [[i64; 7]; 7] = [
    [0, 0, 0, 0, 0, 0, 1],
    [0, -1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [1, -2, 0, 1, 0, 0, -2],
    [-1, 2, 0, 0, 0, 0, 2],
    [0, 1, 1, 0, 0, 1, 1],
    [0, -1, -1, 0, 0, 0, -1],
];

pub const L3: [[i64; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, -1, -1],
    [-1, -4, 1, 7, -1, 0, 0],
    [0, 5, -4, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 2, -2, 1, 0, 0, 0],
];

pub const R3: [[i64; 7]; 7] = [
    [0, -2, 0, 1, -2, 0, 0],
    [0, 6, 0, 0, 5, 0, 0],
    [0, -1, 0, 0, -1, 0, 0],
    [2, 6, 0, -4, 6, 1, 2],
    [-1, -6, 0, 4, -6, -1, -2],
    [0, -3, 2, 2, -3, 1, -1],
    [0, 3, -1, -2, 3, 0, 1],
];

pub const L4: [[i64; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 1],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [-1, -1, 0, 1, 0, 0, 0],
    [-1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0],
];

pub const R4: [[i64; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [-1, 0, 0, 1, 0, 0, 0],
    [2, 0, -4, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 1, -1, 0, 0, -1, 0],
];

/// All nine matrices with their names.
pub fn all() -> Vec<(&'static str, IntegerMatrix)> {
    [
        ("L1", &L1),
        ("R1", &R1),
        ("U", &U),
        ("L2", &L2),
        ("R2", &R2),
        ("L3", &L3),
        ("R3", &R3),
        ("L4", &L4),
        ("R4", &R4),
    ]
    .into_iter()
    .map(|(name, m)| (name, IntegerMatrix::from_array(m)))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::det_bareiss;
    use num_bigint::BigInt;

    #[test]
    fn determinants() {
        for (name, m) in all() {
            let d = det_bareiss(&m).unwrap();
            assert!(d == BigInt::from(1) || d == BigInt::from(-1), "{name}: det {d}");
        }
    }

    // Transcription checksums: one recorded product per pair.
    #[test]
    fn recorded_products() {
        let m = |a: &[[i64; 7]; 7]| IntegerMatrix::from_array(a);
        let sum = |x: &IntegerMatrix| -> BigInt { x.entries().iter().sum() };
        let trace = |x: &IntegerMatrix| -> BigInt { (0..7).map(|i| x[(i, i)].clone()).sum() };
        let l1r1 = &m(&L1) * &m(&R1);
        let l2r2 = &m(&L2) * &m(&R2);
        let l3r3 = &m(&L3) * &m(&R3);
        let l4r4 = &m(&L4) * &m(&R4);
        let u7 = m(&U).pow(7).unwrap();
        let got: Vec<(BigInt, BigInt)> = [l1r1, l2r2, l3r3, l4r4, u7]
            .iter()
            .map(|x| (sum(x), trace(x)))
            .collect();
        let expected: Vec<(BigInt, BigInt)> = [(-4, -2), (16, 2), (139, -9), (-2, 7), (77292, 248655)]
            .iter()
            .map(|&(s, t)| (BigInt::from(s), BigInt::from(t)))
            .collect();
        assert_eq!(got, expected);
    }
}
