use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::exact_div;
use crate::seq::{u_seq, u_terms};

/// Layer coefficients: every generator of layer `i` is
/// `a_i x_j^1 + b_i (x_{j+1}^1 + x_{j-1}^1) + c_i x_{j+2}^1`
/// minus the same pattern with index `i - 1` on layer 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCoeffs {
    pub index: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

fn from_u(i: u64, f: &BigInt, e: &BigInt) -> ReductionCoeffs {
    let four = BigInt::from(4);
    let i_big = BigInt::from(i);
    let two_e = e * 2;
    let a = exact_div(&(&i_big + f + &two_e), &four).expect("i + f_i + 2e_i divisible by 4");
    let b = exact_div(&(&i_big - f), &four).expect("i - f_i divisible by 4");
    let c = exact_div(&(&i_big + f - &two_e), &four).expect("i + f_i - 2e_i divisible by 4");
    ReductionCoeffs { index: i, a, b, c }
}

/// `(a_i, b_i, c_i)` from the closed form in `u_i(4)` and `u_i(2)`.
pub fn coeffs(i: u64) -> ReductionCoeffs {
    let f = u_seq(4, i).expect("m = 4");
    let e = u_seq(2, i).expect("m = 2");
    from_u(i, &f, &e)
}

/// Closed-form coefficients for `0..count` without recomputing the sequences.
pub fn coeffs_table(count: usize) -> Vec<ReductionCoeffs> {
    let f = u_terms(4, count).expect("m = 4");
    let e = u_terms(2, count).expect("m = 2");
    (0..count).map(|i| from_u(i as u64, &f[i], &e[i])).collect()
}

/// `(a_i, b_i, c_i)` for `0..count` by the three-term recurrence
/// `a_{i+1} = 4a_i - 2b_i - a_{i-1}`, `b_{i+1} = 4b_i - (a_i + c_i) - b_{i-1}`,
/// `c_{i+1} = 4c_i - 2b_i - c_{i-1}` from `(0,0,0)` and `(1,0,0)`.
pub fn coeffs_by_recurrence(count: usize) -> Vec<ReductionCoeffs> {
    let mut out: Vec<ReductionCoeffs> = Vec::with_capacity(count);
    for i in 0..count {
        let next = match i {
            0 => ReductionCoeffs {
                index: 0,
                a: BigInt::zero(),
                b: BigInt::zero(),
                c: BigInt::zero(),
            },
            1 => ReductionCoeffs {
                index: 1,
                a: BigInt::from(1),
                b: BigInt::zero(),
                c: BigInt::zero(),
            },
            _ => {
                let cur = &out[i - 1];
                let prev = &out[i - 2];
                ReductionCoeffs {
                    index: i as u64,
                    a: 4 * &cur.a - 2 * &cur.b - &prev.a,
                    b: 4 * &cur.b - (&cur.a + &cur.c) - &prev.b,
                    c: 4 * &cur.c - 2 * &cur.b - &prev.c,
                }
            }
        };
        out.push(next);
    }
    out
}

/// A generator written over the eight base generators
/// `x_0^0, ..., x_3^0, x_0^1, ..., x_3^1` (in that order).
pub type CoefficientVector = [BigInt; 8];

fn basis(k: usize) -> CoefficientVector {
    let mut v: CoefficientVector = Default::default();
    v[k] = BigInt::from(1);
    v
}

/// Expresses every `x_j^i`, `0 ≤ i ≤ n`, over the eight base generators by
/// propagating the Laplacian relation
/// `x_j^{i+1} = 4x_j^i - (x_{j+1}^i + x_{j-1}^i) - x_j^{i-1}`.
pub fn layer_expansion(n: usize) -> Vec<[CoefficientVector; 4]> {
    let mut layers: Vec<[CoefficientVector; 4]> = Vec::with_capacity(n + 1);
    layers.push(std::array::from_fn(basis));
    layers.push(std::array::from_fn(|j| basis(4 + j)));
    for i in 1..n {
        let cur = &layers[i];
        let prev = &layers[i - 1];
        let next: [CoefficientVector; 4] = std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                4 * &cur[j][k] - &cur[(j + 1) % 4][k] - &cur[(j + 3) % 4][k] - &prev[j][k]
            })
        });
        layers.push(next);
    }
    layers.truncate(n + 1);
    layers
}

fn expected_vector(j: usize, cur: &ReductionCoeffs, prev: &ReductionCoeffs) -> CoefficientVector {
    let mut v: CoefficientVector = Default::default();
    v[4 + j] = cur.a.clone();
    v[4 + (j + 1) % 4] = cur.b.clone();
    v[4 + (j + 3) % 4] = cur.b.clone();
    v[4 + (j + 2) % 4] = cur.c.clone();
    v[j] = -&prev.a;
    v[(j + 1) % 4] = -&prev.b;
    v[(j + 3) % 4] = -&prev.b;
    v[(j + 2) % 4] = -&prev.c;
    v
}

/// Checks that for every layer `1 ≤ i ≤ n` the propagated coefficient
/// vectors match the pattern built from `coeffs(i)` and `coeffs(i - 1)`.
pub fn verify_layer_expansion(n: usize) -> bool {
    let layers = layer_expansion(n);
    let table = coeffs_table(n + 1);
    (1..=n).all(|i| (0..4).all(|j| layers[i][j] == expected_vector(j, &table[i], &table[i - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(c: &ReductionCoeffs) -> (i64, i64, i64) {
        let f = |x: &BigInt| i64::try_from(x).unwrap();
        (f(&c.a), f(&c.b), f(&c.c))
    }

    #[test]
    fn small_indices() {
        assert_eq!(triple(&coeffs(0)), (0, 0, 0));
        assert_eq!(triple(&coeffs(1)), (1, 0, 0));
        assert_eq!(triple(&coeffs(2)), (4, -1, 0));
        assert_eq!(triple(&coeffs(4)), (80, -50, 24));
    }

    #[test]
    fn recurrence_matches_closed_form() {
        assert_eq!(coeffs_by_recurrence(60), coeffs_table(60));
        assert_eq!(triple(&coeffs_by_recurrence(5)[4]), (80, -50, 24));
    }

    #[test]
    fn coefficient_sum_is_index() {
        for c in coeffs_table(200) {
            assert_eq!(&c.a + 2 * &c.b + &c.c, BigInt::from(c.index));
        }
    }

    #[test]
    fn first_layers() {
        let layers = layer_expansion(3);
        for j in 0..4 {
            assert_eq!(layers[1][j], basis(4 + j));
            let v = &layers[2][j];
            assert_eq!(v[4 + j], BigInt::from(4));
            assert_eq!(v[4 + (j + 1) % 4], BigInt::from(-1));
            assert_eq!(v[4 + (j + 2) % 4], BigInt::from(0));
            assert_eq!(v[j], BigInt::from(-1));
            assert_eq!(v[(j + 1) % 4], BigInt::from(0));
        }
    }

    #[test]
    fn expansion_verified() {
        for n in [3, 4, 7, 20] {
            assert!(verify_layer_expansion(n), "n = {n}");
        }
    }
}
