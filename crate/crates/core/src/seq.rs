//! The integer sequences `u_p(m)`, `v_p(m)` defined by
//! `x_p = (m + 2) x_{p-1} - x_{p-2}` with `u_0 = 0, u_1 = 1` and
//! `v_0 = 2, v_1 = m + 2`, together with the derived families
//! `e_n = u_n(2)`, `f_n = u_n(4)`, `h_n = e_n + e_{n+1}`, `g_n = f_n + f_{n+1}`
//! and the 2- and 3-adic valuation formulas for `e_n` and `f_n`.
//!
//! Everything is evaluated by exact iteration of the recurrence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// One of the four named sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    /// `e_n = u_n(2)`
    E,
    /// `f_n = u_n(4)`
    F,
    /// `h_n = e_n + e_{n+1}`
    H,
    /// `g_n = f_n + f_{n+1}`
    G,
}

impl SeqKind {
    /// The recurrence parameter `m` this family is built from.
    pub fn parameter(self) -> u64 {
        match self {
            SeqKind::E | SeqKind::H => 2,
            SeqKind::F | SeqKind::G => 4,
        }
    }
}

impl FromStr for SeqKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "E" => Ok(SeqKind::E),
            "f" | "F" => Ok(SeqKind::F),
            "h" | "H" => Ok(SeqKind::H),
            "g" | "G" => Ok(SeqKind::G),
            _ => Err(invalid(format!("unknown sequence {s:?}"))),
        }
    }
}

/// The two families whose valuations are predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    E,
    F,
}

impl From<Family> for SeqKind {
    fn from(f: Family) -> SeqKind {
        match f {
            Family::E => SeqKind::E,
            Family::F => SeqKind::F,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::E => "e",
            Family::F => "f",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationPrediction {
    pub prime: u64,
    pub kind: Family,
    pub n: u64,
    pub predicted_exponent: u64,
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(invalid("recurrence parameter m must be at least 1"));
    }
    Ok(())
}

/// Iterator over `x_0, x_1, ...` for `x_p = (m+2) x_{p-1} - x_{p-2}`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    coeff: BigInt,
    cur: BigInt,
    next: BigInt,
}

impl Recurrence {
    fn new(m: u64, x0: BigInt, x1: BigInt) -> Self {
        Recurrence {
            coeff: BigInt::from(m) + 2,
            cur: x0,
            next: x1,
        }
    }

    /// The `u_p(m)` sequence starting at `p = 0`.
    pub fn u(m: u64) -> Result<Self> {
        check_m(m)?;
        Ok(Self::new(m, BigInt::zero(), BigInt::one()))
    }

    /// The `v_p(m)` sequence starting at `p = 0`.
    pub fn v(m: u64) -> Result<Self> {
        check_m(m)?;
        Ok(Self::new(m, BigInt::from(2), BigInt::from(m) + 2))
    }
}

impl Iterator for Recurrence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = &self.coeff * &self.next - &self.cur;
        let out = std::mem::replace(&mut self.cur, std::mem::replace(&mut self.next, after));
        Some(out)
    }
}

pub fn u_seq(m: u64, p: u64) -> Result<BigInt> {
    Ok(Recurrence::u(m)?.nth(p as usize).expect("infinite"))
}

pub fn v_seq(m: u64, p: u64) -> Result<BigInt> {
    Ok(Recurrence::v(m)?.nth(p as usize).expect("infinite"))
}

/// `u_0(m), ..., u_{count-1}(m)`.
pub fn u_terms(m: u64, count: usize) -> Result<Vec<BigInt>> {
    Ok(Recurrence::u(m)?.take(count).collect())
}

/// `v_0(m), ..., v_{count-1}(m)`.
pub fn v_terms(m: u64, count: usize) -> Result<Vec<BigInt>> {
    Ok(Recurrence::v(m)?.take(count).collect())
}

/// `u_p(m)` for a possibly negative index, using `u_{-p} = -u_p`.
pub fn u_signed(m: u64, p: i64) -> Result<BigInt> {
    let x = u_seq(m, p.unsigned_abs())?;
    Ok(if p < 0 { -x } else { x })
}

pub fn derived_seq(kind: SeqKind, n: u64) -> BigInt {
    let m = kind.parameter();
    let mut it = Recurrence::u(m).expect("m >= 1").skip(n as usize);
    let a = it.next().expect("infinite");
    match kind {
        SeqKind::E | SeqKind::F => a,
        SeqKind::H | SeqKind::G => a + it.next().expect("infinite"),
    }
}

/// First `count` terms of a derived sequence.
pub fn derived_terms(kind: SeqKind, count: usize) -> Vec<BigInt> {
    let m = kind.parameter();
    match kind {
        SeqKind::E | SeqKind::F => u_terms(m, count).expect("m >= 1"),
        SeqKind::H | SeqKind::G => {
            let u = u_terms(m, count + 1).expect("m >= 1");
            u.windows(2).map(|w| &w[0] + &w[1]).collect()
        }
    }
}

/// The cofactor `V` with `u_{pq}(m) = V · u_p(m)`: the alternating sum of
/// `v_{p(q+1-2i)}(m)`, minus one when `q` is odd.
pub fn v_partial_sum(m: u64, p: u64, q: u64) -> Result<BigInt> {
    if q == 0 {
        return Err(invalid("q must be at least 1"));
    }
    let top = p * q;
    let v = v_terms(m, top as usize + 1)?;
    let limit = if q.is_multiple_of(2) { q } else { q + 1 };
    let mut sum = BigInt::zero();
    let mut i = 1;
    while 2 * i <= limit {
        sum += &v[(p * (q + 1 - 2 * i)) as usize];
        i += 1;
    }
    if q % 2 == 1 {
        sum -= 1;
    }
    Ok(sum)
}

/// Exponent of `prime` in `n` (for machine integers).
pub fn valuation_u64(mut n: u64, prime: u64) -> u64 {
    debug_assert!(n > 0 && prime >= 2);
    let mut k = 0;
    while n.is_multiple_of(prime) {
        n /= prime;
        k += 1;
    }
    k
}

/// Predicted exponent of 2 or 3 in `e_n` or `f_n` from `T_2(n)` and `T_3(n)`.
pub fn predicted_valuation(kind: Family, prime: u64, n: u64) -> Result<ValuationPrediction> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let t2 = valuation_u64(n, 2);
    let t3 = valuation_u64(n, 3);
    let predicted_exponent = match (prime, kind) {
        (2, Family::E) => {
            if t2 == 0 {
                0
            } else {
                t2 + 1
            }
        }
        (2, Family::F) => t2,
        (3, Family::E) => t3,
        (3, Family::F) => {
            if t2 == 0 {
                0
            } else {
                t3 + 1
            }
        }
        _ => return Err(invalid(format!("only primes 2 and 3 are supported, got {prime}"))),
    };
    Ok(ValuationPrediction {
        prime,
        kind,
        n,
        predicted_exponent,
    })
}

/// Largest `k` with `prime^k | x`.
pub fn observed_valuation(x: &BigInt, prime: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(invalid("valuation of zero is infinite"));
    }
    if prime < 2 {
        return Err(invalid(format!("prime must be at least 2, got {prime}")));
    }
    if prime == 2 {
        return Ok(x.trailing_zeros().expect("nonzero"));
    }
    let p = BigInt::from(prime);
    let mut rest = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn initial_and_reported_values() {
        assert_eq!(u_seq(2, 0).unwrap(), b(0));
        assert_eq!(u_seq(2, 4).unwrap(), b(56));
        assert_eq!(u_seq(4, 6).unwrap(), b(6930));
        assert_eq!(v_seq(2, 0).unwrap(), b(2));
        assert_eq!(v_seq(2, 2).unwrap(), b(14));
        assert_eq!(v_seq(4, 2).unwrap(), b(34));
    }

    #[test]
    fn listed_e_and_f_terms() {
        let e: Vec<i64> = vec![0, 1, 4, 15, 56, 209, 780];
        let f: Vec<i64> = vec![0, 1, 6, 35, 204, 1189, 6930];
        assert_eq!(derived_terms(SeqKind::E, 7), e.into_iter().map(b).collect::<Vec<_>>());
        assert_eq!(derived_terms(SeqKind::F, 7), f.into_iter().map(b).collect::<Vec<_>>());
    }

    #[test]
    fn derived_values() {
        assert_eq!(derived_seq(SeqKind::E, 3), b(15));
        assert_eq!(derived_seq(SeqKind::H, 2), b(19));
        assert_eq!(derived_seq(SeqKind::G, 0), b(1));
        assert_eq!(derived_seq(SeqKind::G, 2), b(41));
        assert_eq!(derived_terms(SeqKind::H, 4), vec![b(1), b(5), b(19), b(71)]);
    }

    #[test]
    fn zero_parameter_rejected() {
        assert!(u_seq(0, 3).is_err());
        assert!(v_seq(0, 3).is_err());
    }

    #[test]
    fn negative_index() {
        assert_eq!(u_signed(2, -1).unwrap(), b(-1));
        assert_eq!(u_signed(4, -3).unwrap(), b(-35));
        // u_{-1} also follows from running the recurrence backwards once.
        assert_eq!(u_signed(4, -1).unwrap(), 6 * u_seq(4, 0).unwrap() - u_seq(4, 1).unwrap());
    }

    #[test]
    fn partial_sums() {
        for m in 1..5 {
            for p in 0..5 {
                assert_eq!(v_partial_sum(m, p, 1).unwrap(), b(1));
            }
        }
        assert_eq!(v_partial_sum(2, 1, 3).unwrap(), b(15));
        assert_eq!(v_partial_sum(2, 1, 2).unwrap(), b(4));
        assert!(v_partial_sum(2, 1, 0).is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(observed_valuation(&b(8), 2).unwrap(), 3);
        assert_eq!(observed_valuation(&b(1), 3).unwrap(), 0);
        assert_eq!(observed_valuation(&b(6930), 3).unwrap(), 2);
        assert_eq!(observed_valuation(&b(-24), 2).unwrap(), 3);
        assert!(observed_valuation(&b(0), 2).is_err());
        assert!(observed_valuation(&b(5), 1).is_err());

        for n in [1, 3, 5, 7, 99] {
            assert_eq!(predicted_valuation(Family::E, 2, n).unwrap().predicted_exponent, 0);
        }
        assert_eq!(predicted_valuation(Family::E, 2, 4).unwrap().predicted_exponent, 3);
        assert_eq!(predicted_valuation(Family::F, 3, 6).unwrap().predicted_exponent, 2);
        assert!(predicted_valuation(Family::F, 5, 6).is_err());
        assert!(predicted_valuation(Family::E, 2, 0).is_err());
    }

    #[test]
    fn valuations_hold_at_n_equal_one() {
        for fam in [Family::E, Family::F] {
            for p in [2, 3] {
                let x = derived_seq(fam.into(), 1);
                assert_eq!(
                    observed_valuation(&x, p).unwrap(),
                    predicted_valuation(fam, p, 1).unwrap().predicted_exponent
                );
            }
        }
    }

    proptest! {
        #[test]
        fn strictly_increasing(m in 1u64..8, p in 1u64..200) {
            prop_assert!(u_seq(m, p + 1).unwrap() > u_seq(m, p).unwrap());
        }

        #[test]
        fn iterator_matches_nth(m in 1u64..8, p in 0u64..100) {
            let terms = u_terms(m, p as usize + 1).unwrap();
            prop_assert_eq!(&terms[p as usize], &u_seq(m, p).unwrap());
        }
    }
}
