//! Small integer helpers shared by the closed forms and reductions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// `num / den`, failing unless the division is exact.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::InexactDivision {
            num: num.clone(),
            den: den.clone(),
        });
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            num: num.clone(),
            den: den.clone(),
        });
    }
    Ok(q)
}

/// Left-fold gcd with `gcd(0, a) = |a|`; the empty gcd is 0.
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}
