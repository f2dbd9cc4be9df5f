use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::lcm;

/// Whether `xs` is a divisibility chain (every integer divides 0).
pub fn is_chain(xs: &[BigInt]) -> bool {
    xs.windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])))
}

/// Rewrites a list of factors into the divisibility chain with the same
/// elementary divisors by replacing pairs `(a, b)` with `(gcd, lcm)` until
/// nothing changes. No factorisation is performed. Signs are dropped.
pub fn canonical_chain(factors: &[BigInt]) -> Vec<BigInt> {
    let mut xs: Vec<BigInt> = factors.iter().map(|x| x.abs()).collect();
    loop {
        let mut changed = false;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let g = xs[i].gcd(&xs[j]);
                let l = lcm(&xs[i], &xs[j]);
                // gcd(0, b) = b and lcm(0, b) = 0 push zeros to the tail
                if g != xs[i] || l != xs[j] {
                    xs[i] = g;
                    xs[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            debug_assert!(is_chain(&xs));
            return xs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(canonical_chain(&ints(&[4, 6])), ints(&[2, 12]));
        assert_eq!(canonical_chain(&ints(&[2, 3])), ints(&[1, 6]));
        assert_eq!(
            canonical_chain(&ints(&[19, 779, 19, 15580])),
            ints(&[19, 19, 779, 15580])
        );
        assert_eq!(canonical_chain(&ints(&[0, 3, 2])), ints(&[1, 6, 0]));
        assert!(canonical_chain(&[]).is_empty());
    }

    #[test]
    fn chain_predicate() {
        assert!(is_chain(&ints(&[1, 3, 0, 0])));
        assert!(!is_chain(&ints(&[0, 3])));
        assert!(!is_chain(&ints(&[2, 3])));
    }

    proptest! {
        #[test]
        fn product_preserved_and_idempotent(xs in proptest::collection::vec(1i64..500, 0..8)) {
            let c = canonical_chain(&ints(&xs));
            prop_assert!(is_chain(&c));
            let p1: BigInt = ints(&xs).iter().product();
            let p2: BigInt = c.iter().product();
            prop_assert_eq!(p1, p2);
            prop_assert_eq!(canonical_chain(&c), c);
        }
    }
}
