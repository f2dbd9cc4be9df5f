//! Exact integer linear algebra: Smith normal form, determinants,
//! determinantal divisors and divisibility chains.

mod chain;
mod det;
mod divisors;
mod snf;

pub use chain::{canonical_chain, is_chain};
pub use det::{det_bareiss, is_unimodular};
pub use divisors::{
    combinations, determinantal_divisor, invariant_factors_from_divisors, ORACLE_MAX_DIM,
};
pub use snf::{snf, SnfResult};
