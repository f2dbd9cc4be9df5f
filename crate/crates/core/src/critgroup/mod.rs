//! Critical groups: the generic Laplacian-SNF route for any connected
//! multigraph, and for `C4 × Cn` the reduction to an 8×8 relations matrix,
//! the closed-form invariant factors and a stage-by-stage check of the
//! explicit unimodular reduction.

mod closed_form;
mod coeffs;
pub mod fixtures;
mod pipeline;
mod relations;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{canonical_chain, snf};
use crate::graph::{laplacian, Multigraph};

pub use closed_form::{closed_form_group, closed_form_tuple, ClosedFormTuple};
pub use coeffs::{coeffs, coeffs_by_recurrence, layer_expansion, verify_layer_expansion, ReductionCoeffs};
pub use pipeline::{verify_reduction_pipeline, PipelineReport, StageCheck};
pub use relations::{relations_matrix, relations_matrix_sign_balanced};

/// Finite abelian group `Z_{t_1} ⊕ ... ⊕ Z_{t_k}` in invariant-factor form:
/// every `t_i ≥ 2` and `t_i | t_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigInt>,
    order: BigInt,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            order: BigInt::one(),
        }
    }

    /// Group `⊕ Z_{x}` over the given cyclic orders, in any order. Factors of
    /// 1 are dropped; 0 (an infinite cyclic summand) is rejected.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|x| x.is_zero() || x.is_negative()) {
            return Err(invalid(format!("cyclic order must be positive, got {bad}")));
        }
        let invariant_factors: Vec<BigInt> = canonical_chain(orders)
            .into_iter()
            .filter(|x| !x.is_one())
            .collect();
        let order = invariant_factors.iter().product();
        Ok(AbelianGroup {
            invariant_factors,
            order,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Whether each factor of `self` divides the factor of `other` in the same
    /// slot once both chains are right-aligned (the shorter padded with 1s).
    pub fn divides_componentwise(&self, other: &AbelianGroup) -> bool {
        if self.rank() > other.rank() {
            return false;
        }
        let offset = other.rank() - self.rank();
        self.invariant_factors
            .iter()
            .zip(&other.invariant_factors[offset..])
            .all(|(a, b)| (b % a).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|t| format!("Z_{t}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `K(G)` from the Smith normal form of the Laplacian.
pub fn group_of_graph(g: &Multigraph) -> Result<AbelianGroup> {
    let res = snf(&laplacian(g), false);
    let zeros = res.nullity();
    if zeros != 1 {
        return Err(Error::Disconnected { zeros });
    }
    AbelianGroup::from_cyclic_orders(&res.diagonal[..res.rank()])
}

/// `K(C4 × Cn)` from the 8×8 relations matrix.
pub fn group_via_relations(n: usize) -> Result<AbelianGroup> {
    let res = snf(&relations_matrix(n)?, false);
    let zeros = res.nullity();
    if zeros != 1 {
        return Err(Error::UnexpectedRank { zeros });
    }
    AbelianGroup::from_cyclic_orders(&res.diagonal[..res.rank()])
}

/// Whether `K(C4 × C_{n1})` embeds factor-by-factor into `K(C4 × C_{n2})`.
pub fn subgroup_check(n1: usize, n2: usize) -> Result<bool> {
    Ok(closed_form_group(n1)?.divides_componentwise(&closed_form_group(n2)?))
}
