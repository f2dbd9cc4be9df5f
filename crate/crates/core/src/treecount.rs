//! Spanning-tree counts of `C4 × Cn`, computed three independent ways.

use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactla::det_bareiss;
use crate::graph::{c4xcn, laplacian, Multigraph};
use crate::seq::{derived_terms, SeqKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeCountReport {
    pub n: usize,
    pub closed_form: BigInt,
    pub matrix_tree: Option<BigInt>,
    pub trig_log_residual: Option<f64>,
    pub tolerance: f64,
}

impl TreeCountReport {
    pub fn matrix_agrees(&self) -> Option<bool> {
        self.matrix_tree.as_ref().map(|m| *m == self.closed_form)
    }

    pub fn trig_agrees(&self) -> Option<bool> {
        self.trig_log_residual.map(|r| r.abs() <= self.tolerance)
    }

    /// True when every computed check agrees with the closed form.
    pub fn passed(&self) -> bool {
        self.matrix_agrees().unwrap_or(true) && self.trig_agrees().unwrap_or(true)
    }
}

fn last(kind: SeqKind, index: usize) -> BigInt {
    derived_terms(kind, index + 1).pop().expect("index + 1 terms")
}

/// `4 n h_s^4 g_s^2` for `n = 2s + 1` and `2^8 3^2 s e_s^4 f_s^2` for `n = 2s`.
///
/// Both equal `2^7 3^2 n e_{n/2}^4 f_{n/2}^2`; the per-parity forms avoid
/// half-integer indices.
pub fn tree_count_closed(n: usize) -> Result<BigInt> {
    if n < 3 {
        return Err(invalid(format!("n must be at least 3, got {n}")));
    }
    let s = n / 2;
    Ok(if n % 2 == 1 {
        let h = last(SeqKind::H, s);
        let g = last(SeqKind::G, s);
        4 * BigInt::from(n) * h.pow(4) * g.pow(2)
    } else {
        let e = last(SeqKind::E, s);
        let f = last(SeqKind::F, s);
        BigInt::from(256 * 9) * BigInt::from(s) * e.pow(4) * f.pow(2)
    })
}

/// Matrix-Tree count: the determinant of the Laplacian with row and column 0
/// removed. Zero exactly when the graph is disconnected.
pub fn tree_count_matrix(g: &Multigraph) -> BigInt {
    if g.vertex_count() == 1 {
        return BigInt::from(1);
    }
    det_bareiss(&laplacian(g).without(0, 0)).expect("square")
}

/// Natural log of a positive integer from its bit-length and top 64 bits.
pub fn ln_big(x: &BigInt) -> f64 {
    assert_eq!(x.sign(), Sign::Plus, "logarithm of a non-positive integer");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("at most 64 bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// `Σ_{j=1}^{n-1} [2 ln(4 - 2cos(2πj/n)) + ln(6 - 2cos(2πj/n))]`.
pub fn trig_log_sum(n: usize) -> f64 {
    (1..n)
        .map(|j| {
            let c = 2.0 * (2.0 * PI * j as f64 / n as f64).cos();
            2.0 * (4.0 - c).ln() + (6.0 - c).ln()
        })
        .sum()
}

/// Compares the eigenvalue product `κ / (4n)` against the closed form in log
/// space; the residual is relative to `ln(κ / 4n)`.
pub fn trig_product_check(n: usize, rel_tolerance: f64) -> Result<TreeCountReport> {
    if rel_tolerance.is_nan() || rel_tolerance <= 0.0 {
        return Err(invalid(format!("tolerance must be positive, got {rel_tolerance}")));
    }
    let closed_form = tree_count_closed(n)?;
    let exact = ln_big(&closed_form) - ((4 * n) as f64).ln();
    let residual = (trig_log_sum(n) - exact) / exact;
    Ok(TreeCountReport {
        n,
        closed_form,
        matrix_tree: None,
        trig_log_residual: Some(residual),
        tolerance: rel_tolerance,
    })
}

/// Closed form plus whichever independent checks are requested.
pub fn tree_count_report(
    n: usize,
    with_matrix: bool,
    with_trig: bool,
    rel_tolerance: f64,
) -> Result<TreeCountReport> {
    let mut report = if with_trig {
        trig_product_check(n, rel_tolerance)?
    } else {
        TreeCountReport {
            n,
            closed_form: tree_count_closed(n)?,
            matrix_tree: None,
            trig_log_residual: None,
            tolerance: rel_tolerance,
        }
    };
    if with_matrix {
        report.matrix_tree = Some(tree_count_matrix(&c4xcn(n)?));
    }
    Ok(report)
}

/// Whether `4n | κ(C4 × Cn)`.
pub fn divisible_by_4n(n: usize) -> Result<bool> {
    Ok((tree_count_closed(n)? % BigInt::from(4 * n)).is_zero())
}
