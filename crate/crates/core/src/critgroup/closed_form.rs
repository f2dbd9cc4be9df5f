use num_bigint::BigInt;

use super::AbelianGroup;
use crate::arith::{exact_div, gcd_all};
use crate::error::{invalid, Result};
use crate::exactla::is_chain;
use crate::seq::{derived_terms, SeqKind};

/// The seven cyclic orders of `K(C4 × Cn)` as listed by the closed form,
/// before canonicalisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormTuple {
    pub n: usize,
    pub orders: [BigInt; 7],
    /// Whether the listed order was already a divisibility chain.
    pub already_chain: bool,
}

fn gcd_of(xs: &[&BigInt]) -> BigInt {
    gcd_all(xs.iter().copied())
}

/// Orders for `n = 2s + 1` in terms of `h_s`, `g_s`.
fn odd_case(n: &BigInt, h: &BigInt, g: &BigInt) -> Result<[BigInt; 7]> {
    let nh = n * h;
    let ng = n * g;
    let hg = h * g;
    let g_nhg = gcd_of(&[n, h, g]);
    let g_hg = gcd_of(&[h, g]);
    let g_nh = gcd_of(&[n, h]);
    let g_pairs = gcd_of(&[&nh, &ng, &hg]);
    Ok([
        g_nhg.clone(),
        g_hg.clone(),
        exact_div(&(&g_nh * &g_hg), &g_nhg)?,
        h.clone(),
        exact_div(&(h * &g_pairs), &(&g_nh * &g_hg))?,
        exact_div(&hg, &g_hg)?,
        exact_div(&(4 * n * &hg), &g_pairs)?,
    ])
}

/// Orders for `n = 2s` in terms of `s`, `e_s`, `f_s`.
fn even_case(s: &BigInt, e: &BigInt, f: &BigInt, s_odd: bool) -> Result<[BigInt; 7]> {
    let se = s * e;
    let sf = s * f;
    let ef = e * f;
    let g_sef = gcd_of(&[s, e, f]);
    let g_ef = gcd_of(&[e, f]);
    let g_se = gcd_of(&[s, e]);
    let g_pairs = gcd_of(&[&se, &sf, &ef]);
    let cross = &g_se * &g_ef;
    let (k3, k4, k5, k6, k7) = if s_odd {
        (1, 1, 4, 12, 48)
    } else {
        (4, 6, 6, 2, 8)
    };
    Ok([
        g_sef.clone(),
        g_ef.clone(),
        exact_div(&(k3 * &cross), &g_sef)?,
        k4 * e,
        exact_div(&(k5 * e * &g_pairs), &cross)?,
        exact_div(&(k6 * &ef), &g_ef)?,
        exact_div(&(k7 * s * &ef), &g_pairs)?,
    ])
}

/// Evaluates the closed-form seven-tuple for `n ≥ 3`. Every division is
/// checked for exactness.
pub fn closed_form_tuple(n: usize) -> Result<ClosedFormTuple> {
    if n < 3 {
        return Err(invalid(format!("n must be at least 3, got {n}")));
    }
    let s = n / 2;
    let orders = if n % 2 == 1 {
        let h = derived_terms(SeqKind::H, s + 1).pop().expect("s + 1 terms");
        let g = derived_terms(SeqKind::G, s + 1).pop().expect("s + 1 terms");
        odd_case(&BigInt::from(n), &h, &g)?
    } else {
        let e = derived_terms(SeqKind::E, s + 1).pop().expect("s + 1 terms");
        let f = derived_terms(SeqKind::F, s + 1).pop().expect("s + 1 terms");
        even_case(&BigInt::from(s), &e, &f, s % 2 == 1)?
    };
    let already_chain = is_chain(&orders);
    Ok(ClosedFormTuple {
        n,
        orders,
        already_chain,
    })
}

/// `K(C4 × Cn)` from the closed form, canonicalised and with trivial
/// factors removed.
pub fn closed_form_group(n: usize) -> Result<AbelianGroup> {
    AbelianGroup::from_cyclic_orders(&closed_form_tuple(n)?.orders)
}
