//! Sparse multivariate polynomial coefficient maps.
//!
//! A polynomial is a map from exponent vectors (one u32 per variable, lex
//! ordered by the BTreeMap) to nonzero coefficients in the base ring. The
//! operations here keep that invariant; callers construct elements through
//! [`RingElement::from_poly_map`] which prunes semantic zeros.

use super::RingElement;
use crate::{Error, Result};
use std::collections::BTreeMap;

pub(crate) type PolyMap = BTreeMap<Vec<u32>, RingElement>;

pub(crate) fn add(a: &PolyMap, b: &PolyMap) -> Result<PolyMap> {
    let mut out = a.clone();
    for (e, c) in b {
        match out.remove(e) {
            Some(prev) => {
                let s = prev.add(c)?;
                if !s.is_zero() {
                    out.insert(e.clone(), s);
                }
            }
            None => {
                out.insert(e.clone(), c.clone());
            }
        }
    }
    Ok(out)
}

pub(crate) fn neg(a: &PolyMap) -> PolyMap {
    a.iter().map(|(e, c)| (e.clone(), c.neg())).collect()
}

pub(crate) fn mul(a: &PolyMap, b: &PolyMap) -> Result<PolyMap> {
    let mut out = PolyMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = Vec::with_capacity(ea.len());
            for (x, y) in ea.iter().zip(eb.iter()) {
                e.push(x.checked_add(*y).ok_or(Error::ExponentOverflow)?);
            }
            let c = ca.mul(cb)?;
            match out.remove(&e) {
                Some(prev) => {
                    let s = prev.add(&c)?;
                    if !s.is_zero() {
                        out.insert(e, s);
                    }
                }
                None => {
                    if !c.is_zero() {
                        out.insert(e, c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact division of multivariate polynomials over a base ring with exact
/// division, by repeated cancellation of lex-leading terms. Returns None
/// when self is not a multiple of rhs.
pub(crate) fn divide_exact(a: &PolyMap, b: &PolyMap) -> Option<PolyMap> {
    let (lead_b_exp, lead_b_coeff) = b.iter().next_back()?;
    let mut rem = a.clone();
    let mut quot = PolyMap::new();
    while let Some((lead_r_exp, lead_r_coeff)) = rem.iter().next_back() {
        let mut q_exp = Vec::with_capacity(lead_r_exp.len());
        for (x, y) in lead_r_exp.iter().zip(lead_b_exp.iter()) {
            q_exp.push(x.checked_sub(*y)?);
        }
        let q_coeff = lead_r_coeff.divide_exact(lead_b_coeff)?;
        let mut q_term = PolyMap::new();
        q_term.insert(q_exp.clone(), q_coeff.clone());
        let cancel = mul(&q_term, b).ok()?;
        rem = add(&rem, &neg(&cancel)).ok()?;
        quot.insert(q_exp, q_coeff);
    }
    Some(quot)
}
