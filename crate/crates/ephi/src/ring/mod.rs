//! Supported coefficient rings and their exact elements.
//!
//! A [`RingDescriptor`] names a commutative ring: the integers, the
//! rationals, integers mod m, a multivariate polynomial ring over another
//! supported ring, or a localization of another supported ring at a single
//! element. A [`RingElement`] pairs a descriptor with a canonical payload.
//! All arithmetic is exact; equality of canonical forms coincides with ring
//! equality, except that localizations over non-domains decide equality by
//! cross-multiplication (see `localized_eq`).

mod element;
mod poly;

pub use element::{RingElement, K_MAX};
pub(crate) use poly::PolyMap;

use crate::{Error, Result};
use num_bigint::BigUint;
use std::sync::Arc;

/// A named commutative ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    /// Arbitrary-precision integers.
    Integers,
    /// Arbitrary-precision rationals, normalized with positive denominator.
    Rationals,
    /// Integers mod m, m >= 2, residues stored in [0, m).
    IntegersMod(Arc<BigUint>),
    /// Multivariate polynomials over a supported base ring.
    Polynomial(Arc<PolynomialRing>),
    /// Localization of a supported base ring at a single element.
    Localized(Arc<Localization>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialRing {
    pub base: RingDescriptor,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    pub base: RingDescriptor,
    /// The inverted element. Nonzero and, where decidable, non-nilpotent.
    pub denominator: RingElement,
}

fn valid_variable(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingDescriptor {
    pub fn integers() -> Self {
        RingDescriptor::Integers
    }

    pub fn rationals() -> Self {
        RingDescriptor::Rationals
    }

    pub fn integers_mod(m: BigUint) -> Result<Self> {
        if m < BigUint::from(2u32) {
            return Err(Error::InvalidDescriptor(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        Ok(RingDescriptor::IntegersMod(Arc::new(m)))
    }

    /// Polynomial ring over `base` in the listed variables. Variable names
    /// must be identifiers, pairwise distinct, and must not shadow a variable
    /// of an inner polynomial ring.
    pub fn polynomial(base: RingDescriptor, variables: Vec<String>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::InvalidDescriptor(
                "polynomial ring needs at least one variable".into(),
            ));
        }
        for v in &variables {
            if !valid_variable(v) {
                return Err(Error::InvalidDescriptor(format!(
                    "invalid variable name {v:?}"
                )));
            }
        }
        let mut seen = variables.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != variables.len() {
            return Err(Error::InvalidDescriptor(
                "duplicate variable names".into(),
            ));
        }
        let inner = base.variable_tower();
        for v in &variables {
            if inner.contains(v) {
                return Err(Error::InvalidDescriptor(format!(
                    "variable {v:?} shadows a variable of the base ring"
                )));
            }
        }
        Ok(RingDescriptor::Polynomial(Arc::new(PolynomialRing {
            base,
            variables,
        })))
    }

    /// Localization of `denominator`'s ring at `denominator`. The element
    /// must be nonzero and is rejected when the nilpotence test (decidable in
    /// all supported rings) shows a power vanishes.
    pub fn localized(denominator: RingElement) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidDescriptor(
                "cannot localize at zero".into(),
            ));
        }
        if denominator.is_nilpotent() {
            return Err(Error::InvalidDescriptor(format!(
                "cannot localize at nilpotent element {}",
                denominator.render()
            )));
        }
        fn tower_has_localization(ring: &RingDescriptor) -> bool {
            match ring {
                RingDescriptor::Localized(_) => true,
                RingDescriptor::Polynomial(p) => tower_has_localization(&p.base),
                _ => false,
            }
        }
        if tower_has_localization(denominator.descriptor()) {
            return Err(Error::InvalidDescriptor(
                "nested localizations are not supported".into(),
            ));
        }
        // The text grammar writes localized elements as num/a^k, so the
        // symbol a must stay free in the base tower.
        if denominator
            .descriptor()
            .variable_tower()
            .iter()
            .any(|v| v == "a")
        {
            return Err(Error::InvalidDescriptor(
                "the symbol a is reserved for the denominator of a localization".into(),
            ));
        }
        Ok(RingDescriptor::Localized(Arc::new(Localization {
            base: denominator.descriptor().clone(),
            denominator,
        })))
    }

    /// All variable names visible in this ring's tower, innermost first.
    pub fn variable_tower(&self) -> Vec<String> {
        match self {
            RingDescriptor::Polynomial(p) => {
                let mut vars = p.base.variable_tower();
                vars.extend(p.variables.iter().cloned());
                vars
            }
            RingDescriptor::Localized(l) => l.base.variable_tower(),
            _ => Vec::new(),
        }
    }

    /// True when the ring is known to have no zero divisors.
    pub fn is_integral_domain(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(m) => is_small_prime(m),
            RingDescriptor::Polynomial(p) => p.base.is_integral_domain(),
            RingDescriptor::Localized(l) => l.base.is_integral_domain(),
        }
    }

    /// True when `divide_exact` is implemented, which gates the fraction-free
    /// Bareiss determinant and the canonical reduction of localized pairs.
    pub fn supports_exact_division(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(m) => is_small_prime(m),
            RingDescriptor::Polynomial(p) => {
                p.base.is_integral_domain() && p.base.supports_exact_division()
            }
            RingDescriptor::Localized(_) => false,
        }
    }

    /// True when equality of canonical forms is plain structural equality.
    /// Localizations over non-domains (and polynomials over those) decide
    /// equality semantically instead.
    pub fn has_unique_canonical_forms(&self) -> bool {
        match self {
            RingDescriptor::Integers
            | RingDescriptor::Rationals
            | RingDescriptor::IntegersMod(_) => true,
            RingDescriptor::Polynomial(p) => p.base.has_unique_canonical_forms(),
            RingDescriptor::Localized(l) => {
                l.base.is_integral_domain()
                    && l.base.supports_exact_division()
                    && l.base.has_unique_canonical_forms()
            }
        }
    }

    /// True when `is_unit` is a total decision procedure for this ring.
    pub fn unit_decidable(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(_) => true,
            RingDescriptor::Polynomial(p) => {
                p.base.unit_decidable() && p.base.nilpotence_decidable()
            }
            RingDescriptor::Localized(l) => match &l.base {
                RingDescriptor::Integers => true,
                RingDescriptor::Rationals => true,
                RingDescriptor::IntegersMod(m) => is_small_prime(m),
                _ => false,
            },
        }
    }

    pub(crate) fn nilpotence_decidable(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(_) => true,
            RingDescriptor::Polynomial(p) => p.base.nilpotence_decidable(),
            RingDescriptor::Localized(l) => l.base.nilpotence_decidable(),
        }
    }

    /// Human-readable name used in error messages and transcripts.
    pub fn render(&self) -> String {
        match self {
            RingDescriptor::Integers => "Z".into(),
            RingDescriptor::Rationals => "Q".into(),
            RingDescriptor::IntegersMod(m) => format!("Z/{m}"),
            RingDescriptor::Polynomial(p) => {
                format!("{}[{}]", p.base.render(), p.variables.join(","))
            }
            RingDescriptor::Localized(l) => {
                format!("{}_({})", l.base.render(), l.denominator.render())
            }
        }
    }
}

/// Primality by trial division, with arbitrary-precision moduli falling back
/// to "not known prime" above 64 bits. Misclassifying a large prime as
/// composite only routes equality through the slower cross-multiplication
/// path; it never affects correctness.
fn is_small_prime(m: &BigUint) -> bool {
    let Ok(n) = u64::try_from(m.clone()) else {
        return false;
    };
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl std::fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_must_be_at_least_two() {
        assert!(RingDescriptor::integers_mod(BigUint::from(1u32)).is_err());
        assert!(RingDescriptor::integers_mod(BigUint::from(2u32)).is_ok());
    }

    #[test]
    fn variables_must_be_distinct_identifiers() {
        let z = RingDescriptor::Integers;
        assert!(RingDescriptor::polynomial(z.clone(), vec!["x".into(), "x".into()]).is_err());
        assert!(RingDescriptor::polynomial(z.clone(), vec!["2x".into()]).is_err());
        assert!(RingDescriptor::polynomial(z.clone(), vec![]).is_err());
        let inner = RingDescriptor::polynomial(z.clone(), vec!["x".into()]).unwrap();
        assert!(RingDescriptor::polynomial(inner.clone(), vec!["x".into()]).is_err());
        assert!(RingDescriptor::polynomial(inner, vec!["t".into()]).is_ok());
    }

    #[test]
    fn localization_rejects_zero_and_nilpotents() {
        let z8 = RingDescriptor::integers_mod(BigUint::from(8u32)).unwrap();
        let two = z8.from_i64(2);
        assert!(RingDescriptor::localized(two).is_err());
        let z12 = RingDescriptor::integers_mod(BigUint::from(12u32)).unwrap();
        let two = z12.from_i64(2);
        assert!(RingDescriptor::localized(two).is_ok());
        assert!(RingDescriptor::localized(RingDescriptor::Integers.from_i64(0)).is_err());
    }

    #[test]
    fn domain_and_primality_classification() {
        assert!(RingDescriptor::Integers.is_integral_domain());
        let z7 = RingDescriptor::integers_mod(BigUint::from(7u32)).unwrap();
        assert!(z7.is_integral_domain());
        let z49 = RingDescriptor::integers_mod(BigUint::from(49u32)).unwrap();
        assert!(!z49.is_integral_domain());
        let zx = RingDescriptor::polynomial(RingDescriptor::Integers, vec!["x".into()]).unwrap();
        assert!(zx.is_integral_domain());
        assert!(zx.supports_exact_division());
        let z49x = RingDescriptor::polynomial(z49, vec!["x".into()]).unwrap();
        assert!(!z49x.is_integral_domain());
        assert!(!z49x.supports_exact_division());
    }
}
