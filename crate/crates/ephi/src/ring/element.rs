//! Exact ring elements with canonical forms.
//!
//! Canonical forms: rationals are reduced with positive denominator,
//! residues lie in [0, m), polynomials carry no zero coefficients, and
//! localized pairs num/a^e are reduced by exact division of the numerator
//! where the base ring supports it. Over bases with zero divisors the pair
//! is left unreduced and equality is decided by cross-multiplication with a
//! bounded power of the denominator (see [`K_MAX`]).

use super::{poly, PolyMap, RingDescriptor};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Bound on the exponent k in the localized equality test
/// a^k (num_x a^{e_y} - num_y a^{e_x}) = 0. Over Z/m the annihilator chain
/// stabilizes within bitlen(m) steps, so the bound is exact for every
/// modulus below 2^64; refutation messages cite the bound when it is hit.
pub const K_MAX: u32 = 64;

/// Iteration cap for the geometric series inverting 1 + nilpotent.
const NILPOTENT_SERIES_CAP: u32 = 256;

#[derive(Debug, Clone)]
pub struct RingElement {
    descriptor: RingDescriptor,
    payload: Payload,
}

#[derive(Debug, Clone)]
pub(crate) enum Payload {
    Int(BigInt),
    Rat(BigRational),
    Mod(BigUint),
    Poly(PolyMap),
    Loc { num: Box<RingElement>, exp: u32 },
}

impl RingDescriptor {
    pub fn zero(&self) -> RingElement {
        self.from_integer(BigInt::zero())
    }

    pub fn one(&self) -> RingElement {
        self.from_integer(BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_integer(BigInt::from(n))
    }

    /// Image of an integer under the canonical map Z -> R.
    pub fn from_integer(&self, n: BigInt) -> RingElement {
        let payload = match self {
            RingDescriptor::Integers => Payload::Int(n),
            RingDescriptor::Rationals => Payload::Rat(BigRational::from_integer(n)),
            RingDescriptor::IntegersMod(m) => {
                let m_int = BigInt::from((**m).clone());
                let r = n.mod_floor(&m_int);
                Payload::Mod(r.to_biguint().expect("mod_floor is nonnegative"))
            }
            RingDescriptor::Polynomial(p) => {
                let c = p.base.from_integer(n);
                let mut map = PolyMap::new();
                if !c.is_zero() {
                    map.insert(vec![0; p.variables.len()], c);
                }
                Payload::Poly(map)
            }
            RingDescriptor::Localized(l) => {
                return RingElement::from_localized_parts(self.clone(), l.base.from_integer(n), 0)
                    .expect("integer image is well formed");
            }
        };
        RingElement {
            descriptor: self.clone(),
            payload,
        }
    }
}

impl RingElement {
    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    /// Builds a polynomial element from a coefficient map, pruning zero
    /// coefficients.
    pub(crate) fn from_poly_map(descriptor: RingDescriptor, mut map: PolyMap) -> Self {
        map.retain(|_, c| !c.is_zero());
        RingElement {
            descriptor,
            payload: Payload::Poly(map),
        }
    }

    /// Builds a localized pair num/den^exp in canonical form.
    pub fn from_localized_parts(
        descriptor: RingDescriptor,
        num: RingElement,
        exp: u32,
    ) -> Result<Self> {
        let RingDescriptor::Localized(l) = &descriptor else {
            return Err(Error::InvalidDescriptor(
                "localized parts require a localized ring".into(),
            ));
        };
        if *num.descriptor() != l.base {
            return Err(Error::descriptor_mismatch(
                num.descriptor(),
                &l.base,
                "localized numerator",
            ));
        }
        let den = l.denominator.clone();
        let mut num = num;
        let mut exp = exp;
        if l.base.supports_exact_division() {
            while exp > 0 {
                match num.divide_exact(&den) {
                    Some(q) => {
                        num = q;
                        exp -= 1;
                    }
                    None => break,
                }
            }
        }
        if loc_is_zero(&num, &den) {
            num = l.base.zero();
            exp = 0;
        }
        Ok(RingElement {
            descriptor: descriptor.clone(),
            payload: Payload::Loc {
                num: Box::new(num),
                exp,
            },
        })
    }

    /// Numerator and exponent of a localized pair.
    pub fn localized_parts(&self) -> Option<(&RingElement, u32)> {
        match &self.payload {
            Payload::Loc { num, exp } => Some((num, *exp)),
            _ => None,
        }
    }

    pub(crate) fn poly_terms(&self) -> Option<&PolyMap> {
        match &self.payload {
            Payload::Poly(map) => Some(map),
            _ => None,
        }
    }

    pub(crate) fn int_value(&self) -> Option<&BigInt> {
        match &self.payload {
            Payload::Int(n) => Some(n),
            _ => None,
        }
    }

    pub(crate) fn rat_value(&self) -> Option<&BigRational> {
        match &self.payload {
            Payload::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub(crate) fn mod_value(&self) -> Option<&BigUint> {
        match &self.payload {
            Payload::Mod(r) => Some(r),
            _ => None,
        }
    }

    fn check_same(&self, other: &Self, context: &str) -> Result<()> {
        if self.descriptor == other.descriptor {
            Ok(())
        } else {
            Err(Error::descriptor_mismatch(
                &self.descriptor,
                &other.descriptor,
                context,
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "add")?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a + b),
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a + b),
            (Payload::Mod(a), Payload::Mod(b)) => {
                let m = self.modulus();
                Payload::Mod((a + b) % m)
            }
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(poly::add(a, b)?),
            (Payload::Loc { num: nx, exp: ex }, Payload::Loc { num: ny, exp: ey }) => {
                let den = self.loc_denominator();
                let m = (*ex).max(*ey);
                let sx = nx.mul(&den.pow((m - ex).into())?)?;
                let sy = ny.mul(&den.pow((m - ey).into())?)?;
                return RingElement::from_localized_parts(
                    self.descriptor.clone(),
                    sx.add(&sy)?,
                    m,
                );
            }
            _ => unreachable!("payload matches descriptor"),
        };
        Ok(RingElement {
            descriptor: self.descriptor.clone(),
            payload,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(-a),
            Payload::Rat(a) => Payload::Rat(-a),
            Payload::Mod(a) => {
                let m = self.modulus();
                if a.is_zero() {
                    Payload::Mod(BigUint::zero())
                } else {
                    Payload::Mod(m - a)
                }
            }
            Payload::Poly(a) => Payload::Poly(poly::neg(a)),
            Payload::Loc { num, exp } => Payload::Loc {
                num: Box::new(num.neg()),
                exp: *exp,
            },
        };
        RingElement {
            descriptor: self.descriptor.clone(),
            payload,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "mul")?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a * b),
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a * b),
            (Payload::Mod(a), Payload::Mod(b)) => Payload::Mod((a * b) % self.modulus()),
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(poly::mul(a, b)?),
            (Payload::Loc { num: nx, exp: ex }, Payload::Loc { num: ny, exp: ey }) => {
                let exp = ex
                    .checked_add(*ey)
                    .ok_or(Error::ExponentOverflow)?;
                return RingElement::from_localized_parts(
                    self.descriptor.clone(),
                    nx.mul(ny)?,
                    exp,
                );
            }
            _ => unreachable!("payload matches descriptor"),
        };
        Ok(RingElement {
            descriptor: self.descriptor.clone(),
            payload,
        })
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = self.descriptor.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Semantic zero test. Canonical forms store semantic zeros as the
    /// structural zero, so this is a cheap structural check.
    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(a) => a.is_zero(),
            Payload::Rat(a) => a.is_zero(),
            Payload::Mod(a) => a.is_zero(),
            Payload::Poly(a) => a.is_empty(),
            Payload::Loc { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.payload {
            Payload::Int(a) => a.is_one(),
            Payload::Rat(a) => a.is_one(),
            Payload::Mod(a) => a.is_one(),
            Payload::Poly(map) => {
                map.len() == 1
                    && map
                        .iter()
                        .next()
                        .map(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
                        .unwrap_or(false)
            }
            Payload::Loc { .. } => match self.sub(&self.descriptor.one()) {
                Ok(d) => d.is_zero(),
                Err(_) => false,
            },
        }
    }

    fn modulus(&self) -> &BigUint {
        match &self.descriptor {
            RingDescriptor::IntegersMod(m) => m,
            _ => unreachable!("modulus only on Z/m"),
        }
    }

    fn loc_denominator(&self) -> RingElement {
        match &self.descriptor {
            RingDescriptor::Localized(l) => l.denominator.clone(),
            _ => unreachable!("denominator only on localizations"),
        }
    }

    /// Unit test with inverse witness: Ok(Some(inverse)) when the element is
    /// a unit, Ok(None) when it provably is not, Err when the ring has no
    /// decision procedure.
    pub fn is_unit(&self) -> Result<Option<RingElement>> {
        match (&self.descriptor, &self.payload) {
            (RingDescriptor::Integers, Payload::Int(n)) => {
                if n.is_one() || (-n).is_one() {
                    Ok(Some(self.clone()))
                } else {
                    Ok(None)
                }
            }
            (RingDescriptor::Rationals, Payload::Rat(r)) => {
                if r.is_zero() {
                    Ok(None)
                } else {
                    Ok(Some(RingElement {
                        descriptor: self.descriptor.clone(),
                        payload: Payload::Rat(r.recip()),
                    }))
                }
            }
            (RingDescriptor::IntegersMod(m), Payload::Mod(x)) => {
                let e = BigInt::from(x.clone()).extended_gcd(&BigInt::from((**m).clone()));
                if e.gcd.is_one() {
                    let m_int = BigInt::from((**m).clone());
                    let inv = e.x.mod_floor(&m_int).to_biguint().expect("nonnegative");
                    Ok(Some(RingElement {
                        descriptor: self.descriptor.clone(),
                        payload: Payload::Mod(inv),
                    }))
                } else {
                    Ok(None)
                }
            }
            (RingDescriptor::Polynomial(p), Payload::Poly(map)) => {
                if !p.base.unit_decidable() || !p.base.nilpotence_decidable() {
                    return Err(Error::UnitTestUnsupported {
                        ring: self.descriptor.render(),
                    });
                }
                let zero_key = vec![0u32; p.variables.len()];
                let constant = map
                    .get(&zero_key)
                    .cloned()
                    .unwrap_or_else(|| p.base.zero());
                let Some(c_inv) = constant.is_unit()? else {
                    return Ok(None);
                };
                let higher_nilpotent = map
                    .iter()
                    .filter(|(e, _)| **e != zero_key)
                    .all(|(_, c)| c.is_nilpotent());
                if !higher_nilpotent {
                    return Ok(None);
                }
                let c_inv_poly = RingElement::from_poly_map(self.descriptor.clone(), {
                    let mut m = PolyMap::new();
                    m.insert(zero_key.clone(), c_inv);
                    m
                });
                if map.len() == 1 {
                    return Ok(Some(c_inv_poly));
                }
                // p = c (1 + q) with q nilpotent; invert by a finite
                // geometric series.
                let one = self.descriptor.one();
                let q = self.mul(&c_inv_poly)?.sub(&one)?;
                let minus_q = q.neg();
                let mut acc = one.clone();
                let mut pw = one;
                let mut terminated = false;
                for _ in 0..NILPOTENT_SERIES_CAP {
                    pw = pw.mul(&minus_q)?;
                    if pw.is_zero() {
                        terminated = true;
                        break;
                    }
                    acc = acc.add(&pw)?;
                }
                if !terminated {
                    return Err(Error::UnitTestUnsupported {
                        ring: self.descriptor.render(),
                    });
                }
                Ok(Some(acc.mul(&c_inv_poly)?))
            }
            (RingDescriptor::Localized(l), Payload::Loc { num, exp }) => {
                if num.is_zero() {
                    return Ok(None);
                }
                match &l.base {
                    RingDescriptor::Integers => {
                        let n = num.int_value().expect("integer numerator").clone();
                        let a = l
                            .denominator
                            .int_value()
                            .expect("integer denominator")
                            .clone();
                        let k = (n.magnitude().bits() as u32).max(*exp) + 1;
                        let a_k = a.pow(k);
                        let (q, r) = a_k.div_rem(&n);
                        if r.is_zero() {
                            RingElement::from_localized_parts(
                                self.descriptor.clone(),
                                l.base.from_integer(q),
                                k - exp,
                            )
                            .map(Some)
                        } else {
                            Ok(None)
                        }
                    }
                    base if base.is_integral_domain() && base.unit_decidable() => {
                        // Field-like base: x = n/a^e is a unit iff n is a
                        // unit times a power of a; with a itself invertible
                        // here, a unit numerator suffices.
                        match num.is_unit()? {
                            Some(n_inv) => {
                                let a_e = l.denominator.pow((*exp).into())?;
                                RingElement::from_localized_parts(
                                    self.descriptor.clone(),
                                    a_e.mul(&n_inv)?,
                                    0,
                                )
                                .map(Some)
                            }
                            None => Err(Error::UnitTestUnsupported {
                                ring: self.descriptor.render(),
                            }),
                        }
                    }
                    _ => Err(Error::UnitTestUnsupported {
                        ring: self.descriptor.render(),
                    }),
                }
            }
            _ => unreachable!("payload matches descriptor"),
        }
    }

    /// Nilpotence test, decidable in all supported rings. Integral domains
    /// reduce to the zero test; Z/m uses the bit-length power bound.
    pub fn is_nilpotent(&self) -> bool {
        match (&self.descriptor, &self.payload) {
            (RingDescriptor::Integers, _) | (RingDescriptor::Rationals, _) => self.is_zero(),
            (RingDescriptor::IntegersMod(m), Payload::Mod(x)) => {
                if x.is_zero() {
                    return true;
                }
                let b = BigUint::from(m.bits());
                x.modpow(&b, m).is_zero()
            }
            (RingDescriptor::Polynomial(_), Payload::Poly(map)) => {
                map.values().all(|c| c.is_nilpotent())
            }
            (RingDescriptor::Localized(l), _) => {
                if l.base.is_integral_domain() {
                    return self.is_zero();
                }
                // x nilpotent iff some power vanishes; squaring reaches
                // exponent 128 which covers every desk-scale modulus.
                let mut cur = self.clone();
                for _ in 0..7 {
                    if cur.is_zero() {
                        return true;
                    }
                    match cur.mul(&cur) {
                        Ok(sq) => cur = sq,
                        Err(_) => return false,
                    }
                }
                cur.is_zero()
            }
            _ => unreachable!("payload matches descriptor"),
        }
    }

    /// Exact division: Some(q) with q * rhs = self, None when no such q is
    /// found. Implemented for the rings that carry the fraction-free
    /// determinant and the localized canonical reduction.
    pub fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        if self.descriptor != rhs.descriptor || rhs.is_zero() {
            return None;
        }
        match (&self.payload, &rhs.payload) {
            (Payload::Int(a), Payload::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Some(RingElement {
                        descriptor: self.descriptor.clone(),
                        payload: Payload::Int(q),
                    })
                } else {
                    None
                }
            }
            (Payload::Rat(a), Payload::Rat(b)) => Some(RingElement {
                descriptor: self.descriptor.clone(),
                payload: Payload::Rat(a / b),
            }),
            (Payload::Mod(_), Payload::Mod(_)) => {
                if !self.descriptor.is_integral_domain() {
                    return None;
                }
                let inv = rhs.is_unit().ok()??;
                self.mul(&inv).ok()
            }
            (Payload::Poly(a), Payload::Poly(b)) => {
                if !self.descriptor.supports_exact_division() {
                    return None;
                }
                let map = poly::divide_exact(a, b)?;
                Some(RingElement::from_poly_map(self.descriptor.clone(), map))
            }
            _ => None,
        }
    }

    /// Substitutes images for the variables of a polynomial element. All
    /// images must share one descriptor S, coefficients are mapped into S by
    /// the canonical coercion, and the result lives in S.
    pub fn substitute(&self, images: &[RingElement]) -> Result<RingElement> {
        let (ring, map) = match (&self.descriptor, &self.payload) {
            (RingDescriptor::Polynomial(p), Payload::Poly(m)) => (p, m),
            _ => {
                return Err(Error::InvalidDescriptor(format!(
                    "substitution requires a polynomial ring, got {}",
                    self.descriptor.render()
                )))
            }
        };
        if images.len() != ring.variables.len() {
            return Err(Error::ArityMismatch {
                expected: ring.variables.len(),
                got: images.len(),
            });
        }
        let target = images[0].descriptor().clone();
        for im in images {
            if *im.descriptor() != target {
                return Err(Error::descriptor_mismatch(
                    im.descriptor(),
                    &target,
                    "substitution images",
                ));
            }
        }
        let mut acc = target.zero();
        for (exps, coeff) in map {
            let mut term = coeff.coerce_into(&target)?;
            for (image, e) in images.iter().zip(exps.iter()) {
                if *e > 0 {
                    term = term.mul(&image.pow((*e).into())?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Canonical coercion into a larger ring: identity, integer images,
    /// constants into polynomial rings, coefficientwise maps between
    /// polynomial rings with the same variables, and numerators into
    /// localizations.
    pub fn coerce_into(&self, target: &RingDescriptor) -> Result<RingElement> {
        if self.descriptor == *target {
            return Ok(self.clone());
        }
        if let Payload::Int(n) = &self.payload {
            return Ok(target.from_integer(n.clone()));
        }
        match target {
            RingDescriptor::Polynomial(pt) => {
                if let (RingDescriptor::Polynomial(ps), Payload::Poly(map)) =
                    (&self.descriptor, &self.payload)
                {
                    if ps.variables == pt.variables {
                        let mut out = PolyMap::new();
                        for (e, c) in map {
                            let c2 = c.coerce_into(&pt.base)?;
                            if !c2.is_zero() {
                                out.insert(e.clone(), c2);
                            }
                        }
                        return Ok(RingElement::from_poly_map(target.clone(), out));
                    }
                }
                let c = self.coerce_into(&pt.base)?;
                let mut map = PolyMap::new();
                if !c.is_zero() {
                    map.insert(vec![0; pt.variables.len()], c);
                }
                Ok(RingElement::from_poly_map(target.clone(), map))
            }
            RingDescriptor::Localized(lt) => {
                let num = self.coerce_into(&lt.base)?;
                RingElement::from_localized_parts(target.clone(), num, 0)
            }
            _ => Err(Error::descriptor_mismatch(
                &self.descriptor,
                target,
                "coerce",
            )),
        }
    }

    /// The localization map R -> R_a sending x to x/a^0.
    pub fn localize_into(&self, target: &RingDescriptor) -> Result<RingElement> {
        match target {
            RingDescriptor::Localized(l) if l.base == self.descriptor => {
                RingElement::from_localized_parts(target.clone(), self.clone(), 0)
            }
            _ => Err(Error::descriptor_mismatch(
                &self.descriptor,
                target,
                "localize",
            )),
        }
    }

    /// Splits a polynomial into its homogeneous components by total degree,
    /// ascending, omitting zero components.
    pub fn homogeneous_components(&self) -> Result<Vec<(u64, RingElement)>> {
        let map = match (&self.descriptor, &self.payload) {
            (RingDescriptor::Polynomial(_), Payload::Poly(m)) => m,
            _ => {
                return Err(Error::InvalidDescriptor(format!(
                    "homogeneous components require a polynomial ring, got {}",
                    self.descriptor.render()
                )))
            }
        };
        let mut by_degree: std::collections::BTreeMap<u64, PolyMap> = Default::default();
        for (e, c) in map {
            let d: u64 = e.iter().map(|&x| x as u64).sum();
            by_degree.entry(d).or_default().insert(e.clone(), c.clone());
        }
        Ok(by_degree
            .into_iter()
            .map(|(d, m)| (d, RingElement::from_poly_map(self.descriptor.clone(), m)))
            .collect())
    }

    /// Total degree of a polynomial, None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        match &self.payload {
            Payload::Poly(map) => map
                .keys()
                .map(|e| e.iter().map(|&x| x as u64).sum())
                .max(),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        crate::parse::render_element(self)
    }
}

/// Zero test for a numerator inside the localization at `den`: true iff
/// den^k * num = 0 for some bounded k. Exact over integral domains (k = 0)
/// and over Z/m (the bit-length bound); K_MAX caps other towers.
fn loc_is_zero(num: &RingElement, den: &RingElement) -> bool {
    if num.is_zero() {
        return true;
    }
    if num.descriptor().is_integral_domain() {
        return false;
    }
    if let RingDescriptor::IntegersMod(m) = num.descriptor() {
        let b = m.bits() as u32;
        if let (Ok(d_pow), Some(_)) = (den.pow(b.into()), num.mod_value()) {
            if let Ok(prod) = d_pow.mul(num) {
                return prod.is_zero();
            }
        }
    }
    let mut cur = num.clone();
    for _ in 0..K_MAX {
        match cur.mul(den) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
        if cur.is_zero() {
            return true;
        }
    }
    false
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        if self.descriptor != other.descriptor {
            return false;
        }
        match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => a == b,
            (Payload::Rat(a), Payload::Rat(b)) => a == b,
            (Payload::Mod(a), Payload::Mod(b)) => a == b,
            (Payload::Poly(a), Payload::Poly(b)) => {
                if self.descriptor.has_unique_canonical_forms() {
                    a == b
                } else {
                    match self.sub(other) {
                        Ok(d) => d.is_zero(),
                        Err(_) => a == b,
                    }
                }
            }
            (Payload::Loc { num: na, exp: ea }, Payload::Loc { num: nb, exp: eb }) => {
                if self.descriptor.has_unique_canonical_forms() {
                    ea == eb && na == nb
                } else {
                    match self.sub(other) {
                        Ok(d) => d.is_zero(),
                        Err(_) => ea == eb && na == nb,
                    }
                }
            }
            _ => false,
        }
    }
}

impl Eq for RingElement {}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn zmod(m: u32) -> RingDescriptor {
        RingDescriptor::integers_mod(BigUint::from(m)).unwrap()
    }

    #[test]
    fn integer_and_modular_arithmetic() {
        let a = z().from_i64(7);
        let b = z().from_i64(-3);
        assert_eq!(a.add(&b).unwrap(), z().from_i64(4));
        assert_eq!(a.mul(&b).unwrap(), z().from_i64(-21));
        let z12 = zmod(12);
        let x = z12.from_i64(7);
        let y = z12.from_i64(8);
        assert_eq!(x.add(&y).unwrap(), z12.from_i64(3));
        assert_eq!(x.mul(&y).unwrap(), z12.from_i64(8));
        assert_eq!(z12.from_i64(-1), z12.from_i64(11));
    }

    #[test]
    fn rational_normalization() {
        let q = RingDescriptor::Rationals;
        let half = q.from_i64(1).divide_exact(&q.from_i64(2)).unwrap();
        let other = q.from_i64(-2).divide_exact(&q.from_i64(-4)).unwrap();
        assert_eq!(half, other);
    }

    #[test]
    fn unit_witnesses() {
        // 5 in Z/12 is a unit with inverse 5.
        let z12 = zmod(12);
        let inv = z12.from_i64(5).is_unit().unwrap().unwrap();
        assert_eq!(inv, z12.from_i64(5));
        // 4 in Z/12 is not.
        assert!(z12.from_i64(4).is_unit().unwrap().is_none());
        // Integers: only +-1.
        assert!(z().from_i64(-1).is_unit().unwrap().is_some());
        assert!(z().from_i64(2).is_unit().unwrap().is_none());
    }

    #[test]
    fn localized_unit_power_test() {
        // 1/a^2 in Z localized at a = 2 is a unit with inverse 4/a^0.
        let a = z().from_i64(2);
        let ra = RingDescriptor::localized(a).unwrap();
        let x = RingElement::from_localized_parts(ra.clone(), z().from_i64(1), 2).unwrap();
        let inv = x.is_unit().unwrap().unwrap();
        let (num, exp) = inv.localized_parts().unwrap();
        assert_eq!(num, &z().from_i64(4));
        assert_eq!(exp, 0);
        assert!(x.mul(&inv).unwrap().is_one());
        // 3/a^0 is not a unit in Z_2.
        let y = RingElement::from_localized_parts(ra, z().from_i64(3), 0).unwrap();
        assert!(y.is_unit().unwrap().is_none());
    }

    #[test]
    fn localized_canonical_reduction() {
        // 12/a^2 over Z at a = 2 reduces to 3/a^0.
        let ra = RingDescriptor::localized(z().from_i64(2)).unwrap();
        let x = RingElement::from_localized_parts(ra, z().from_i64(12), 2).unwrap();
        let (num, exp) = x.localized_parts().unwrap();
        assert_eq!(num, &z().from_i64(3));
        assert_eq!(exp, 0);
    }

    #[test]
    fn localized_equality_over_zero_divisors() {
        // In (Z/12)_2: 6/1 = 0 because 2 * 6 = 0 mod 12, and 6/2 = 3/1.
        let z12 = zmod(12);
        let ra = RingDescriptor::localized(z12.from_i64(2)).unwrap();
        let six = RingElement::from_localized_parts(ra.clone(), z12.from_i64(6), 0).unwrap();
        assert!(six.is_zero());
        let x = RingElement::from_localized_parts(ra.clone(), z12.from_i64(6), 1).unwrap();
        let y = RingElement::from_localized_parts(ra, z12.from_i64(3), 0).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn nilpotence() {
        let z12 = zmod(12);
        assert!(!z12.from_i64(2).is_nilpotent());
        let z8 = zmod(8);
        assert!(z8.from_i64(2).is_nilpotent());
        assert!(!z().from_i64(5).is_nilpotent());
    }

    #[test]
    fn poly_units_over_non_reduced_base() {
        // 1 + 2x is a unit in (Z/4)[x]: (1 + 2x)^2 = 1.
        let z4 = zmod(4);
        let ring = RingDescriptor::polynomial(z4.clone(), vec!["x".into()]).unwrap();
        let x = crate::parse::parse_element("1 + 2*x", &ring).unwrap();
        let inv = x.is_unit().unwrap().unwrap();
        assert!(x.mul(&inv).unwrap().is_one());
        // x itself is not a unit.
        let just_x = crate::parse::parse_element("x", &ring).unwrap();
        assert!(just_x.is_unit().unwrap().is_none());
    }

    #[test]
    fn substitution_composes_with_arithmetic() {
        let ring =
            RingDescriptor::polynomial(z(), vec!["x".into(), "y".into()]).unwrap();
        let p = crate::parse::parse_element("x^2 + y", &ring).unwrap();
        let q = crate::parse::parse_element("x - 1", &ring).unwrap();
        let images = [z().from_i64(3), z().from_i64(5)];
        let lhs = p.mul(&q).unwrap().substitute(&images).unwrap();
        let rhs = p
            .substitute(&images)
            .unwrap()
            .mul(&q.substitute(&images).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, z().from_i64(28));
    }

    #[test]
    fn coercion_paths() {
        let zx = RingDescriptor::polynomial(z(), vec!["x".into()]).unwrap();
        let n = z().from_i64(5);
        let c = n.coerce_into(&zx).unwrap();
        assert_eq!(c, zx.from_i64(5));
        // Z[x] -> (Z/3)[x] coefficientwise.
        let z3x = RingDescriptor::polynomial(zmod(3), vec!["x".into()]).unwrap();
        let p = crate::parse::parse_element("3*x + 4", &zx).unwrap();
        let q = p.coerce_into(&z3x).unwrap();
        assert_eq!(q, z3x.from_i64(1));
    }
}
