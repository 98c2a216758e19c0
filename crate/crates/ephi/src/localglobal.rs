//! Local-global harness: patching a parametrized word against a finite
//! cover by the telescoping identity, homogenization along a fresh degree
//! variable, and dilation certificates relating a global word to a word
//! over a localization.

use crate::certificate::{CertPayload, Certificate, CertificateBuilder, ClaimKind};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingElement};
use crate::words::{variable_element, GeneratorWord};
use crate::{Error, Result};

/// A finite cover of the unit ideal in power form: elements a_1..a_k,
/// coefficients c_1..c_k and an exponent d >= 1 with sum c_i a_i^d = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSpec {
    elements: Vec<RingElement>,
    coefficients: Vec<RingElement>,
    exponent: u32,
}

impl CoverSpec {
    pub fn new(
        elements: Vec<RingElement>,
        coefficients: Vec<RingElement>,
        exponent: u32,
    ) -> Result<Self> {
        if elements.is_empty() || elements.len() != coefficients.len() {
            return Err(Error::CoverInvalid(format!(
                "a cover needs matching nonempty element and coefficient lists, got {} and {}",
                elements.len(),
                coefficients.len()
            )));
        }
        if exponent == 0 {
            return Err(Error::CoverInvalid("cover exponent must be positive".into()));
        }
        let ring = elements[0].descriptor().clone();
        for x in elements.iter().chain(coefficients.iter()) {
            if *x.descriptor() != ring {
                return Err(Error::descriptor_mismatch(x.descriptor(), &ring, "cover"));
            }
        }
        let spec = CoverSpec {
            elements,
            coefficients,
            exponent,
        };
        let total = spec.combination()?;
        if !total.is_one() {
            return Err(Error::CoverInvalid(format!(
                "cover combination is {}, expected 1",
                total.render()
            )));
        }
        Ok(spec)
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.elements[0].descriptor()
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn coefficients(&self) -> &[RingElement] {
        &self.coefficients
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// sum c_i a_i^d, the unit combination the cover certifies.
    pub fn combination(&self) -> Result<RingElement> {
        let mut total = self.ring().zero();
        for (a, c) in self.elements.iter().zip(&self.coefficients) {
            total = total.add(&c.mul(&a.pow(u64::from(self.exponent))?)?)?;
        }
        Ok(total)
    }

    /// The scaled cover b_i = c_i a_i^d, which sums to 1.
    fn scaled(&self) -> Result<Vec<RingElement>> {
        self.elements
            .iter()
            .zip(&self.coefficients)
            .map(|(a, c)| c.mul(&a.pow(u64::from(self.exponent))?))
            .collect()
    }
}

/// The base ring of a one-variable polynomial ring, or InvalidDescriptor.
fn single_variable_base(ring: &RingDescriptor) -> Result<RingDescriptor> {
    match ring {
        RingDescriptor::Polynomial(p) if p.variables.len() == 1 => Ok(p.base.clone()),
        _ => Err(Error::InvalidDescriptor(format!(
            "expected a one-variable polynomial ring, got {}",
            ring.render()
        ))),
    }
}

/// A variable name not visible in the tower of `ring`.
fn fresh_variable(ring: &RingDescriptor, stem: &str) -> String {
    let taken = ring.variable_tower();
    if !taken.iter().any(|v| v == stem) {
        return stem.to_string();
    }
    let mut k = 2usize;
    loop {
        let candidate = format!("{stem}{k}");
        if !taken.iter().any(|v| *v == candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Verifies the patching identity for theta over R[X] with theta(0) = I:
/// with gamma(U, V) = theta(U + V) theta(V)^{-1} built over R[X, Y] and
/// b_i = c_i a_i^d, the product gamma(b_1 X, T_1) ... gamma(b_k X, T_k)
/// with tails T_i = (b_{i+1} + ... + b_k) X recovers theta exactly, because
/// the tails telescope and the b_i sum to 1.
pub fn quillen_patch_verify(theta: &GeneratorWord, cover: &CoverSpec) -> Result<Certificate> {
    let ring = theta.ring().clone();
    let base = single_variable_base(&ring)?;
    if cover.ring() != &base {
        return Err(Error::descriptor_mismatch(cover.ring(), &base, "patching cover"));
    }
    let at_zero = theta.substitute(&[ring.zero()])?.evaluate()?;
    if !at_zero.is_identity() {
        return Err(Error::NotIdentityAtZero(
            "theta does not evaluate to the identity at X = 0".into(),
        ));
    }

    let mut builder = CertificateBuilder::new(ClaimKind::PatchingIdentity);
    builder.input("theta", CertPayload::Word(theta.clone()));
    builder.input("cover", CertPayload::Cover(cover.clone()));
    builder.check_matrix_eq(
        "theta is the identity at zero",
        &at_zero,
        &Matrix::identity(ring.clone(), theta.size()),
    );
    builder.check_element_eq(
        "cover combination equals one",
        &cover.combination()?,
        &base.one(),
    );

    // gamma over R[X, Y], with Y renamed when the tower already uses it.
    let x_name = match &ring {
        RingDescriptor::Polynomial(p) => p.variables[0].clone(),
        _ => unreachable!("checked by single_variable_base"),
    };
    let y_name = fresh_variable(&ring, "Y");
    let plane = RingDescriptor::polynomial(base.clone(), vec![x_name, y_name])?;
    let x2 = variable_element(&plane, 0);
    let y2 = variable_element(&plane, 1);
    let gamma = theta
        .substitute(&[x2.add(&y2)?])?
        .evaluate()?
        .mul(&theta.inverse().substitute(&[y2])?.evaluate()?)?;

    let x = variable_element(&ring, 0);
    let scaled = cover.scaled()?;
    let mut product = Matrix::identity(ring.clone(), theta.size());
    for (i, b) in scaled.iter().enumerate() {
        let mut tail = base.zero();
        for later in &scaled[i + 1..] {
            tail = tail.add(later)?;
        }
        let b_x = b.coerce_into(&ring)?.mul(&x)?;
        let tail_x = tail.coerce_into(&ring)?.mul(&x)?;
        product = product.mul(&gamma.substitute(&[b_x, tail_x])?)?;
    }
    builder.check_matrix_eq(
        "telescoped patches recover theta",
        &product,
        &theta.evaluate()?,
    );
    Ok(builder.finish())
}

/// Homogenizes a polynomial element into R[X_1..X_t][T] by scattering its
/// homogeneous components along powers of the fresh variable T; this is the
/// ring map X_i -> X_i T, so it commutes with matrix products.
pub fn homogenize_element(x: &RingElement) -> Result<RingElement> {
    let tower = homogenization_tower(x.descriptor())?;
    homogenize_into(x, &tower)
}

fn homogenization_tower(ring: &RingDescriptor) -> Result<RingDescriptor> {
    if !matches!(ring, RingDescriptor::Polynomial(_)) {
        return Err(Error::InvalidDescriptor(format!(
            "homogenization needs a polynomial ring, got {}",
            ring.render()
        )));
    }
    RingDescriptor::polynomial(ring.clone(), vec!["T".into()])
}

fn homogenize_into(x: &RingElement, tower: &RingDescriptor) -> Result<RingElement> {
    let t = variable_element(tower, 0);
    let mut out = tower.zero();
    for (degree, component) in x.homogeneous_components()? {
        out = out.add(&component.coerce_into(tower)?.mul(&t.pow(degree)?)?)?;
    }
    Ok(out)
}

/// Entrywise homogenization of a matrix over R[X_1..X_t]; substituting
/// T = 1 recovers the input and T = 0 evaluates at the cone point.
pub fn swan_weibel_homogenize(m: &Matrix) -> Result<Matrix> {
    let tower = homogenization_tower(m.ring())?;
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for e in m.entries() {
        entries.push(homogenize_into(e, &tower)?);
    }
    Matrix::new(tower, m.rows(), m.cols(), entries)
}

/// Whether b is divisible by p, when that is decidable: Some(q) semantics
/// come from divide_exact, which is authoritative over the integers, the
/// rationals, fields Z/p and polynomials over integral domains with exact
/// division. None means the question was left open.
fn divisibility(b: &RingElement, p: &RingElement) -> Option<bool> {
    if p.is_zero() {
        return Some(b.is_zero());
    }
    if b.divide_exact(p).is_some() {
        return Some(true);
    }
    let authoritative = match b.descriptor() {
        RingDescriptor::Integers | RingDescriptor::Rationals => true,
        RingDescriptor::IntegersMod(_) => b.descriptor().is_integral_domain(),
        RingDescriptor::Polynomial(_) => b.descriptor().supports_exact_division(),
        RingDescriptor::Localized(_) => false,
    };
    if authoritative {
        Some(false)
    } else {
        None
    }
}

/// Verifies a dilation certificate: theta_star over R[X] agrees with
/// theta(b X) over the localization R_a[X], where b is declared to lie in
/// (a^d). Both words must be the identity at X = 0. The divisibility side
/// condition is recorded, or skipped where membership in (a^d) is not
/// decidable; the main equality is always checked exactly.
pub fn dilation_verify(
    theta_star: &GeneratorWord,
    theta: &GeneratorWord,
    a: &RingElement,
    b: &RingElement,
    d: u32,
) -> Result<Certificate> {
    if d == 0 {
        return Err(Error::Schema("dilation exponent d must be positive".into()));
    }
    let base = single_variable_base(theta_star.ring())?;
    let loc_poly = theta.ring().clone();
    let loc = single_variable_base(&loc_poly)?;
    let RingDescriptor::Localized(l) = &loc else {
        return Err(Error::InvalidDescriptor(format!(
            "theta must live over a localization, got {}",
            loc.render()
        )));
    };
    if l.base != base {
        return Err(Error::descriptor_mismatch(&l.base, &base, "dilation base"));
    }
    if a.descriptor() != &base || b.descriptor() != &base {
        return Err(Error::descriptor_mismatch(
            a.descriptor(),
            &base,
            "dilation data",
        ));
    }
    if l.denominator != *a {
        return Err(Error::InvalidDescriptor(format!(
            "theta is localized at {}, not at a = {}",
            l.denominator.render(),
            a.render()
        )));
    }
    if theta_star.size() != theta.size() {
        return Err(Error::DimensionMismatch(format!(
            "theta_star has size {}, theta has size {}",
            theta_star.size(),
            theta.size()
        )));
    }
    let star_zero = theta_star
        .substitute(&[theta_star.ring().zero()])?
        .evaluate()?;
    if !star_zero.is_identity() {
        return Err(Error::NotIdentityAtZero(
            "theta_star does not evaluate to the identity at X = 0".into(),
        ));
    }
    let theta_zero = theta.substitute(&[loc_poly.zero()])?.evaluate()?;
    if !theta_zero.is_identity() {
        return Err(Error::NotIdentityAtZero(
            "theta does not evaluate to the identity at X = 0".into(),
        ));
    }

    let mut builder = CertificateBuilder::new(ClaimKind::DilationLocalization);
    builder.input("theta_star", CertPayload::Word(theta_star.clone()));
    builder.input("theta", CertPayload::Word(theta.clone()));
    builder.input("a", CertPayload::Element(a.clone()));
    builder.input("b", CertPayload::Element(b.clone()));
    builder.input("d", CertPayload::Text(d.to_string()));
    builder.check_matrix_eq(
        "theta_star is the identity at zero",
        &star_zero,
        &Matrix::identity(theta_star.ring().clone(), theta_star.size()),
    );
    builder.check_matrix_eq(
        "theta is the identity at zero",
        &theta_zero,
        &Matrix::identity(loc_poly.clone(), theta.size()),
    );
    let a_pow = a.pow(u64::from(d))?;
    match divisibility(b, &a_pow) {
        Some(ok) => {
            builder.check_bool("b lies in the dilation ideal (a^d)", ok);
        }
        None => builder.skip(
            "b lies in the dilation ideal (a^d)",
            &format!("divisibility is not decidable over {}", base.render()),
        ),
    }
    let lhs = theta_star.coerce_into(&loc_poly)?.evaluate()?;
    let b_x = b.coerce_into(&loc_poly)?.mul(&variable_element(&loc_poly, 0))?;
    let rhs = theta.substitute(&[b_x])?.evaluate()?;
    builder.check_matrix_eq("theta_star equals theta at bX over R_a", &lhs, &rhs);
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::words::GeneratorAtom;
    use num_bigint::BigUint;

    fn z() -> RingDescriptor {
        RingDescriptor::integers()
    }

    fn zx() -> RingDescriptor {
        RingDescriptor::polynomial(z(), vec!["X".into()]).unwrap()
    }

    fn cover_z(elems: &[i64], coeffs: &[i64], d: u32) -> Result<CoverSpec> {
        let ring = z();
        CoverSpec::new(
            elems.iter().map(|&v| ring.from_i64(v)).collect(),
            coeffs.iter().map(|&v| ring.from_i64(v)).collect(),
            d,
        )
    }

    fn word_in_x(params: &[(usize, usize, &str)]) -> GeneratorWord {
        let ring = zx();
        let atoms = params
            .iter()
            .map(|&(i, j, text)| GeneratorAtom::elem(i, j, parse_element(text, &ring).unwrap()))
            .collect();
        GeneratorWord::new(ring, 3, atoms).unwrap()
    }

    #[test]
    fn cover_spec_enforces_the_unit_combination() {
        assert!(cover_z(&[2, 3], &[2, -1], 1).is_ok());
        assert!(cover_z(&[3, 5], &[2, -1], 1).is_ok());
        assert!(cover_z(&[2, 3], &[-2, 1], 2).is_ok());
        assert!(matches!(
            cover_z(&[2, 3], &[1, 1], 1),
            Err(Error::CoverInvalid(_))
        ));
        assert!(matches!(
            cover_z(&[2, 3], &[2], 1),
            Err(Error::CoverInvalid(_))
        ));
        assert!(matches!(cover_z(&[], &[], 1), Err(Error::CoverInvalid(_))));
        assert!(matches!(
            cover_z(&[2, 3], &[2, -1], 0),
            Err(Error::CoverInvalid(_))
        ));
    }

    #[test]
    fn patching_holds_for_words_vanishing_at_zero() {
        let theta = word_in_x(&[(1, 2, "2*X"), (2, 3, "5*X^2"), (3, 1, "X")]);
        for cover in [
            cover_z(&[2, 3], &[2, -1], 1).unwrap(),
            cover_z(&[3, 5], &[2, -1], 1).unwrap(),
            cover_z(&[2, 3], &[-2, 1], 2).unwrap(),
        ] {
            let cert = quillen_patch_verify(&theta, &cover).unwrap();
            assert!(cert.is_verified());
            assert!(cert.reverify().unwrap().is_verified());
        }
    }

    #[test]
    fn patching_rejects_words_not_identity_at_zero() {
        let theta = word_in_x(&[(1, 2, "1 + X")]);
        let cover = cover_z(&[2, 3], &[2, -1], 1).unwrap();
        assert!(matches!(
            quillen_patch_verify(&theta, &cover),
            Err(Error::NotIdentityAtZero(_))
        ));
        // Cover over the wrong base ring.
        let theta = word_in_x(&[(1, 2, "X")]);
        let qring = RingDescriptor::rationals();
        let half = qring.from_i64(2).is_unit().unwrap().unwrap();
        let bad = CoverSpec::new(vec![qring.from_i64(2)], vec![half], 1).unwrap();
        assert!(matches!(
            quillen_patch_verify(&theta, &bad),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn patching_renames_the_auxiliary_variable() {
        // The word's own variable is Y, so the plane ring must pick a fresh
        // second name.
        let ring = RingDescriptor::polynomial(z(), vec!["Y".into()]).unwrap();
        let theta = GeneratorWord::new(
            ring.clone(),
            3,
            vec![GeneratorAtom::elem(1, 3, parse_element("4*Y", &ring).unwrap())],
        )
        .unwrap();
        let cover = cover_z(&[2, 3], &[2, -1], 1).unwrap();
        assert!(quillen_patch_verify(&theta, &cover).unwrap().is_verified());
    }

    #[test]
    fn homogenization_round_trips_and_is_multiplicative() {
        let ring = RingDescriptor::polynomial(z(), vec!["X1".into(), "X2".into()]).unwrap();
        let e = |s: &str| parse_element(s, &ring).unwrap();
        let m = Matrix::new(
            ring.clone(),
            2,
            2,
            vec![
                e("1 + X1"),
                e("X1*X2 - 3"),
                e("X2^2 + X1"),
                e("7"),
            ],
        )
        .unwrap();
        let h = swan_weibel_homogenize(&m).unwrap();
        // T = 1 returns the input.
        assert_eq!(h.substitute(&[ring.one()]).unwrap(), m);
        // T = 0 keeps the constant parts.
        let at_zero = h.substitute(&[ring.zero()]).unwrap();
        assert_eq!(*at_zero.at(0, 0), e("1"));
        assert_eq!(*at_zero.at(0, 1), e("-3"));
        assert_eq!(*at_zero.at(1, 0), e("0"));
        // Homogenization is X_i -> X_i T, hence multiplicative.
        let other = Matrix::new(
            ring.clone(),
            2,
            2,
            vec![e("X2"), e("1"), e("2*X1 - X2"), e("X1^2")],
        )
        .unwrap();
        let lhs = swan_weibel_homogenize(&m.mul(&other).unwrap()).unwrap();
        let rhs = swan_weibel_homogenize(&m)
            .unwrap()
            .mul(&swan_weibel_homogenize(&other).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // Non-polynomial inputs and towers already using T are rejected.
        assert!(matches!(
            swan_weibel_homogenize(&Matrix::identity(z(), 2)),
            Err(Error::InvalidDescriptor(_))
        ));
        let tring = RingDescriptor::polynomial(z(), vec!["T".into()]).unwrap();
        assert!(matches!(
            swan_weibel_homogenize(&Matrix::identity(tring, 2)),
            Err(Error::InvalidDescriptor(_))
        ));
    }

    fn dilation_words(
        star_param: &str,
        loc_param: &str,
        a: i64,
    ) -> (GeneratorWord, GeneratorWord, RingElement) {
        let ring = z();
        let a = ring.from_i64(a);
        let star_ring = zx();
        let loc = RingDescriptor::localized(a.clone()).unwrap();
        let loc_ring = RingDescriptor::polynomial(loc, vec!["X".into()]).unwrap();
        let star = GeneratorWord::new(
            star_ring.clone(),
            2,
            vec![GeneratorAtom::elem(
                1,
                2,
                parse_element(star_param, &star_ring).unwrap(),
            )],
        )
        .unwrap();
        let theta = GeneratorWord::new(
            loc_ring.clone(),
            2,
            vec![GeneratorAtom::elem(
                1,
                2,
                parse_element(loc_param, &loc_ring).unwrap(),
            )],
        )
        .unwrap();
        (star, theta, a)
    }

    #[test]
    fn dilation_certificates_verify_and_refute() {
        let (star, theta, a) = dilation_words("2*X", "X", 2);
        let b = z().from_i64(2);
        let cert = dilation_verify(&star, &theta, &a, &b, 1).unwrap();
        assert!(cert.is_verified());
        assert!(cert.reverify().unwrap().is_verified());
        // Same words but the declared b is not a multiple of a^2.
        let cert = dilation_verify(&star, &theta, &a, &b, 2).unwrap();
        assert!(!cert.is_verified());
        // A wrong theta_star refutes the main equality.
        let (bad_star, theta, a) = dilation_words("3*X", "X", 2);
        let cert = dilation_verify(&bad_star, &theta, &a, &b, 1).unwrap();
        assert!(!cert.is_verified());
        // Not the identity at zero is a hard error.
        let (const_star, theta, a) = dilation_words("1 + 2*X", "X", 2);
        assert!(matches!(
            dilation_verify(&const_star, &theta, &a, &b, 1),
            Err(Error::NotIdentityAtZero(_))
        ));
    }

    #[test]
    fn dilation_divisibility_skips_where_undecidable() {
        let ring = RingDescriptor::integers_mod(BigUint::from(45u32)).unwrap();
        let a = ring.from_i64(3);
        let b = ring.from_i64(3);
        let star_ring = RingDescriptor::polynomial(ring.clone(), vec!["X".into()]).unwrap();
        let loc = RingDescriptor::localized(a.clone()).unwrap();
        let loc_ring = RingDescriptor::polynomial(loc, vec!["X".into()]).unwrap();
        let star = GeneratorWord::new(
            star_ring.clone(),
            2,
            vec![GeneratorAtom::elem(
                1,
                2,
                parse_element("3*X", &star_ring).unwrap(),
            )],
        )
        .unwrap();
        let theta = GeneratorWord::new(
            loc_ring.clone(),
            2,
            vec![GeneratorAtom::elem(
                1,
                2,
                parse_element("X", &loc_ring).unwrap(),
            )],
        )
        .unwrap();
        let cert = dilation_verify(&star, &theta, &a, &b, 1).unwrap();
        // The membership record is skipped, the main equality still passes.
        assert!(cert.is_verified());
        assert!(cert
            .transcript
            .iter()
            .any(|r| r.status == crate::certificate::CheckStatus::Skipped));
    }
}
