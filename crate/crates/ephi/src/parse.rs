//! Text grammar for ring elements.
//!
//! One expression grammar serves every ring: sums, differences, products,
//! powers, parentheses, integer literals, and the variables of the ring
//! tower. Division is ring aware: inside a tower that contains a
//! localization the divisor must be a literal power of the distinguished
//! symbol `a`; elsewhere the divisor must be a unit or an exact factor.
//! Rendered output always reparses to an equal element.

use crate::ring::{PolyMap, RingDescriptor, RingElement};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

const MAX_INPUT_LEN: usize = 1 << 16;
const MAX_INT_DIGITS: usize = 4096;
const MAX_EXPONENT: u64 = 1_000_000;
const MAX_NONCONSTANT_EXPONENT: u64 = 4096;
const MAX_DEPTH: u32 = 64;

pub fn parse_element(text: &str, ring: &RingDescriptor) -> Result<RingElement> {
    if text.len() > MAX_INPUT_LEN {
        return Err(Error::InputTooLarge(format!(
            "element text is {} bytes, limit {}",
            text.len(),
            MAX_INPUT_LEN
        )));
    }
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        ring: ring.clone(),
        bindings: bindings_of(ring)?,
        localized: find_localized(ring),
        depth: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        let (at, _) = parser.tokens[parser.pos];
        return Err(Error::Parse(format!("unexpected trailing input at byte {at}")));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i - start > MAX_INT_DIGITS {
                    return Err(Error::Parse(format!(
                        "integer literal at byte {start} exceeds {MAX_INT_DIGITS} digits"
                    )));
                }
                out.push((start, Token::Int(text[start..i].to_string())));
                continue;
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at byte {i}",
                    text[i..].chars().next().unwrap_or('?')
                )))
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// The localized ring inside a tower, if any. Towers contain at most one
/// localization (nesting is rejected at construction).
fn find_localized(ring: &RingDescriptor) -> Option<RingDescriptor> {
    match ring {
        RingDescriptor::Localized(_) => Some(ring.clone()),
        RingDescriptor::Polynomial(p) => find_localized(&p.base),
        _ => None,
    }
}

/// Name bindings visible in `ring`: its own polynomial variables as
/// monomials, inherited tower variables embedded as constants, and inside a
/// localization the symbol `a` bound to the denominator image.
fn bindings_of(ring: &RingDescriptor) -> Result<Vec<(String, RingElement)>> {
    let mut out: Vec<(String, RingElement)> = Vec::new();
    match ring {
        RingDescriptor::Polynomial(p) => {
            for (i, name) in p.variables.iter().enumerate() {
                let mut map = PolyMap::new();
                let mut exps = vec![0u32; p.variables.len()];
                exps[i] = 1;
                map.insert(exps, p.base.one());
                out.push((
                    name.clone(),
                    RingElement::from_poly_map(ring.clone(), map),
                ));
            }
            for (name, elem) in bindings_of(&p.base)? {
                if out.iter().all(|(n, _)| n != &name) {
                    out.push((name, elem.coerce_into(ring)?));
                }
            }
        }
        RingDescriptor::Localized(l) => {
            out.push((
                "a".to_string(),
                RingElement::from_localized_parts(ring.clone(), l.denominator.clone(), 0)?,
            ));
            for (name, elem) in bindings_of(&l.base)? {
                if out.iter().all(|(n, _)| n != &name) {
                    out.push((name, elem.coerce_into(ring)?));
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    ring: RingDescriptor,
    bindings: Vec<(String, RingElement)>,
    localized: Option<RingDescriptor>,
    depth: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| {
                self.tokens.last().map(|(p, _)| p + 1).unwrap_or(0)
            })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = self.divide(acc)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&mut self, lhs: RingElement) -> Result<RingElement> {
        if let Some(loc) = self.localized.clone() {
            // Divisor must be a literal power of the denominator symbol.
            let at = self.at();
            match self.bump() {
                Some(Token::Ident(name)) if name == "a" => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "divisor at byte {at} must be a power of a in a localized ring"
                    )))
                }
            }
            let k = if matches!(self.peek(), Some(Token::Caret)) {
                self.bump();
                self.exponent_literal()?
            } else {
                1
            };
            let RingDescriptor::Localized(l) = &loc else {
                unreachable!("find_localized returns localizations");
            };
            let scale = RingElement::from_localized_parts(
                loc.clone(),
                l.base.one(),
                u32::try_from(k).map_err(|_| Error::ExponentOverflow)?,
            )?
            .coerce_into(&self.ring)?;
            return lhs.mul(&scale);
        }
        let at = self.at();
        let rhs = self.factor()?;
        match rhs.is_unit() {
            Ok(Some(inv)) => lhs.mul(&inv),
            _ => lhs.divide_exact(&rhs).ok_or_else(|| {
                Error::Parse(format!(
                    "divisor at byte {at} is neither a unit nor an exact factor"
                ))
            }),
        }
    }

    fn factor(&mut self) -> Result<RingElement> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let k = self.exponent_literal()?;
            if k > MAX_NONCONSTANT_EXPONENT && !is_constantish(&base) {
                return Err(Error::Parse(format!(
                    "exponent {k} is too large for a non-constant base"
                )));
            }
            return base.pow(k);
        }
        Ok(base)
    }

    fn exponent_literal(&mut self) -> Result<u64> {
        let at = self.at();
        match self.bump() {
            Some(Token::Int(digits)) => {
                let k: u64 = digits.parse().map_err(|_| {
                    Error::Parse(format!("exponent at byte {at} is out of range"))
                })?;
                if k > MAX_EXPONENT {
                    return Err(Error::Parse(format!(
                        "exponent at byte {at} exceeds the limit {MAX_EXPONENT}"
                    )));
                }
                Ok(k)
            }
            _ => Err(Error::Parse(format!(
                "expected an unsigned exponent at byte {at}"
            ))),
        }
    }

    fn primary(&mut self) -> Result<RingElement> {
        let at = self.at();
        match self.bump() {
            Some(Token::Int(digits)) => {
                let n = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| {
                    Error::Parse(format!("invalid integer literal at byte {at}"))
                })?;
                Ok(self.ring.from_integer(n))
            }
            Some(Token::Ident(name)) => self
                .bindings
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, e)| e.clone())
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown symbol {name:?} in ring {} at byte {at}",
                        self.ring.render()
                    ))
                }),
            Some(Token::LParen) => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(Error::Parse(format!(
                        "parentheses nest deeper than {MAX_DEPTH}"
                    )));
                }
                let inner = self.expr()?;
                self.depth -= 1;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse(format!(
                        "unbalanced parenthesis opened at byte {at}"
                    ))),
                }
            }
            Some(tok) => Err(Error::Parse(format!(
                "unexpected token {tok:?} at byte {at}"
            ))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// True for elements whose powers cannot blow up in size: everything except
/// polynomials with a variable-carrying term.
fn is_constantish(e: &RingElement) -> bool {
    if let Some(map) = e.poly_terms() {
        return map.keys().all(|exps| exps.iter().all(|&x| x == 0));
    }
    if let Some((num, _)) = e.localized_parts() {
        return is_constantish(num);
    }
    true
}

pub fn render_element(e: &RingElement) -> String {
    match e.descriptor() {
        RingDescriptor::Integers => e.int_value().expect("integer payload").to_string(),
        RingDescriptor::Rationals => {
            let r = e.rat_value().expect("rational payload");
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        RingDescriptor::IntegersMod(_) => {
            e.mod_value().expect("residue payload").to_string()
        }
        RingDescriptor::Polynomial(p) => {
            let map = e.poly_terms().expect("polynomial payload");
            if map.is_empty() {
                return "0".to_string();
            }
            let mut pieces = Vec::with_capacity(map.len());
            for (exps, coeff) in map.iter().rev() {
                let mono: Vec<String> = p
                    .variables
                    .iter()
                    .zip(exps.iter())
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                let mono = mono.join("*");
                let piece = if mono.is_empty() {
                    render_element(coeff)
                } else if coeff.is_one() {
                    mono
                } else {
                    format!("{}*{mono}", atom_text(&render_element(coeff)))
                };
                pieces.push(piece);
            }
            join_sum(&pieces)
        }
        RingDescriptor::Localized(_) => {
            let (num, exp) = e.localized_parts().expect("localized payload");
            format!("{}/a^{exp}", atom_text(&render_element(num)))
        }
    }
}

/// Wraps a rendered subterm in parentheses when it would not bind as a
/// single factor. A leading minus on an otherwise plain token is fine.
fn atom_text(s: &str) -> String {
    let needs = s
        .char_indices()
        .any(|(i, c)| matches!(c, '+' | '*' | '/' | '^' | '(' | ' ') || (c == '-' && i > 0));
    if needs {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn join_sum(pieces: &[String]) -> String {
    let mut out = String::new();
    for (i, piece) in pieces.iter().enumerate() {
        if i == 0 {
            out.push_str(piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn z() -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn roundtrip(text: &str, ring: &RingDescriptor) -> RingElement {
        let e = parse_element(text, ring).unwrap();
        let back = parse_element(&render_element(&e), ring).unwrap();
        assert_eq!(e, back, "round trip through {:?}", render_element(&e));
        e
    }

    #[test]
    fn integers_and_rationals() {
        assert_eq!(roundtrip("-12", &z()), z().from_i64(-12));
        assert_eq!(roundtrip("2*(3+4)", &z()), z().from_i64(14));
        let q = RingDescriptor::Rationals;
        let half = roundtrip("1/2", &q);
        assert_eq!(half.add(&half).unwrap(), q.one());
        assert_eq!(roundtrip("-3/6", &q), parse_element("-1/2", &q).unwrap());
    }

    #[test]
    fn modular_literals() {
        let z7 = RingDescriptor::integers_mod(BigUint::from(7u32)).unwrap();
        assert_eq!(roundtrip("12", &z7), z7.from_i64(5));
        // Unit division works in Z/7.
        assert_eq!(parse_element("1/3", &z7).unwrap(), z7.from_i64(5));
    }

    #[test]
    fn polynomial_expressions() {
        let ring = RingDescriptor::polynomial(z(), vec!["x".into(), "y".into()]).unwrap();
        let p = roundtrip("(x + y)^2 - x^2 - y^2", &ring);
        assert_eq!(p, parse_element("2*x*y", &ring).unwrap());
        assert_eq!(render_element(&p), "2*x*y");
        let with_const = roundtrip("x^2 - 3*x + 1", &ring);
        assert_eq!(render_element(&with_const), "x^2 - 3*x + 1");
    }

    #[test]
    fn nested_polynomial_tower() {
        let zx = RingDescriptor::polynomial(z(), vec!["x".into()]).unwrap();
        let zxt = RingDescriptor::polynomial(zx, vec!["T".into()]).unwrap();
        let p = roundtrip("(x+1)*T^2 + x*T - 3", &zxt);
        let rendered = render_element(&p);
        assert_eq!(rendered, "(x + 1)*T^2 + x*T - 3");
    }

    #[test]
    fn localized_elements() {
        let ra = RingDescriptor::localized(z().from_i64(2)).unwrap();
        let x = roundtrip("3/a^2", &ra);
        let (num, exp) = x.localized_parts().unwrap();
        assert_eq!(num, &z().from_i64(3));
        assert_eq!(exp, 2);
        // Reduction happens on parse: 6/a = 3/a^0.
        let y = roundtrip("6/a", &ra);
        assert_eq!(render_element(&y), "3/a^0");
        // The symbol a itself.
        let a = roundtrip("a", &ra);
        assert_eq!(render_element(&a), "2/a^0");
        // Sums mix fine.
        let s = roundtrip("3/a^2 + 1/a", &ra);
        let (num, exp) = s.localized_parts().unwrap();
        assert_eq!(num, &z().from_i64(5));
        assert_eq!(exp, 2);
    }

    #[test]
    fn polynomial_over_localized() {
        let ra = RingDescriptor::localized(z().from_i64(2)).unwrap();
        let ring = RingDescriptor::polynomial(ra, vec!["X".into()]).unwrap();
        let p = roundtrip("3/a^2*X + 6/a", &ring);
        let rendered = render_element(&p);
        assert_eq!(rendered, "(3/a^2)*X + 3/a^0");
    }

    #[test]
    fn localized_over_zero_divisors() {
        let z12 = RingDescriptor::integers_mod(BigUint::from(12u32)).unwrap();
        let ra = RingDescriptor::localized(z12.from_i64(2)).unwrap();
        // 6/a^0 is semantically zero: 2^k * 6 = 0 mod 12 for k >= 1.
        let x = parse_element("6", &ra).unwrap();
        assert!(x.is_zero());
        assert_eq!(render_element(&x), "0/a^0");
        let y = roundtrip("7/a^3", &ra);
        assert!(!y.is_zero());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_element("2 +", &z()).is_err());
        assert!(parse_element("(2", &z()).is_err());
        assert!(parse_element("x", &z()).is_err());
        assert!(parse_element("2 ** 3", &z()).is_err());
        assert!(parse_element("1/2", &z()).is_err());
        assert!(parse_element("2^x", &z()).is_err());
        let ring = RingDescriptor::polynomial(z(), vec!["x".into()]).unwrap();
        assert!(parse_element("x^9999999", &ring).is_err());
        assert!(parse_element("y + 1", &ring).is_err());
        let ra = RingDescriptor::localized(z().from_i64(2)).unwrap();
        assert!(parse_element("3/b", &ra).is_err());
        assert!(parse_element("3/(a+1)", &ra).is_err());
    }

    #[test]
    fn division_by_exact_factor_over_integers() {
        assert_eq!(parse_element("6/2", &z()).unwrap(), z().from_i64(3));
        assert!(parse_element("7/2", &z()).is_err());
    }
}
