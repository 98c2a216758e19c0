//! JSON documents for every object the CLI exchanges: rings, elements,
//! matrices, forms, words, covers, ideals and certificates. Field order is
//! the declaration order of the document structs, so encoding is
//! deterministic; ring elements travel as strings in the exact text grammar.
//!
//! Decoding is the untrusted boundary: documents are size-capped, unknown
//! fields are rejected, and every numeric or structural guard of the domain
//! constructors applies.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::certificate::{
    CertPayload, Certificate, CheckRecord, CheckStatus, ClaimKind, Verdict,
};
use crate::form::{AlternatingForm, MAX_DIM};
use crate::localglobal::CoverSpec;
use crate::matrix::Matrix;
use crate::parse::parse_element;
use crate::ring::{RingDescriptor, RingElement};
use crate::words::{GeneratorAtom, GeneratorWord, IdealSpec, MAX_WORD_LEN};
use crate::{Error, Result};

/// Upper bound on any single JSON document fed to a decoder.
pub const MAX_INPUT_BYTES: usize = 64 * 1024;

/// Upper bound on the decimal digits of a modulus.
const MAX_MODULUS_DIGITS: usize = 96;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingDoc {
    Integers,
    Rationals,
    IntegersMod {
        modulus: String,
    },
    Polynomial {
        base: Box<RingDoc>,
        variables: Vec<String>,
    },
    Localized {
        base: Box<RingDoc>,
        denominator: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub ring: RingDoc,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub ring: RingDoc,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// An alternating form travels as its Gram matrix; the inverse and blocks
/// are recomputed on decode, so a document cannot smuggle a mismatched pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub ring: RingDoc,
    pub phi: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AtomDoc {
    Elem {
        i: usize,
        j: usize,
        value: String,
    },
    Se {
        i: usize,
        j: usize,
        value: String,
    },
    Row {
        v: Vec<String>,
    },
    Col {
        v: Vec<String>,
    },
    Alpha {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        form: Option<FormDoc>,
        v: Vec<String>,
    },
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        form: Option<FormDoc>,
        v: Vec<String>,
    },
    Conj {
        outer: Box<WordDoc>,
        inner: Box<AtomDoc>,
    },
    Inv {
        inner: Box<AtomDoc>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub ring: RingDoc,
    pub size: usize,
    pub atoms: Vec<AtomDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub ring: RingDoc,
    pub elements: Vec<String>,
    pub coefficients: Vec<String>,
    pub exponent: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub ring: RingDoc,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PayloadDoc {
    Matrix(MatrixDoc),
    Word(WordDoc),
    Element(ElementDoc),
    Form(FormDoc),
    Cover(CoverDoc),
    Ideal(IdealDoc),
    Text { value: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPayloadDoc {
    pub name: String,
    pub payload: PayloadDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub status: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub claim: String,
    pub inputs: Vec<NamedPayloadDoc>,
    pub witnesses: Vec<NamedPayloadDoc>,
    pub transcript: Vec<CheckDoc>,
    pub verdict: String,
}

// ---------------------------------------------------------------------------
// Encoding: domain -> document

pub fn ring_to_doc(ring: &RingDescriptor) -> RingDoc {
    match ring {
        RingDescriptor::Integers => RingDoc::Integers,
        RingDescriptor::Rationals => RingDoc::Rationals,
        RingDescriptor::IntegersMod(m) => RingDoc::IntegersMod {
            modulus: m.to_string(),
        },
        RingDescriptor::Polynomial(p) => RingDoc::Polynomial {
            base: Box::new(ring_to_doc(&p.base)),
            variables: p.variables.clone(),
        },
        RingDescriptor::Localized(l) => RingDoc::Localized {
            base: Box::new(ring_to_doc(&l.base)),
            denominator: l.denominator.render(),
        },
    }
}

pub fn element_to_doc(x: &RingElement) -> ElementDoc {
    ElementDoc {
        ring: ring_to_doc(x.descriptor()),
        value: x.render(),
    }
}

fn rows_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).render()).collect())
        .collect()
}

pub fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    MatrixDoc {
        ring: ring_to_doc(m.ring()),
        rows: m.rows(),
        cols: m.cols(),
        entries: rows_to_strings(m),
    }
}

pub fn form_to_doc(form: &AlternatingForm) -> FormDoc {
    FormDoc {
        ring: ring_to_doc(form.ring()),
        phi: rows_to_strings(form.phi()),
    }
}

fn atom_to_doc(atom: &GeneratorAtom) -> AtomDoc {
    let render_all = |v: &[RingElement]| v.iter().map(RingElement::render).collect();
    match atom {
        GeneratorAtom::Elem { i, j, value } => AtomDoc::Elem {
            i: *i,
            j: *j,
            value: value.render(),
        },
        GeneratorAtom::SymplElem { i, j, value } => AtomDoc::Se {
            i: *i,
            j: *j,
            value: value.render(),
        },
        GeneratorAtom::RowBlock { v } => AtomDoc::Row { v: render_all(v) },
        GeneratorAtom::ColBlock { v } => AtomDoc::Col { v: render_all(v) },
        GeneratorAtom::Alpha { form, v } => AtomDoc::Alpha {
            form: form.as_ref().map(|f| form_to_doc(f)),
            v: render_all(v),
        },
        GeneratorAtom::Beta { form, v } => AtomDoc::Beta {
            form: form.as_ref().map(|f| form_to_doc(f)),
            v: render_all(v),
        },
        GeneratorAtom::Conjugated { outer, inner } => AtomDoc::Conj {
            outer: Box::new(word_to_doc(outer)),
            inner: Box::new(atom_to_doc(inner)),
        },
        GeneratorAtom::Inverse(inner) => AtomDoc::Inv {
            inner: Box::new(atom_to_doc(inner)),
        },
    }
}

pub fn word_to_doc(w: &GeneratorWord) -> WordDoc {
    WordDoc {
        ring: ring_to_doc(w.ring()),
        size: w.size(),
        atoms: w.atoms().iter().map(atom_to_doc).collect(),
    }
}

pub fn cover_to_doc(cover: &CoverSpec) -> CoverDoc {
    CoverDoc {
        ring: ring_to_doc(cover.ring()),
        elements: cover.elements().iter().map(RingElement::render).collect(),
        coefficients: cover
            .coefficients()
            .iter()
            .map(RingElement::render)
            .collect(),
        exponent: cover.exponent(),
    }
}

pub fn ideal_to_doc(ideal: &IdealSpec) -> IdealDoc {
    IdealDoc {
        ring: ring_to_doc(ideal.ring()),
        generators: ideal.generators().iter().map(RingElement::render).collect(),
    }
}

fn payload_to_doc(payload: &CertPayload) -> PayloadDoc {
    match payload {
        CertPayload::Matrix(m) => PayloadDoc::Matrix(matrix_to_doc(m)),
        CertPayload::Word(w) => PayloadDoc::Word(word_to_doc(w)),
        CertPayload::Element(x) => PayloadDoc::Element(element_to_doc(x)),
        CertPayload::Form(f) => PayloadDoc::Form(form_to_doc(f)),
        CertPayload::Cover(c) => PayloadDoc::Cover(cover_to_doc(c)),
        CertPayload::Ideal(i) => PayloadDoc::Ideal(ideal_to_doc(i)),
        CertPayload::Text(t) => PayloadDoc::Text { value: t.clone() },
    }
}

fn named_to_doc(table: &[(String, CertPayload)]) -> Vec<NamedPayloadDoc> {
    table
        .iter()
        .map(|(name, payload)| NamedPayloadDoc {
            name: name.clone(),
            payload: payload_to_doc(payload),
        })
        .collect()
}

pub fn certificate_to_doc(cert: &Certificate) -> CertificateDoc {
    CertificateDoc {
        claim: cert.claim.label().to_string(),
        inputs: named_to_doc(&cert.inputs),
        witnesses: named_to_doc(&cert.witnesses),
        transcript: cert
            .transcript
            .iter()
            .map(|r| CheckDoc {
                label: r.label.clone(),
                lhs: r.lhs.clone(),
                rhs: r.rhs.clone(),
                status: r.status.label().to_string(),
            })
            .collect(),
        verdict: cert.verdict.label().to_string(),
    }
}

/// Serializes any document; `pretty` switches to indented output. Both
/// modes end with a newline and are byte-deterministic.
pub fn to_json<T: Serialize>(doc: &T, pretty: bool) -> Result<String> {
    let body = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .map_err(|e| Error::Schema(format!("serialization failed: {e}")))?;
    Ok(body + "\n")
}

// ---------------------------------------------------------------------------
// Decoding: document -> domain

/// Parses a JSON document with the size cap applied first.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::InputTooLarge(format!(
            "document has {} bytes, limit is {MAX_INPUT_BYTES}",
            text.len()
        )));
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

pub fn ring_from_doc(doc: &RingDoc) -> Result<RingDescriptor> {
    match doc {
        RingDoc::Integers => Ok(RingDescriptor::integers()),
        RingDoc::Rationals => Ok(RingDescriptor::rationals()),
        RingDoc::IntegersMod { modulus } => {
            if modulus.len() > MAX_MODULUS_DIGITS {
                return Err(Error::InputTooLarge(format!(
                    "modulus has {} digits, limit is {MAX_MODULUS_DIGITS}",
                    modulus.len()
                )));
            }
            let m = modulus
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("modulus {modulus:?} is not a natural number")))?;
            RingDescriptor::integers_mod(m)
        }
        RingDoc::Polynomial { base, variables } => {
            let base = ring_from_doc(base)?;
            RingDescriptor::polynomial(base, variables.clone())
        }
        RingDoc::Localized { base, denominator } => {
            let base = ring_from_doc(base)?;
            let den = parse_element(denominator, &base)?;
            RingDescriptor::localized(den)
        }
    }
}

pub fn element_from_doc(doc: &ElementDoc) -> Result<RingElement> {
    let ring = ring_from_doc(&doc.ring)?;
    parse_element(&doc.value, &ring)
}

fn entries_from_strings(
    ring: &RingDescriptor,
    rows: usize,
    cols: usize,
    entries: &[Vec<String>],
) -> Result<Vec<RingElement>> {
    if entries.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix document declares {rows} rows, entries have {}",
            entries.len()
        )));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for row in entries {
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix document declares {cols} columns, a row has {}",
                row.len()
            )));
        }
        for text in row {
            out.push(parse_element(text, ring)?);
        }
    }
    Ok(out)
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<Matrix> {
    if doc.rows > MAX_DIM || doc.cols > MAX_DIM {
        return Err(Error::InputTooLarge(format!(
            "matrix documents are capped at {MAX_DIM}x{MAX_DIM}, got {}x{}",
            doc.rows, doc.cols
        )));
    }
    let ring = ring_from_doc(&doc.ring)?;
    let entries = entries_from_strings(&ring, doc.rows, doc.cols, &doc.entries)?;
    Matrix::new(ring, doc.rows, doc.cols, entries)
}

pub fn form_from_doc(doc: &FormDoc) -> Result<AlternatingForm> {
    let n = doc.phi.len();
    if n > MAX_DIM {
        return Err(Error::InputTooLarge(format!(
            "form documents are capped at dimension {MAX_DIM}, got {n}"
        )));
    }
    let ring = ring_from_doc(&doc.ring)?;
    let entries = entries_from_strings(&ring, n, n, &doc.phi)?;
    AlternatingForm::decompose(Matrix::new(ring, n, n, entries)?)
}

fn atom_from_doc(ring: &RingDescriptor, doc: &AtomDoc) -> Result<GeneratorAtom> {
    let parse_all = |v: &[String]| -> Result<Vec<RingElement>> {
        v.iter().map(|text| parse_element(text, ring)).collect()
    };
    Ok(match doc {
        AtomDoc::Elem { i, j, value } => {
            GeneratorAtom::elem(*i, *j, parse_element(value, ring)?)
        }
        AtomDoc::Se { i, j, value } => {
            GeneratorAtom::sympl(*i, *j, parse_element(value, ring)?)
        }
        AtomDoc::Row { v } => GeneratorAtom::RowBlock { v: parse_all(v)? },
        AtomDoc::Col { v } => GeneratorAtom::ColBlock { v: parse_all(v)? },
        AtomDoc::Alpha { form, v } => GeneratorAtom::Alpha {
            form: form.as_ref().map(form_from_doc).transpose()?.map(Arc::new),
            v: parse_all(v)?,
        },
        AtomDoc::Beta { form, v } => GeneratorAtom::Beta {
            form: form.as_ref().map(form_from_doc).transpose()?.map(Arc::new),
            v: parse_all(v)?,
        },
        AtomDoc::Conj { outer, inner } => GeneratorAtom::Conjugated {
            outer: word_from_doc(outer)?,
            inner: Box::new(atom_from_doc(ring, inner)?),
        },
        AtomDoc::Inv { inner } => {
            GeneratorAtom::Inverse(Box::new(atom_from_doc(ring, inner)?))
        }
    })
}

pub fn word_from_doc(doc: &WordDoc) -> Result<GeneratorWord> {
    if doc.atoms.len() > MAX_WORD_LEN {
        return Err(Error::InputTooLarge(format!(
            "word documents are capped at {MAX_WORD_LEN} atoms, got {}",
            doc.atoms.len()
        )));
    }
    let ring = ring_from_doc(&doc.ring)?;
    let atoms = doc
        .atoms
        .iter()
        .map(|a| atom_from_doc(&ring, a))
        .collect::<Result<Vec<_>>>()?;
    GeneratorWord::new(ring, doc.size, atoms)
}

pub fn cover_from_doc(doc: &CoverDoc) -> Result<CoverSpec> {
    let ring = ring_from_doc(&doc.ring)?;
    let parse_all = |v: &[String]| -> Result<Vec<RingElement>> {
        v.iter().map(|text| parse_element(text, &ring)).collect()
    };
    CoverSpec::new(
        parse_all(&doc.elements)?,
        parse_all(&doc.coefficients)?,
        doc.exponent,
    )
}

pub fn ideal_from_doc(doc: &IdealDoc) -> Result<IdealSpec> {
    let ring = ring_from_doc(&doc.ring)?;
    let generators = doc
        .generators
        .iter()
        .map(|text| parse_element(text, &ring))
        .collect::<Result<Vec<_>>>()?;
    IdealSpec::new(ring, generators)
}

fn payload_from_doc(doc: &PayloadDoc) -> Result<CertPayload> {
    Ok(match doc {
        PayloadDoc::Matrix(m) => CertPayload::Matrix(matrix_from_doc(m)?),
        PayloadDoc::Word(w) => CertPayload::Word(word_from_doc(w)?),
        PayloadDoc::Element(x) => CertPayload::Element(element_from_doc(x)?),
        PayloadDoc::Form(f) => CertPayload::Form(form_from_doc(f)?),
        PayloadDoc::Cover(c) => CertPayload::Cover(cover_from_doc(c)?),
        PayloadDoc::Ideal(i) => CertPayload::Ideal(ideal_from_doc(i)?),
        PayloadDoc::Text { value } => CertPayload::Text(value.clone()),
    })
}

fn named_from_doc(docs: &[NamedPayloadDoc]) -> Result<Vec<(String, CertPayload)>> {
    docs.iter()
        .map(|d| Ok((d.name.clone(), payload_from_doc(&d.payload)?)))
        .collect()
}

fn status_from_label(label: &str) -> Result<CheckStatus> {
    Ok(match label {
        "pass" => CheckStatus::Pass,
        "fail" => CheckStatus::Fail,
        "skipped" => CheckStatus::Skipped,
        other => return Err(Error::Schema(format!("unknown check status {other:?}"))),
    })
}

fn verdict_from_label(label: &str) -> Result<Verdict> {
    Ok(match label {
        "verified" => Verdict::Verified,
        "refuted" => Verdict::Refuted,
        other => return Err(Error::Schema(format!("unknown verdict {other:?}"))),
    })
}

pub fn certificate_from_doc(doc: &CertificateDoc) -> Result<Certificate> {
    Ok(Certificate {
        claim: ClaimKind::from_label(&doc.claim)?,
        inputs: named_from_doc(&doc.inputs)?,
        witnesses: named_from_doc(&doc.witnesses)?,
        transcript: doc
            .transcript
            .iter()
            .map(|c| {
                Ok(CheckRecord {
                    label: c.label.clone(),
                    lhs: c.lhs.clone(),
                    rhs: c.rhs.clone(),
                    status: status_from_label(&c.status)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        verdict: verdict_from_label(&doc.verdict)?,
    })
}

// ---------------------------------------------------------------------------
// Text-level helpers used by the CLI and the fuzz targets.

pub fn decode_matrix(text: &str) -> Result<Matrix> {
    matrix_from_doc(&from_json(text)?)
}

pub fn decode_word(text: &str) -> Result<GeneratorWord> {
    word_from_doc(&from_json(text)?)
}

pub fn decode_form(text: &str) -> Result<AlternatingForm> {
    form_from_doc(&from_json(text)?)
}

pub fn decode_cover(text: &str) -> Result<CoverSpec> {
    cover_from_doc(&from_json(text)?)
}

pub fn decode_ideal(text: &str) -> Result<IdealSpec> {
    ideal_from_doc(&from_json(text)?)
}

pub fn decode_certificate(text: &str) -> Result<Certificate> {
    certificate_from_doc(&from_json(text)?)
}

pub fn decode_element(text: &str) -> Result<RingElement> {
    element_from_doc(&from_json(text)?)
}

pub fn encode_certificate(cert: &Certificate, pretty: bool) -> Result<String> {
    to_json(&certificate_to_doc(cert), pretty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::CertificateBuilder;
    use crate::vaserstein;
    use crate::words::se_generator;

    fn zmod(m: u64) -> RingDescriptor {
        RingDescriptor::integers_mod(BigUint::from(m)).unwrap()
    }

    fn tower() -> RingDescriptor {
        let zx = RingDescriptor::polynomial(
            RingDescriptor::integers(),
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        zx
    }

    #[test]
    fn ring_documents_round_trip() {
        let loc_base = zmod(45);
        let rings = [
            RingDescriptor::integers(),
            RingDescriptor::rationals(),
            zmod(7),
            tower(),
            RingDescriptor::polynomial(RingDescriptor::rationals(), vec!["T".into()]).unwrap(),
            RingDescriptor::localized(loc_base.from_i64(3)).unwrap(),
            RingDescriptor::polynomial(
                RingDescriptor::localized(RingDescriptor::integers().from_i64(2)).unwrap(),
                vec!["X".into()],
            )
            .unwrap(),
        ];
        for ring in rings {
            let doc = ring_to_doc(&ring);
            let text = to_json(&doc, false).unwrap();
            let back: RingDoc = from_json(&text).unwrap();
            assert_eq!(ring_from_doc(&back).unwrap(), ring, "{text}");
        }
    }

    #[test]
    fn matrix_and_form_documents_round_trip() {
        let ring = tower();
        let e = |s: &str| parse_element(s, &ring).unwrap();
        let m = Matrix::new(
            ring.clone(),
            2,
            3,
            vec![e("1 + x*y"), e("-3"), e("y^2"), e("0"), e("x"), e("7*x - y")],
        )
        .unwrap();
        let text = to_json(&matrix_to_doc(&m), true).unwrap();
        assert_eq!(decode_matrix(&text).unwrap(), m);

        let psi = AlternatingForm::psi(&RingDescriptor::rationals(), 3).unwrap();
        let text = to_json(&form_to_doc(&psi), false).unwrap();
        let back = decode_form(&text).unwrap();
        assert_eq!(back.phi(), psi.phi());
        assert_eq!(back.pfaffian(), psi.pfaffian());
    }

    #[test]
    fn word_documents_round_trip_including_nested_atoms() {
        let ring = zmod(7);
        let psi = AlternatingForm::psi(&ring, 2).unwrap();
        let inner = GeneratorAtom::alpha(
            Some(Arc::new(psi)),
            vec![ring.from_i64(1), ring.from_i64(2), ring.from_i64(3)],
        );
        let outer = GeneratorWord::new(
            ring.clone(),
            3,
            vec![GeneratorAtom::elem(1, 2, ring.from_i64(4))],
        )
        .unwrap();
        let w = GeneratorWord::new(
            ring.clone(),
            3,
            vec![
                GeneratorAtom::Conjugated {
                    outer,
                    inner: Box::new(inner),
                },
                GeneratorAtom::Inverse(Box::new(GeneratorAtom::elem(2, 3, ring.from_i64(5)))),
                GeneratorAtom::RowBlock {
                    v: vec![ring.from_i64(1), ring.from_i64(0)],
                },
            ],
        )
        .unwrap();
        let text = to_json(&word_to_doc(&w), true).unwrap();
        let back = decode_word(&text).unwrap();
        assert_eq!(back.evaluate().unwrap(), w.evaluate().unwrap());
        assert_eq!(word_to_doc(&back).atoms.len(), 3);
    }

    #[test]
    fn certificate_documents_round_trip_and_reverify() {
        let ring = RingDescriptor::integers();
        let psi = AlternatingForm::psi(&ring, 2).unwrap();
        let m = se_generator(&ring, 2, 2, 1, &ring.from_i64(5)).unwrap();
        let cert = vaserstein::sp_membership_certificate(&psi, &m).unwrap();
        let text = encode_certificate(&cert, false).unwrap();
        let back = decode_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert!(back.reverify().unwrap().is_verified());
        // Deterministic bytes.
        assert_eq!(encode_certificate(&back, false).unwrap(), text);
    }

    #[test]
    fn decoding_rejects_oversized_and_malformed_documents() {
        let big = " ".repeat(MAX_INPUT_BYTES + 1);
        assert!(matches!(
            decode_matrix(&big),
            Err(Error::InputTooLarge(_))
        ));
        assert!(matches!(decode_matrix("not json"), Err(Error::Parse(_))));
        // Unknown fields are rejected.
        let sneaky = r#"{"ring": {"kind": "integers"}, "rows": 1, "cols": 1, "entries": [["1"]], "extra": 1}"#;
        assert!(matches!(decode_matrix(sneaky), Err(Error::Parse(_))));
        // Oversized declared shape.
        let doc = MatrixDoc {
            ring: RingDoc::Integers,
            rows: 17,
            cols: 1,
            entries: vec![],
        };
        assert!(matches!(
            matrix_from_doc(&doc),
            Err(Error::InputTooLarge(_))
        ));
        // Word length cap.
        let word = WordDoc {
            ring: RingDoc::Integers,
            size: 2,
            atoms: vec![
                AtomDoc::Elem {
                    i: 1,
                    j: 2,
                    value: "1".into()
                };
                MAX_WORD_LEN + 1
            ],
        };
        assert!(matches!(
            word_from_doc(&word),
            Err(Error::InputTooLarge(_))
        ));
        // Bad modulus strings.
        let bad = RingDoc::IntegersMod {
            modulus: "12a".into(),
        };
        assert!(matches!(ring_from_doc(&bad), Err(Error::Parse(_))));
        let huge = RingDoc::IntegersMod {
            modulus: "9".repeat(MAX_MODULUS_DIGITS + 1),
        };
        assert!(matches!(
            ring_from_doc(&huge),
            Err(Error::InputTooLarge(_))
        ));
    }

    #[test]
    fn unknown_labels_are_schema_errors() {
        let cert_doc = CertificateDoc {
            claim: "unheard-of".into(),
            inputs: vec![],
            witnesses: vec![],
            transcript: vec![],
            verdict: "verified".into(),
        };
        assert!(matches!(
            certificate_from_doc(&cert_doc),
            Err(Error::Schema(_))
        ));
        let cert = CertificateBuilder::new(ClaimKind::SymplecticMembership).finish();
        let mut doc = certificate_to_doc(&cert);
        doc.verdict = "maybe".into();
        assert!(matches!(certificate_from_doc(&doc), Err(Error::Schema(_))));
    }
}
