//! Certificates: machine-checkable records of a claim, the objects it is
//! about, witness data, and a transcript of the exact equalities that were
//! checked. A certificate is Verified only if every recorded check passed;
//! skipped checks are recorded but do not affect the verdict.

use crate::form::AlternatingForm;
use crate::localglobal::CoverSpec;
use crate::matrix::Matrix;
use crate::ring::RingElement;
use crate::words::{GeneratorWord, IdealSpec};
use crate::{Error, Result};

/// What a certificate claims. Each kind stores inputs and witnesses under
/// fixed names documented at its producer; `reverify` relies on those names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    SymplecticMembership,
    Symplectization,
    FormReduction,
    ExpressionInEphi,
    PatchingIdentity,
    DilationLocalization,
    RelativeWord,
}

impl ClaimKind {
    pub fn label(&self) -> &'static str {
        match self {
            ClaimKind::SymplecticMembership => "symplectic-membership",
            ClaimKind::Symplectization => "symplectization",
            ClaimKind::FormReduction => "form-reduction",
            ClaimKind::ExpressionInEphi => "expression-in-ephi",
            ClaimKind::PatchingIdentity => "patching-identity",
            ClaimKind::DilationLocalization => "dilation-localization",
            ClaimKind::RelativeWord => "relative-word",
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(match label {
            "symplectic-membership" => ClaimKind::SymplecticMembership,
            "symplectization" => ClaimKind::Symplectization,
            "form-reduction" => ClaimKind::FormReduction,
            "expression-in-ephi" => ClaimKind::ExpressionInEphi,
            "patching-identity" => ClaimKind::PatchingIdentity,
            "dilation-localization" => ClaimKind::DilationLocalization,
            "relative-word" => ClaimKind::RelativeWord,
            other => return Err(Error::Schema(format!("unknown claim kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Recorded but not decidable in the ambient ring; does not refute.
    Skipped,
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One checked equality with both sides rendered exactly as compared.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub status: CheckStatus,
}

/// A named object attached to a certificate as input or witness.
#[derive(Debug, Clone, PartialEq)]
pub enum CertPayload {
    Matrix(Matrix),
    Word(GeneratorWord),
    Element(RingElement),
    Form(AlternatingForm),
    Cover(CoverSpec),
    Ideal(IdealSpec),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub claim: ClaimKind,
    pub inputs: Vec<(String, CertPayload)>,
    pub witnesses: Vec<(String, CertPayload)>,
    pub transcript: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    fn lookup<'a>(
        table: &'a [(String, CertPayload)],
        name: &str,
        side: &str,
    ) -> Result<&'a CertPayload> {
        table
            .iter()
            .find(|(key, _)| key == name)
            .map(|(_, payload)| payload)
            .ok_or_else(|| Error::Schema(format!("certificate is missing {side} {name:?}")))
    }

    pub fn input(&self, name: &str) -> Result<&CertPayload> {
        Self::lookup(&self.inputs, name, "input")
    }

    pub fn witness(&self, name: &str) -> Result<&CertPayload> {
        Self::lookup(&self.witnesses, name, "witness")
    }

    pub fn input_word(&self, name: &str) -> Result<&GeneratorWord> {
        match self.input(name)? {
            CertPayload::Word(w) => Ok(w),
            _ => Err(Error::Schema(format!("input {name:?} is not a word"))),
        }
    }

    pub fn input_matrix(&self, name: &str) -> Result<&Matrix> {
        match self.input(name)? {
            CertPayload::Matrix(m) => Ok(m),
            _ => Err(Error::Schema(format!("input {name:?} is not a matrix"))),
        }
    }

    pub fn input_form(&self, name: &str) -> Result<&AlternatingForm> {
        match self.input(name)? {
            CertPayload::Form(f) => Ok(f),
            _ => Err(Error::Schema(format!("input {name:?} is not a form"))),
        }
    }

    pub fn input_element(&self, name: &str) -> Result<&RingElement> {
        match self.input(name)? {
            CertPayload::Element(x) => Ok(x),
            _ => Err(Error::Schema(format!("input {name:?} is not a ring element"))),
        }
    }

    pub fn input_cover(&self, name: &str) -> Result<&CoverSpec> {
        match self.input(name)? {
            CertPayload::Cover(c) => Ok(c),
            _ => Err(Error::Schema(format!("input {name:?} is not a cover"))),
        }
    }

    pub fn input_ideal(&self, name: &str) -> Result<&IdealSpec> {
        match self.input(name)? {
            CertPayload::Ideal(i) => Ok(i),
            _ => Err(Error::Schema(format!("input {name:?} is not an ideal"))),
        }
    }

    pub fn input_text(&self, name: &str) -> Result<&str> {
        match self.input(name)? {
            CertPayload::Text(t) => Ok(t),
            _ => Err(Error::Schema(format!("input {name:?} is not text"))),
        }
    }

    pub fn witness_word(&self, name: &str) -> Result<&GeneratorWord> {
        match self.witness(name)? {
            CertPayload::Word(w) => Ok(w),
            _ => Err(Error::Schema(format!("witness {name:?} is not a word"))),
        }
    }

    pub fn witness_matrix(&self, name: &str) -> Result<&Matrix> {
        match self.witness(name)? {
            CertPayload::Matrix(m) => Ok(m),
            _ => Err(Error::Schema(format!("witness {name:?} is not a matrix"))),
        }
    }

    pub fn witness_element(&self, name: &str) -> Result<&RingElement> {
        match self.witness(name)? {
            CertPayload::Element(x) => Ok(x),
            _ => Err(Error::Schema(format!("witness {name:?} is not a ring element"))),
        }
    }

    /// Re-derives the verdict from the certificate's own inputs and
    /// witnesses by re-running the checks for its claim kind. The transcript
    /// strings are not trusted; everything is recomputed.
    pub fn reverify(&self) -> Result<Certificate> {
        match self.claim {
            ClaimKind::SymplecticMembership => {
                let form = self.input_form("form")?;
                let matrix = self.input_matrix("matrix")?;
                crate::vaserstein::sp_membership_certificate(form, matrix)
            }
            ClaimKind::Symplectization => {
                let w = self.input_word("w")?;
                let rho = self.witness_word("rho")?;
                let esp = self.witness_word("esp_witness")?;
                crate::vaserstein::check_symplectization(w, rho, esp)
            }
            ClaimKind::FormReduction => {
                let phi = self.input_matrix("phi")?;
                let epsilon = self.witness_word("epsilon")?;
                let reduced = self.witness_matrix("reduced")?;
                let residual = self.witness_element("residual_unit")?;
                crate::vaserstein::check_form_reduction(phi, epsilon, reduced, residual)
            }
            ClaimKind::ExpressionInEphi => {
                let target = self.input_word("target")?;
                let phi = self.input_form("phi")?;
                let expression = self.witness_word("expression")?;
                crate::vaserstein::check_expression(target, phi, expression)
            }
            ClaimKind::PatchingIdentity => {
                let theta = self.input_word("theta")?;
                let cover = self.input_cover("cover")?;
                crate::localglobal::quillen_patch_verify(theta, cover)
            }
            ClaimKind::DilationLocalization => {
                let theta_star = self.input_word("theta_star")?;
                let theta = self.input_word("theta")?;
                let a = self.input_element("a")?;
                let b = self.input_element("b")?;
                let d: u32 = self
                    .input_text("d")?
                    .parse()
                    .map_err(|_| Error::Schema("dilation exponent d is not a u32".into()))?;
                crate::localglobal::dilation_verify(theta_star, theta, a, b, d)
            }
            ClaimKind::RelativeWord => {
                let w = self.input_word("w")?;
                let ideal = self.input_ideal("ideal")?;
                crate::vaserstein::relative_word_certificate(w, ideal)
            }
        }
    }
}

/// Accumulates checks and decides the verdict: Verified iff nothing failed.
#[derive(Debug)]
pub struct CertificateBuilder {
    claim: ClaimKind,
    inputs: Vec<(String, CertPayload)>,
    witnesses: Vec<(String, CertPayload)>,
    transcript: Vec<CheckRecord>,
    ok: bool,
}

impl CertificateBuilder {
    pub fn new(claim: ClaimKind) -> Self {
        CertificateBuilder {
            claim,
            inputs: Vec::new(),
            witnesses: Vec::new(),
            transcript: Vec::new(),
            ok: true,
        }
    }

    pub fn input(&mut self, name: &str, payload: CertPayload) -> &mut Self {
        self.inputs.push((name.to_string(), payload));
        self
    }

    pub fn witness(&mut self, name: &str, payload: CertPayload) -> &mut Self {
        self.witnesses.push((name.to_string(), payload));
        self
    }

    /// Records an exact matrix equality; both sides are rendered as compared.
    pub fn check_matrix_eq(&mut self, label: &str, lhs: &Matrix, rhs: &Matrix) -> bool {
        let pass = lhs == rhs;
        self.record(label, lhs.to_string(), rhs.to_string(), pass);
        pass
    }

    pub fn check_element_eq(&mut self, label: &str, lhs: &RingElement, rhs: &RingElement) -> bool {
        let pass = lhs == rhs;
        self.record(label, lhs.render(), rhs.render(), pass);
        pass
    }

    /// Records a predicate that was computed exactly elsewhere.
    pub fn check_bool(&mut self, label: &str, observed: bool) -> bool {
        self.record(label, observed.to_string(), "true".into(), observed);
        observed
    }

    /// Records a check that could not be decided; never refutes.
    pub fn skip(&mut self, label: &str, note: &str) {
        self.transcript.push(CheckRecord {
            label: label.to_string(),
            lhs: note.to_string(),
            rhs: String::new(),
            status: CheckStatus::Skipped,
        });
    }

    fn record(&mut self, label: &str, lhs: String, rhs: String, pass: bool) {
        self.ok &= pass;
        self.transcript.push(CheckRecord {
            label: label.to_string(),
            lhs,
            rhs,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        });
    }

    pub fn all_passed(&self) -> bool {
        self.ok
    }

    pub fn finish(self) -> Certificate {
        let verdict = if self.ok { Verdict::Verified } else { Verdict::Refuted };
        Certificate {
            claim: self.claim,
            inputs: self.inputs,
            witnesses: self.witnesses,
            transcript: self.transcript,
            verdict,
        }
    }
}
