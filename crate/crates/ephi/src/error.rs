//! Crate-wide error type. Every failure is a value; nothing panics on
//! malformed input.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {left} vs {right} in {context}")]
    DescriptorMismatch {
        left: String,
        right: String,
        context: String,
    },

    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("unit test unsupported in {ring}")]
    UnitTestUnsupported { ring: String },

    #[error("arity mismatch: expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("Pfaffian {value} is not a unit")]
    PfaffianNotUnit { value: String },

    #[error("Pfaffian {value} is not 1 (strict mode)")]
    PfaffianNotOne { value: String },

    #[error("index out of range: {0}")]
    IndexError(String),

    #[error("unsupported atom: {0}")]
    UnsupportedAtom(String),

    #[error("ideal membership undecidable: {0}")]
    UndecidableIdeal(String),

    #[error("form mismatch: {0}")]
    FormMismatch(String),

    #[error("no unit pivot: {0}")]
    NoUnitPivot(String),

    #[error("determinant {det} is not 1")]
    NotDetOne { det: String },

    #[error("word does not evaluate to the identity at zero: {0}")]
    NotIdentityAtZero(String),

    #[error("invalid cover: {0}")]
    CoverInvalid(String),

    #[error("divisibility undecidable in {ring}")]
    UndecidableDivisibility { ring: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid document: {0}")]
    Schema(String),

    #[error("input too large: {0}")]
    InputTooLarge(String),

    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
}

impl Error {
    pub(crate) fn descriptor_mismatch(
        left: &crate::ring::RingDescriptor,
        right: &crate::ring::RingDescriptor,
        context: &str,
    ) -> Self {
        Error::DescriptorMismatch {
            left: left.render(),
            right: right.render(),
            context: context.to_string(),
        }
    }
}
