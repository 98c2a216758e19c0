//! Exact computer algebra for elementary symplectic groups of alternating forms.
//!
//! Everything here is exact: arbitrary-precision integers and rationals,
//! residue rings, sparse multivariate polynomials, and single-element
//! localizations. On top of the ring layer sit dense matrices with
//! fraction-free determinants and Pfaffians, generator words for elementary
//! and elementary-symplectic groups, the alpha/beta generators attached to an
//! invertible alternating form, a symplectization procedure turning words of
//! row/column blocks into elementary-symplectic witnesses, symplectic
//! Gram-Schmidt reduction of alternating forms to the standard form, and
//! certificate-producing verifiers for patching, homogenization, and dilation
//! identities. Verdicts are never probabilistic; every certificate records
//! the equalities it checked and re-verifies from its own content.

#![forbid(unsafe_code)]

pub mod certificate;
pub mod error;
pub mod form;
pub mod json;
pub mod localglobal;
pub mod matrix;
pub mod parse;
pub mod ring;
pub mod sample;
pub mod selftest;
pub mod vaserstein;
pub mod words;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
