//! Generator words: formal products of elementary, block, alpha/beta,
//! symplectic-elementary, conjugated, and inverse atoms, evaluated exactly.
//!
//! Storage convention: a word holds its atoms right to left, so the list
//! [e1, ..., er] evaluates to the matrix product er * ... * e1. e1 acts
//! first. This keeps inductive constructions that prepend stages literal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::form::{AlternatingForm, MAX_DIM};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingElement};
use crate::{Error, Result};

/// Hard cap on conjugation nesting depth, enforced at construction and
/// mirrored by the JSON decoder.
pub const MAX_CONJ_DEPTH: usize = 16;

/// Hard cap on atoms per word at the serialization boundary. Internally
/// built words (e.g. Gauss factorizations) may be longer.
pub const MAX_WORD_LEN: usize = 512;

/// One formal generator. Indices are 1-based throughout.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorAtom {
    /// E_ij(value) = I + value * e_ij, i != j.
    Elem {
        i: usize,
        j: usize,
        value: RingElement,
    },
    /// Block matrix (1, v; 0, I) of size v.len() + 1.
    RowBlock { v: Vec<RingElement> },
    /// Block matrix (1, 0; v^t, I) of size v.len() + 1.
    ColBlock { v: Vec<RingElement> },
    /// alpha_phi(v) = I + d^t v nu, an invertible (2n-1) x (2n-1) matrix.
    /// A missing form defaults to psi_n with n = (size + 1) / 2.
    Alpha {
        form: Option<Arc<AlternatingForm>>,
        v: Vec<RingElement>,
    },
    /// beta_phi(v) = I + mu v^t c.
    Beta {
        form: Option<Arc<AlternatingForm>>,
        v: Vec<RingElement>,
    },
    /// Elementary symplectic generator se_ij(value) for psi_n, size 2n.
    SymplElem {
        i: usize,
        j: usize,
        value: RingElement,
    },
    /// outer * inner * outer^{-1}; the inverse is taken as a word, never
    /// by matrix inversion.
    Conjugated {
        outer: GeneratorWord,
        inner: Box<GeneratorAtom>,
    },
    Inverse(Box<GeneratorAtom>),
}

/// The pairing 2k <-> 2k-1 underlying the standard form psi_n (1-based).
pub fn sigma(k: usize) -> usize {
    if k % 2 == 1 {
        k + 1
    } else {
        k - 1
    }
}

impl GeneratorAtom {
    pub fn elem(i: usize, j: usize, value: RingElement) -> Self {
        GeneratorAtom::Elem { i, j, value }
    }

    pub fn sympl(i: usize, j: usize, value: RingElement) -> Self {
        GeneratorAtom::SymplElem { i, j, value }
    }

    pub fn alpha(form: Option<Arc<AlternatingForm>>, v: Vec<RingElement>) -> Self {
        GeneratorAtom::Alpha { form, v }
    }

    pub fn beta(form: Option<Arc<AlternatingForm>>, v: Vec<RingElement>) -> Self {
        GeneratorAtom::Beta { form, v }
    }

    /// Structural inverse; total because every atom has one:
    /// E_ij(x)^{-1} = E_ij(-x), blocks and alpha/beta negate v (splitting
    /// property), se_ij(x)^{-1} = se_ij(-x), conjugation inverts inside.
    pub fn inverse(&self) -> GeneratorAtom {
        match self {
            GeneratorAtom::Elem { i, j, value } => GeneratorAtom::Elem {
                i: *i,
                j: *j,
                value: value.neg(),
            },
            GeneratorAtom::RowBlock { v } => GeneratorAtom::RowBlock {
                v: v.iter().map(RingElement::neg).collect(),
            },
            GeneratorAtom::ColBlock { v } => GeneratorAtom::ColBlock {
                v: v.iter().map(RingElement::neg).collect(),
            },
            GeneratorAtom::Alpha { form, v } => GeneratorAtom::Alpha {
                form: form.clone(),
                v: v.iter().map(RingElement::neg).collect(),
            },
            GeneratorAtom::Beta { form, v } => GeneratorAtom::Beta {
                form: form.clone(),
                v: v.iter().map(RingElement::neg).collect(),
            },
            GeneratorAtom::SymplElem { i, j, value } => GeneratorAtom::SymplElem {
                i: *i,
                j: *j,
                value: value.neg(),
            },
            GeneratorAtom::Conjugated { outer, inner } => GeneratorAtom::Conjugated {
                outer: outer.clone(),
                inner: Box::new(inner.inverse()),
            },
            GeneratorAtom::Inverse(inner) => (**inner).clone(),
        }
    }

    /// Conjugation nesting depth; Inverse wrappers are free.
    pub fn depth(&self) -> usize {
        match self {
            GeneratorAtom::Conjugated { outer, inner } => {
                let outer_depth = outer.atoms.iter().map(GeneratorAtom::depth).max().unwrap_or(0);
                1 + inner.depth().max(outer_depth)
            }
            GeneratorAtom::Inverse(inner) => inner.depth(),
            _ => 0,
        }
    }

    /// Exact matrix of this atom inside GL_size(ring). Validates first, so
    /// it is safe on atoms that did not come out of a checked word.
    pub fn matrix(&self, ring: &RingDescriptor, size: usize) -> Result<Matrix> {
        validate_atom(ring, size, self)?;
        atom_matrix(ring, size, self)
    }

    pub fn render(&self) -> String {
        fn join(v: &[RingElement]) -> String {
            v.iter().map(RingElement::render).collect::<Vec<_>>().join(", ")
        }
        match self {
            GeneratorAtom::Elem { i, j, value } => format!("E[{i},{j}]({})", value.render()),
            GeneratorAtom::RowBlock { v } => format!("Row({})", join(v)),
            GeneratorAtom::ColBlock { v } => format!("Col({})", join(v)),
            GeneratorAtom::Alpha { v, .. } => format!("alpha({})", join(v)),
            GeneratorAtom::Beta { v, .. } => format!("beta({})", join(v)),
            GeneratorAtom::SymplElem { i, j, value } => format!("se[{i},{j}]({})", value.render()),
            GeneratorAtom::Conjugated { outer, inner } => {
                format!("conj({}; {})", outer.render(), inner.render())
            }
            GeneratorAtom::Inverse(inner) => format!("inv({})", inner.render()),
        }
    }
}

/// A formal product of atoms over one ring, all of one matrix size.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorWord {
    ring: RingDescriptor,
    size: usize,
    atoms: Vec<GeneratorAtom>,
}

impl GeneratorWord {
    /// Builds and validates a word. Atoms are in storage order: the first
    /// atom acts first.
    pub fn new(ring: RingDescriptor, size: usize, atoms: Vec<GeneratorAtom>) -> Result<Self> {
        if size == 0 || size > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "word size must be between 1 and {MAX_DIM}, got {size}"
            )));
        }
        for atom in &atoms {
            if atom.depth() > MAX_CONJ_DEPTH {
                return Err(Error::Schema(format!(
                    "conjugation depth exceeds {MAX_CONJ_DEPTH}"
                )));
            }
            validate_atom(&ring, size, atom)?;
        }
        Ok(GeneratorWord { ring, size, atoms })
    }

    pub fn identity(ring: RingDescriptor, size: usize) -> Result<Self> {
        GeneratorWord::new(ring, size, Vec::new())
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn atoms(&self) -> &[GeneratorAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The matrix-order product self * rhs (rhs acts first).
    pub fn compose(&self, rhs: &GeneratorWord) -> Result<GeneratorWord> {
        if self.ring != rhs.ring {
            return Err(Error::descriptor_mismatch(&self.ring, &rhs.ring, "compose"));
        }
        if self.size != rhs.size {
            return Err(Error::DimensionMismatch(format!(
                "compose needs equal sizes, got {} and {}",
                self.size, rhs.size
            )));
        }
        let mut atoms = rhs.atoms.clone();
        atoms.extend(self.atoms.iter().cloned());
        Ok(GeneratorWord {
            ring: self.ring.clone(),
            size: self.size,
            atoms,
        })
    }

    /// Word inverse: reverse the storage order and invert each atom.
    /// evaluate(w) * evaluate(w.inverse()) = I.
    pub fn inverse(&self) -> GeneratorWord {
        let atoms = self.atoms.iter().rev().map(GeneratorAtom::inverse).collect();
        GeneratorWord {
            ring: self.ring.clone(),
            size: self.size,
            atoms,
        }
    }

    /// Exact product matrix; the empty word evaluates to the identity.
    pub fn evaluate(&self) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.ring.clone(), self.size);
        for atom in &self.atoms {
            acc = atom_matrix(&self.ring, self.size, atom)?.mul(&acc)?;
        }
        Ok(acc)
    }

    /// Substitutes polynomial variables in every parameter. Refuses words
    /// that pin an explicit form, since the form would need transporting.
    pub fn substitute(&self, images: &[RingElement]) -> Result<GeneratorWord> {
        let target = images
            .first()
            .ok_or_else(|| Error::ArityMismatch {
                expected: self.ring.variable_tower().len().max(1),
                got: 0,
            })?
            .descriptor()
            .clone();
        let atoms = self
            .atoms
            .iter()
            .map(|a| substitute_atom(a, images))
            .collect::<Result<Vec<_>>>()?;
        GeneratorWord::new(target, self.size, atoms)
    }

    /// Coerces every parameter into the target ring (see
    /// RingElement::coerce_into). Refuses words that pin an explicit form.
    pub fn coerce_into(&self, target: &RingDescriptor) -> Result<GeneratorWord> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| coerce_atom(a, target))
            .collect::<Result<Vec<_>>>()?;
        GeneratorWord::new(target.clone(), self.size, atoms)
    }

    /// Human-readable product in matrix reading order (leftmost acts last).
    pub fn render(&self) -> String {
        if self.atoms.is_empty() {
            return "I".to_string();
        }
        self.atoms
            .iter()
            .rev()
            .map(GeneratorAtom::render)
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

fn substitute_atom(atom: &GeneratorAtom, images: &[RingElement]) -> Result<GeneratorAtom> {
    let map = |v: &[RingElement]| -> Result<Vec<RingElement>> {
        v.iter().map(|x| x.substitute(images)).collect()
    };
    Ok(match atom {
        GeneratorAtom::Elem { i, j, value } => GeneratorAtom::Elem {
            i: *i,
            j: *j,
            value: value.substitute(images)?,
        },
        GeneratorAtom::RowBlock { v } => GeneratorAtom::RowBlock { v: map(v)? },
        GeneratorAtom::ColBlock { v } => GeneratorAtom::ColBlock { v: map(v)? },
        GeneratorAtom::Alpha { form: None, v } => GeneratorAtom::Alpha {
            form: None,
            v: map(v)?,
        },
        GeneratorAtom::Beta { form: None, v } => GeneratorAtom::Beta {
            form: None,
            v: map(v)?,
        },
        GeneratorAtom::Alpha { form: Some(_), .. } | GeneratorAtom::Beta { form: Some(_), .. } => {
            return Err(Error::UnsupportedAtom(
                "cannot substitute through an atom that pins an explicit form".into(),
            ))
        }
        GeneratorAtom::SymplElem { i, j, value } => GeneratorAtom::SymplElem {
            i: *i,
            j: *j,
            value: value.substitute(images)?,
        },
        GeneratorAtom::Conjugated { outer, inner } => GeneratorAtom::Conjugated {
            outer: outer.substitute(images)?,
            inner: Box::new(substitute_atom(inner, images)?),
        },
        GeneratorAtom::Inverse(inner) => {
            GeneratorAtom::Inverse(Box::new(substitute_atom(inner, images)?))
        }
    })
}

fn coerce_atom(atom: &GeneratorAtom, target: &RingDescriptor) -> Result<GeneratorAtom> {
    let map = |v: &[RingElement]| -> Result<Vec<RingElement>> {
        v.iter().map(|x| x.coerce_into(target)).collect()
    };
    Ok(match atom {
        GeneratorAtom::Elem { i, j, value } => GeneratorAtom::Elem {
            i: *i,
            j: *j,
            value: value.coerce_into(target)?,
        },
        GeneratorAtom::RowBlock { v } => GeneratorAtom::RowBlock { v: map(v)? },
        GeneratorAtom::ColBlock { v } => GeneratorAtom::ColBlock { v: map(v)? },
        GeneratorAtom::Alpha { form: None, v } => GeneratorAtom::Alpha {
            form: None,
            v: map(v)?,
        },
        GeneratorAtom::Beta { form: None, v } => GeneratorAtom::Beta {
            form: None,
            v: map(v)?,
        },
        GeneratorAtom::Alpha { form: Some(_), .. } | GeneratorAtom::Beta { form: Some(_), .. } => {
            return Err(Error::UnsupportedAtom(
                "cannot coerce an atom that pins an explicit form".into(),
            ))
        }
        GeneratorAtom::SymplElem { i, j, value } => GeneratorAtom::SymplElem {
            i: *i,
            j: *j,
            value: value.coerce_into(target)?,
        },
        GeneratorAtom::Conjugated { outer, inner } => GeneratorAtom::Conjugated {
            outer: outer.coerce_into(target)?,
            inner: Box::new(coerce_atom(inner, target)?),
        },
        GeneratorAtom::Inverse(inner) => {
            GeneratorAtom::Inverse(Box::new(coerce_atom(inner, target)?))
        }
    })
}

fn check_param(ring: &RingDescriptor, value: &RingElement, context: &str) -> Result<()> {
    if value.descriptor() != ring {
        return Err(Error::descriptor_mismatch(
            value.descriptor(),
            ring,
            context,
        ));
    }
    Ok(())
}

fn validate_atom(ring: &RingDescriptor, size: usize, atom: &GeneratorAtom) -> Result<()> {
    match atom {
        GeneratorAtom::Elem { i, j, value } => {
            if *i == 0 || *j == 0 || *i > size || *j > size || i == j {
                return Err(Error::IndexError(format!(
                    "elem atom needs 1 <= i != j <= {size}, got ({i},{j})"
                )));
            }
            check_param(ring, value, "elem atom")
        }
        GeneratorAtom::RowBlock { v } | GeneratorAtom::ColBlock { v } => {
            if v.len() + 1 != size {
                return Err(Error::DimensionMismatch(format!(
                    "block atom vector has length {}, need {}",
                    v.len(),
                    size - 1
                )));
            }
            v.iter().try_for_each(|x| check_param(ring, x, "block atom"))
        }
        GeneratorAtom::Alpha { form, v } | GeneratorAtom::Beta { form, v } => {
            if size % 2 == 0 {
                return Err(Error::DimensionMismatch(format!(
                    "alpha/beta atoms live in odd size 2n-1, got {size}"
                )));
            }
            if v.len() != size {
                return Err(Error::DimensionMismatch(format!(
                    "alpha/beta vector has length {}, need {size}",
                    v.len()
                )));
            }
            if let Some(f) = form {
                if f.ring() != ring {
                    return Err(Error::descriptor_mismatch(f.ring(), ring, "alpha/beta form"));
                }
                if f.dim() != size + 1 {
                    return Err(Error::FormMismatch(format!(
                        "form has dimension {}, atom needs {}",
                        f.dim(),
                        size + 1
                    )));
                }
            }
            v.iter().try_for_each(|x| check_param(ring, x, "alpha/beta atom"))
        }
        GeneratorAtom::SymplElem { i, j, value } => {
            if size % 2 != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "se atoms live in even size 2n, got {size}"
                )));
            }
            if *i == 0 || *j == 0 || *i > size || *j > size || i == j {
                return Err(Error::IndexError(format!(
                    "se atom needs 1 <= i != j <= {size}, got ({i},{j})"
                )));
            }
            check_param(ring, value, "se atom")
        }
        GeneratorAtom::Conjugated { outer, inner } => {
            if outer.size() != size {
                return Err(Error::DimensionMismatch(format!(
                    "conjugator has size {}, atom needs {size}",
                    outer.size()
                )));
            }
            if outer.ring() != ring {
                return Err(Error::descriptor_mismatch(outer.ring(), ring, "conjugator"));
            }
            validate_atom(ring, size, inner)
        }
        GeneratorAtom::Inverse(inner) => validate_atom(ring, size, inner),
    }
}

/// Matrix of a validated atom.
fn atom_matrix(ring: &RingDescriptor, size: usize, atom: &GeneratorAtom) -> Result<Matrix> {
    match atom {
        GeneratorAtom::Elem { i, j, value } => {
            Matrix::elementary(ring.clone(), size, i - 1, j - 1, value.clone())
        }
        GeneratorAtom::RowBlock { v } => {
            let mut m = Matrix::identity(ring.clone(), size);
            for (k, x) in v.iter().enumerate() {
                *m.at_mut(0, k + 1) = x.clone();
            }
            Ok(m)
        }
        GeneratorAtom::ColBlock { v } => {
            let mut m = Matrix::identity(ring.clone(), size);
            for (k, x) in v.iter().enumerate() {
                *m.at_mut(k + 1, 0) = x.clone();
            }
            Ok(m)
        }
        GeneratorAtom::Alpha { form, v } => {
            let f = resolve_form(ring, size, form)?;
            alpha_matrix(&f, v)
        }
        GeneratorAtom::Beta { form, v } => {
            let f = resolve_form(ring, size, form)?;
            beta_matrix(&f, v)
        }
        GeneratorAtom::SymplElem { i, j, value } => se_matrix(ring, size, *i, *j, value),
        GeneratorAtom::Conjugated { outer, inner } => {
            let g = outer.evaluate()?;
            let g_inv = outer.inverse().evaluate()?;
            let m = atom_matrix(ring, size, inner)?;
            g.mul(&m)?.mul(&g_inv)
        }
        GeneratorAtom::Inverse(inner) => atom_matrix(ring, size, &inner.inverse()),
    }
}

fn resolve_form(
    ring: &RingDescriptor,
    size: usize,
    form: &Option<Arc<AlternatingForm>>,
) -> Result<Arc<AlternatingForm>> {
    match form {
        Some(f) => Ok(f.clone()),
        None => Ok(Arc::new(AlternatingForm::psi(ring, (size + 1) / 2)?)),
    }
}

/// alpha_phi(v) = I + d^t v nu; fixes v (alpha * v^t = v^t) and splits
/// additively in v.
pub fn alpha_matrix(form: &AlternatingForm, v: &[RingElement]) -> Result<Matrix> {
    let ring = form.ring().clone();
    let k = form.dim() - 1;
    if v.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "alpha vector needs length {k}, got {}",
            v.len()
        )));
    }
    let row = Matrix::new(ring.clone(), 1, k, v.to_vec())?;
    let correction = form.d().transpose().mul(&row.mul(form.nu())?)?;
    Matrix::identity(ring, k).add(&correction)
}

/// beta_phi(v) = I + mu v^t c; the transpose-side companion of alpha.
pub fn beta_matrix(form: &AlternatingForm, v: &[RingElement]) -> Result<Matrix> {
    let ring = form.ring().clone();
    let k = form.dim() - 1;
    if v.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "beta vector needs length {k}, got {}",
            v.len()
        )));
    }
    let col = Matrix::new(ring.clone(), k, 1, v.to_vec())?;
    let correction = form.mu().mul(&col)?.mul(form.c())?;
    Matrix::identity(ring, k).add(&correction)
}

fn se_matrix(
    ring: &RingDescriptor,
    size: usize,
    i: usize,
    j: usize,
    z: &RingElement,
) -> Result<Matrix> {
    let mut m = Matrix::identity(ring.clone(), size);
    *m.at_mut(i - 1, j - 1) = m.at(i - 1, j - 1).add(z)?;
    if i != sigma(j) {
        // Second matrix unit - (-1)^{i+j} z e_{sigma(j) sigma(i)}; the sign
        // is forced by m^t psi m = psi.
        let signed = if (i + j) % 2 == 0 { z.neg() } else { z.clone() };
        let (r, c) = (sigma(j) - 1, sigma(i) - 1);
        *m.at_mut(r, c) = m.at(r, c).add(&signed)?;
    }
    Ok(m)
}

/// The elementary symplectic generator se_ij(z) of Sp_{psi_n}(R), size 2n.
pub fn se_generator(
    ring: &RingDescriptor,
    n: usize,
    i: usize,
    j: usize,
    z: &RingElement,
) -> Result<Matrix> {
    let size = 2 * n;
    if size > MAX_DIM || n == 0 {
        return Err(Error::DimensionMismatch(format!(
            "se generator needs 1 <= 2n <= {MAX_DIM}, got n = {n}"
        )));
    }
    if i == 0 || j == 0 || i > size || j > size || i == j {
        return Err(Error::IndexError(format!(
            "se generator needs 1 <= i != j <= {size}, got ({i},{j})"
        )));
    }
    check_param(ring, z, "se generator")?;
    let m = se_matrix(ring, size, i, j, z)?;
    debug_assert!(
        AlternatingForm::psi(ring, n)?.preserves(&m)?,
        "se_{i}{j} must preserve psi_{n}"
    );
    Ok(m)
}

/// True iff m^t phi m = phi exactly.
pub fn is_in_sp(phi: &AlternatingForm, m: &Matrix) -> Result<bool> {
    if m.ring() != phi.ring() {
        return Err(Error::descriptor_mismatch(m.ring(), phi.ring(), "is_in_sp"));
    }
    phi.preserves(m)
}

/// Rewrites a word of elementary atoms into row/column block atoms of the
/// same size, preserving evaluation exactly: E_1j and E_i1 embed directly,
/// everything else goes through the commutator
/// E_ij(x) = E_i1(x) E_1j(1) E_i1(-x) E_1j(-1).
pub fn decompose_elem_to_rowcol(w: &GeneratorWord) -> Result<GeneratorWord> {
    let ring = w.ring().clone();
    let size = w.size();
    if size < 2 {
        return Err(Error::DimensionMismatch(
            "block decomposition needs size at least 2".into(),
        ));
    }
    let unit_vec = |pos: usize, x: RingElement| -> Vec<RingElement> {
        let mut v = vec![ring.zero(); size - 1];
        v[pos - 1] = x;
        v
    };
    let mut atoms = Vec::new();
    for atom in w.atoms() {
        let GeneratorAtom::Elem { i, j, value } = atom else {
            return Err(Error::UnsupportedAtom(format!(
                "block decomposition accepts only elem atoms, got {}",
                atom.render()
            )));
        };
        let (i, j) = (*i, *j);
        if i == 1 {
            atoms.push(GeneratorAtom::RowBlock {
                v: unit_vec(j - 1, value.clone()),
            });
        } else if j == 1 {
            atoms.push(GeneratorAtom::ColBlock {
                v: unit_vec(i - 1, value.clone()),
            });
        } else {
            // Storage order is the reverse of the matrix-order commutator.
            atoms.push(GeneratorAtom::RowBlock {
                v: unit_vec(j - 1, ring.from_i64(-1)),
            });
            atoms.push(GeneratorAtom::ColBlock {
                v: unit_vec(i - 1, value.neg()),
            });
            atoms.push(GeneratorAtom::RowBlock {
                v: unit_vec(j - 1, ring.one()),
            });
            atoms.push(GeneratorAtom::ColBlock {
                v: unit_vec(i - 1, value.clone()),
            });
        }
    }
    GeneratorWord::new(ring, size, atoms)
}

/// Normal form of prod_i a_i b_i as (prod_i r_i b_i r_i^{-1}) * (prod_i a_i)
/// with r_i = a_1 ... a_i. Returns (conjugated-part, plain-part); the
/// evaluation of their matrix product equals that of the interleaving.
pub fn conjugation_normal_form(
    pairs: &[(GeneratorWord, GeneratorWord)],
) -> Result<(GeneratorWord, GeneratorWord)> {
    let Some((first_a, _)) = pairs.first() else {
        return Err(Error::DimensionMismatch(
            "conjugation normal form needs at least one pair".into(),
        ));
    };
    let ring = first_a.ring().clone();
    let size = first_a.size();
    for (a, b) in pairs {
        for w in [a, b] {
            if w.ring() != &ring {
                return Err(Error::descriptor_mismatch(w.ring(), &ring, "normal form"));
            }
            if w.size() != size {
                return Err(Error::DimensionMismatch(format!(
                    "normal form needs uniform size {size}, got {}",
                    w.size()
                )));
            }
        }
    }
    let mut running = GeneratorWord::identity(ring.clone(), size)?;
    let mut fragments: Vec<Vec<GeneratorAtom>> = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        running = running.compose(a)?;
        let fragment = b
            .atoms()
            .iter()
            .map(|inner| GeneratorAtom::Conjugated {
                outer: running.clone(),
                inner: Box::new(inner.clone()),
            })
            .collect();
        fragments.push(fragment);
    }
    // Matrix order is fragment_1 * ... * fragment_n, so storage order lists
    // fragment_n first.
    let mut conj_atoms = Vec::new();
    for fragment in fragments.into_iter().rev() {
        conj_atoms.extend(fragment);
    }
    let conjugated = GeneratorWord::new(ring, size, conj_atoms)?;
    Ok((conjugated, running))
}

/// A finitely generated ideal with membership testing for the decidable
/// cases: unit generators, the zero ideal, principal-by-gcd ideals of the
/// integers and residue rings, and variable-generated ideals of polynomial
/// rings.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealSpec {
    ring: RingDescriptor,
    generators: Vec<RingElement>,
}

impl IdealSpec {
    pub fn new(ring: RingDescriptor, generators: Vec<RingElement>) -> Result<Self> {
        for g in &generators {
            check_param(&ring, g, "ideal generator")?;
        }
        Ok(IdealSpec { ring, generators })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    /// Exact membership where decidable; UndecidableIdeal otherwise.
    pub fn contains(&self, x: &RingElement) -> Result<bool> {
        check_param(&self.ring, x, "ideal membership")?;
        // A unit generator makes the ideal the whole ring.
        for g in &self.generators {
            if let Ok(Some(_)) = g.is_unit() {
                return Ok(true);
            }
        }
        if self.generators.iter().all(RingElement::is_zero) {
            return Ok(x.is_zero());
        }
        match &self.ring {
            RingDescriptor::Integers => {
                let mut g = BigInt::zero();
                for gen in &self.generators {
                    let value = gen.int_value().expect("integer payload");
                    g = g.gcd(value);
                }
                let value = x.int_value().expect("integer payload");
                Ok((value % &g).is_zero())
            }
            RingDescriptor::IntegersMod(m) => {
                let mut g = BigInt::from((**m).clone());
                for gen in &self.generators {
                    let lift = BigInt::from(gen.mod_value().expect("residue payload").clone());
                    g = g.gcd(&lift);
                }
                let lift = BigInt::from(x.mod_value().expect("residue payload").clone());
                Ok((lift % &g).is_zero())
            }
            RingDescriptor::Polynomial(_) => {
                // Decidable case: every generator is a bare variable; then
                // membership is vanishing under "those variables -> 0".
                match self.vanishing_images() {
                    Some(images) => Ok(x.substitute(&images)?.is_zero()),
                    None => Err(Error::UndecidableIdeal(
                        "a polynomial generator is not a bare variable".into(),
                    )),
                }
            }
            _ => Err(Error::UndecidableIdeal(format!(
                "no membership test over {}",
                self.ring.render()
            ))),
        }
    }

    /// The substitution "listed variables -> 0, others fixed" when every
    /// generator is a bare variable of a polynomial ring; None otherwise.
    pub fn vanishing_images(&self) -> Option<Vec<RingElement>> {
        let RingDescriptor::Polynomial(p) = &self.ring else {
            return None;
        };
        let arity = p.variables.len();
        let mut kill = vec![false; arity];
        for gen in &self.generators {
            kill[variable_index(gen, arity)?] = true;
        }
        Some(
            (0..arity)
                .map(|idx| {
                    if kill[idx] {
                        self.ring.zero()
                    } else {
                        variable_element(&self.ring, idx)
                    }
                })
                .collect(),
        )
    }
}

/// Some(k) iff x is exactly the k-th variable (single term, exponent one,
/// coefficient one).
fn variable_index(x: &RingElement, arity: usize) -> Option<usize> {
    let terms = x.poly_terms()?;
    if terms.len() != 1 {
        return None;
    }
    let (exps, coeff) = terms.iter().next()?;
    if !coeff.is_one() {
        return None;
    }
    let mut index = None;
    for (k, &e) in exps.iter().enumerate() {
        if e == 1 && index.is_none() {
            index = Some(k);
        } else if e != 0 {
            return None;
        }
    }
    index.filter(|&k| k < arity)
}

/// The k-th variable as an element of the polynomial ring.
pub(crate) fn variable_element(ring: &RingDescriptor, idx: usize) -> RingElement {
    let RingDescriptor::Polynomial(p) = ring else {
        panic!("variable_element needs a polynomial ring");
    };
    let mut exps = vec![0u32; p.variables.len()];
    exps[idx] = 1;
    let mut map = std::collections::BTreeMap::new();
    map.insert(exps, p.base.one());
    RingElement::from_poly_map(ring.clone(), map)
}

/// True iff every core parameter of every atom lies in the ideal. Conjugated
/// atoms contribute only their inner atom: the conjugator may be arbitrary,
/// which is exactly the normal-closure shape of a relative elementary group.
pub fn relative_word_check(w: &GeneratorWord, ideal: &IdealSpec) -> Result<bool> {
    if w.ring() != ideal.ring() {
        return Err(Error::descriptor_mismatch(
            w.ring(),
            ideal.ring(),
            "relative word check",
        ));
    }
    for atom in w.atoms() {
        if !atom_params_in_ideal(atom, ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn atom_params_in_ideal(atom: &GeneratorAtom, ideal: &IdealSpec) -> Result<bool> {
    match atom {
        GeneratorAtom::Elem { value, .. } | GeneratorAtom::SymplElem { value, .. } => {
            ideal.contains(value)
        }
        GeneratorAtom::RowBlock { v }
        | GeneratorAtom::ColBlock { v }
        | GeneratorAtom::Alpha { v, .. }
        | GeneratorAtom::Beta { v, .. } => {
            for x in v {
                if !ideal.contains(x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        GeneratorAtom::Conjugated { inner, .. } => atom_params_in_ideal(inner, ideal),
        GeneratorAtom::Inverse(inner) => atom_params_in_ideal(inner, ideal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn z() -> RingDescriptor {
        RingDescriptor::integers()
    }

    fn zmod(m: u64) -> RingDescriptor {
        RingDescriptor::integers_mod(BigUint::from(m)).unwrap()
    }

    fn zpoly(vars: &[&str]) -> RingDescriptor {
        RingDescriptor::polynomial(z(), vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn mat(ring: &RingDescriptor, n: usize, vals: &[i64]) -> Matrix {
        Matrix::new(
            ring.clone(),
            n,
            n,
            vals.iter().map(|&v| ring.from_i64(v)).collect(),
        )
        .unwrap()
    }

    fn elems(ring: &RingDescriptor, vals: &[i64]) -> Vec<RingElement> {
        vals.iter().map(|&v| ring.from_i64(v)).collect()
    }

    #[test]
    fn empty_word_evaluates_to_identity() {
        let w = GeneratorWord::identity(z(), 3).unwrap();
        assert!(w.evaluate().unwrap().is_identity());
        assert_eq!(w.render(), "I");
    }

    #[test]
    fn storage_order_is_right_to_left() {
        let ring = z();
        let forward = GeneratorWord::new(
            ring.clone(),
            2,
            vec![
                GeneratorAtom::elem(1, 2, ring.one()),
                GeneratorAtom::elem(2, 1, ring.one()),
            ],
        )
        .unwrap();
        // [E12, E21] evaluates to E21 * E12 = [[1,1],[1,2]].
        assert_eq!(forward.evaluate().unwrap(), mat(&ring, 2, &[1, 1, 1, 2]));
        let backward = GeneratorWord::new(
            ring.clone(),
            2,
            vec![
                GeneratorAtom::elem(2, 1, ring.one()),
                GeneratorAtom::elem(1, 2, ring.one()),
            ],
        )
        .unwrap();
        assert_eq!(backward.evaluate().unwrap(), mat(&ring, 2, &[2, 1, 1, 1]));
    }

    #[test]
    fn elem_atom_is_identity_plus_unit() {
        let ring = zpoly(&["a"]);
        let a = crate::parse::parse_element("a", &ring).unwrap();
        let w = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 2, a.clone())])
            .unwrap();
        let m = w.evaluate().unwrap();
        let mut expected = Matrix::identity(ring, 3);
        *expected.at_mut(0, 1) = a;
        assert_eq!(m, expected);
    }

    #[test]
    fn se_generator_formula_and_sp_membership() {
        let ring = zpoly(&["z"]);
        let zv = crate::parse::parse_element("z", &ring).unwrap();
        // 2 = sigma(1): a single matrix unit.
        let se21 = se_generator(&ring, 2, 2, 1, &zv).unwrap();
        let mut expect21 = Matrix::identity(ring.clone(), 4);
        *expect21.at_mut(1, 0) = zv.clone();
        assert_eq!(se21, expect21);
        // 3 != sigma(1): correction -z e_{24} forced by the form.
        let se31 = se_generator(&ring, 2, 3, 1, &zv).unwrap();
        let mut expect31 = Matrix::identity(ring.clone(), 4);
        *expect31.at_mut(2, 0) = zv.clone();
        *expect31.at_mut(1, 3) = zv.neg();
        assert_eq!(se31, expect31);
        let psi2 = AlternatingForm::psi(&ring, 2).unwrap();
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                let se = se_generator(&ring, 2, i, j, &zv).unwrap();
                assert!(is_in_sp(&psi2, &se).unwrap(), "se_{i}{j} not symplectic");
            }
        }
    }

    #[test]
    fn block_atoms_embed_in_first_row_and_column() {
        let ring = z();
        let v = elems(&ring, &[2, 3, 4]);
        let row = GeneratorAtom::RowBlock { v: v.clone() }.matrix(&ring, 4).unwrap();
        let col = GeneratorAtom::ColBlock { v }.matrix(&ring, 4).unwrap();
        assert_eq!(row, mat(&ring, 4, &[1, 2, 3, 4, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]));
        assert_eq!(col, row.transpose());
    }

    #[test]
    fn alpha_fixes_v_and_splits_additively() {
        let ring = zpoly(&["p", "q", "r", "s", "t", "u"]);
        let var = |name: &str| crate::parse::parse_element(name, &ring).unwrap();
        let v = vec![var("p"), var("q"), var("r")];
        let w = vec![var("s"), var("t"), var("u")];
        let psi2 = AlternatingForm::psi(&ring, 2).unwrap();
        let vw: Vec<RingElement> = v
            .iter()
            .zip(&w)
            .map(|(a, b)| a.add(b).unwrap())
            .collect();
        let av = alpha_matrix(&psi2, &v).unwrap();
        let aw = alpha_matrix(&psi2, &w).unwrap();
        let avw = alpha_matrix(&psi2, &vw).unwrap();
        assert_eq!(avw, av.mul(&aw).unwrap());
        let bv = beta_matrix(&psi2, &v).unwrap();
        let bw = beta_matrix(&psi2, &w).unwrap();
        let bvw = beta_matrix(&psi2, &vw).unwrap();
        assert_eq!(bvw, bv.mul(&bw).unwrap());
        // alpha fixes v as a column, beta fixes v as a row.
        let col = Matrix::new(ring.clone(), 3, 1, v.clone()).unwrap();
        assert_eq!(av.mul(&col).unwrap(), col);
        let rowv = Matrix::new(ring.clone(), 1, 3, v).unwrap();
        assert_eq!(rowv.mul(&bv).unwrap(), rowv);
    }

    #[test]
    fn word_inverse_cancels_all_atom_kinds() {
        let ring = zmod(5);
        let odd = GeneratorWord::new(
            ring.clone(),
            3,
            vec![
                GeneratorAtom::alpha(None, elems(&ring, &[1, 2, 3])),
                GeneratorAtom::beta(None, elems(&ring, &[4, 0, 2])),
                GeneratorAtom::RowBlock { v: elems(&ring, &[3, 1]) },
                GeneratorAtom::ColBlock { v: elems(&ring, &[2, 4]) },
            ],
        )
        .unwrap();
        assert!(odd
            .evaluate()
            .unwrap()
            .mul(&odd.inverse().evaluate().unwrap())
            .unwrap()
            .is_identity());

        let conjugator = GeneratorWord::new(
            ring.clone(),
            4,
            vec![GeneratorAtom::elem(2, 3, ring.from_i64(2))],
        )
        .unwrap();
        let even = GeneratorWord::new(
            ring.clone(),
            4,
            vec![
                GeneratorAtom::elem(1, 4, ring.from_i64(3)),
                GeneratorAtom::sympl(3, 1, ring.from_i64(4)),
                GeneratorAtom::Conjugated {
                    outer: conjugator,
                    inner: Box::new(GeneratorAtom::sympl(1, 2, ring.from_i64(2))),
                },
                GeneratorAtom::Inverse(Box::new(GeneratorAtom::elem(4, 2, ring.from_i64(1)))),
            ],
        )
        .unwrap();
        assert!(even
            .inverse()
            .evaluate()
            .unwrap()
            .mul(&even.evaluate().unwrap())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn alpha_inverse_negates_vector() {
        let ring = z();
        let w = GeneratorWord::new(
            ring.clone(),
            3,
            vec![GeneratorAtom::alpha(None, elems(&ring, &[1, 2, 3]))],
        )
        .unwrap();
        let inv = w.inverse();
        match &inv.atoms()[0] {
            GeneratorAtom::Alpha { v, .. } => {
                assert_eq!(v.clone(), elems(&ring, &[-1, -2, -3]));
            }
            other => panic!("expected alpha atom, got {}", other.render()),
        }
    }

    #[test]
    fn decompose_elem_examples() {
        let ring = zpoly(&["a"]);
        let a = crate::parse::parse_element("a", &ring).unwrap();
        // E_13(a) embeds directly as a row block with v = a e_2.
        let direct = GeneratorWord::new(ring.clone(), 4, vec![GeneratorAtom::elem(1, 3, a.clone())])
            .unwrap();
        let blocks = decompose_elem_to_rowcol(&direct).unwrap();
        assert_eq!(blocks.len(), 1);
        match &blocks.atoms()[0] {
            GeneratorAtom::RowBlock { v } => {
                assert!(v[0].is_zero() && v[2].is_zero());
                assert_eq!(v[1], a);
            }
            other => panic!("expected row block, got {}", other.render()),
        }
        assert_eq!(blocks.evaluate().unwrap(), direct.evaluate().unwrap());
        // E_23(a) needs the commutator: four block atoms.
        let general = GeneratorWord::new(ring.clone(), 4, vec![GeneratorAtom::elem(2, 3, a)])
            .unwrap();
        let blocks = decompose_elem_to_rowcol(&general).unwrap();
        assert_eq!(blocks.len(), 4);
        assert_eq!(blocks.evaluate().unwrap(), general.evaluate().unwrap());
        // Empty in, empty out.
        let empty = GeneratorWord::identity(ring.clone(), 4).unwrap();
        assert!(decompose_elem_to_rowcol(&empty).unwrap().is_empty());
        // Non-elem atoms are refused.
        let block_word = GeneratorWord::new(
            ring.clone(),
            4,
            vec![GeneratorAtom::RowBlock {
                v: vec![ring.zero(), ring.zero(), ring.zero()],
            }],
        )
        .unwrap();
        assert!(matches!(
            decompose_elem_to_rowcol(&block_word),
            Err(Error::UnsupportedAtom(_))
        ));
    }

    #[test]
    fn decompose_preserves_mixed_word_evaluation() {
        let ring = zmod(7);
        let w = GeneratorWord::new(
            ring.clone(),
            4,
            vec![
                GeneratorAtom::elem(1, 2, ring.from_i64(2)),
                GeneratorAtom::elem(3, 2, ring.from_i64(3)),
                GeneratorAtom::elem(2, 1, ring.from_i64(5)),
                GeneratorAtom::elem(4, 3, ring.from_i64(6)),
            ],
        )
        .unwrap();
        let blocks = decompose_elem_to_rowcol(&w).unwrap();
        assert_eq!(blocks.evaluate().unwrap(), w.evaluate().unwrap());
    }

    #[test]
    fn conjugation_normal_form_agrees_with_interleaving() {
        let ring = zmod(7);
        let a1 = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 2, ring.from_i64(3))])
            .unwrap();
        let b1 = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(2, 3, ring.from_i64(2))])
            .unwrap();
        let a2 = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(3, 1, ring.from_i64(4))])
            .unwrap();
        let b2 = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 3, ring.from_i64(6))])
            .unwrap();
        let pairs = vec![(a1.clone(), b1.clone()), (a2.clone(), b2.clone())];
        let (conj, plain) = conjugation_normal_form(&pairs).unwrap();
        // plain = a1 a2 in matrix order.
        assert_eq!(
            plain.evaluate().unwrap(),
            a1.evaluate().unwrap().mul(&a2.evaluate().unwrap()).unwrap()
        );
        let interleaved = a1
            .evaluate()
            .unwrap()
            .mul(&b1.evaluate().unwrap())
            .unwrap()
            .mul(&a2.evaluate().unwrap())
            .unwrap()
            .mul(&b2.evaluate().unwrap())
            .unwrap();
        let recombined = conj
            .evaluate()
            .unwrap()
            .mul(&plain.evaluate().unwrap())
            .unwrap();
        assert_eq!(recombined, interleaved);
        // Single pair: (a b a^{-1}, a).
        let (conj1, plain1) = conjugation_normal_form(&pairs[..1]).unwrap();
        assert_eq!(conj1.len(), 1);
        assert_eq!(plain1.evaluate().unwrap(), a1.evaluate().unwrap());
        // Empty b parts leave an empty conjugated part.
        let empty = GeneratorWord::identity(ring.clone(), 3).unwrap();
        let (conj0, plain0) =
            conjugation_normal_form(&[(a1.clone(), empty)]).unwrap();
        assert!(conj0.is_empty());
        assert_eq!(plain0.evaluate().unwrap(), a1.evaluate().unwrap());
    }

    #[test]
    fn relative_word_check_decidable_cases() {
        // Polynomial ring, ideal (X): zero constant term.
        let ring = zpoly(&["X"]);
        let x = crate::parse::parse_element("X", &ring).unwrap();
        let two_x = crate::parse::parse_element("2*X", &ring).unwrap();
        let ideal = IdealSpec::new(ring.clone(), vec![x.clone()]).unwrap();
        let gamma = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(2, 1, ring.one())])
            .unwrap();
        let w = GeneratorWord::new(
            ring.clone(),
            3,
            vec![GeneratorAtom::Conjugated {
                outer: gamma,
                inner: Box::new(GeneratorAtom::elem(1, 2, two_x)),
            }],
        )
        .unwrap();
        assert!(relative_word_check(&w, &ideal).unwrap());
        let bad = GeneratorWord::new(
            ring.clone(),
            3,
            vec![GeneratorAtom::elem(1, 2, crate::parse::parse_element("X + 1", &ring).unwrap())],
        )
        .unwrap();
        assert!(!relative_word_check(&bad, &ideal).unwrap());

        // Integers: gcd divisibility.
        let zr = z();
        let ideal2 = IdealSpec::new(zr.clone(), vec![zr.from_i64(2)]).unwrap();
        let w3 = GeneratorWord::new(zr.clone(), 3, vec![GeneratorAtom::elem(1, 2, zr.from_i64(3))])
            .unwrap();
        assert!(!relative_word_check(&w3, &ideal2).unwrap());
        let w4 = GeneratorWord::new(zr.clone(), 3, vec![GeneratorAtom::elem(1, 2, zr.from_i64(4))])
            .unwrap();
        assert!(relative_word_check(&w4, &ideal2).unwrap());

        // Residue ring: ideal (8) in Z/12 is (gcd(8,12)) = (4).
        let r12 = zmod(12);
        let ideal8 = IdealSpec::new(r12.clone(), vec![r12.from_i64(8)]).unwrap();
        assert!(ideal8.contains(&r12.from_i64(4)).unwrap());
        assert!(!ideal8.contains(&r12.from_i64(6)).unwrap());

        // Rationals: any nonzero generator is a unit.
        let q = RingDescriptor::rationals();
        let ideal5 = IdealSpec::new(q.clone(), vec![q.from_i64(5)]).unwrap();
        assert!(ideal5.contains(&q.from_i64(7)).unwrap());

        // Zero ideal.
        let ideal0 = IdealSpec::new(zr.clone(), vec![zr.zero()]).unwrap();
        assert!(ideal0.contains(&zr.zero()).unwrap());
        assert!(!ideal0.contains(&zr.from_i64(3)).unwrap());

        // Non-variable polynomial generators are undecidable.
        let x_sq = crate::parse::parse_element("X^2", &ring).unwrap();
        let hard = IdealSpec::new(ring.clone(), vec![x_sq]).unwrap();
        assert!(matches!(
            hard.contains(&x),
            Err(Error::UndecidableIdeal(_))
        ));
    }

    #[test]
    fn relative_words_vanish_mod_the_ideal() {
        // Any word passing the check with ideal (X) evaluates to I at X = 0.
        let ring = zpoly(&["X"]);
        let x = crate::parse::parse_element("X", &ring).unwrap();
        let ideal = IdealSpec::new(ring.clone(), vec![x.clone()]).unwrap();
        let gamma = GeneratorWord::new(
            ring.clone(),
            3,
            vec![
                GeneratorAtom::elem(2, 3, ring.from_i64(5)),
                GeneratorAtom::elem(3, 1, ring.one()),
            ],
        )
        .unwrap();
        let w = GeneratorWord::new(
            ring.clone(),
            3,
            vec![
                GeneratorAtom::Conjugated {
                    outer: gamma,
                    inner: Box::new(GeneratorAtom::elem(1, 3, x.clone())),
                },
                GeneratorAtom::elem(2, 1, crate::parse::parse_element("3*X^2", &ring).unwrap()),
            ],
        )
        .unwrap();
        assert!(relative_word_check(&w, &ideal).unwrap());
        let at_zero = w.evaluate().unwrap().substitute(&[ring.zero()]).unwrap();
        assert!(at_zero.is_identity());
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let ring = zpoly(&["X"]);
        let x = crate::parse::parse_element("X", &ring).unwrap();
        let inner = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 2, x.clone())])
            .unwrap();
        let w = GeneratorWord::new(
            ring.clone(),
            3,
            vec![
                GeneratorAtom::Conjugated {
                    outer: inner,
                    inner: Box::new(GeneratorAtom::elem(2, 1, x.mul(&ring.from_i64(2)).unwrap())),
                },
                GeneratorAtom::elem(3, 1, x.clone()),
            ],
        )
        .unwrap();
        let at = z().from_i64(3);
        let substituted = w.substitute(&[at.clone()]).unwrap();
        assert_eq!(substituted.ring(), &z());
        assert_eq!(
            substituted.evaluate().unwrap(),
            w.evaluate().unwrap().substitute(&[at]).unwrap()
        );
    }

    #[test]
    fn construction_rejects_malformed_atoms() {
        let ring = z();
        assert!(matches!(
            GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 1, ring.one())]),
            Err(Error::IndexError(_))
        ));
        assert!(matches!(
            GeneratorWord::new(ring.clone(), 4, vec![GeneratorAtom::alpha(None, elems(&ring, &[1, 2, 3, 4]))]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::sympl(1, 2, ring.one())]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::RowBlock { v: elems(&ring, &[1]) }]),
            Err(Error::DimensionMismatch(_))
        ));
        let q = RingDescriptor::rationals();
        let psi_q = Arc::new(AlternatingForm::psi(&q, 2).unwrap());
        assert!(matches!(
            GeneratorWord::new(
                ring.clone(),
                3,
                vec![GeneratorAtom::alpha(Some(psi_q), elems(&ring, &[1, 2, 3]))]
            ),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn conjugation_depth_is_capped() {
        let ring = z();
        let outer = GeneratorWord::new(ring.clone(), 3, vec![GeneratorAtom::elem(1, 2, ring.one())])
            .unwrap();
        let mut atom = GeneratorAtom::elem(2, 3, ring.one());
        for _ in 0..MAX_CONJ_DEPTH {
            atom = GeneratorAtom::Conjugated {
                outer: outer.clone(),
                inner: Box::new(atom),
            };
        }
        assert!(GeneratorWord::new(ring.clone(), 3, vec![atom.clone()]).is_ok());
        let too_deep = GeneratorAtom::Conjugated {
            outer,
            inner: Box::new(atom),
        };
        assert!(matches!(
            GeneratorWord::new(ring, 3, vec![too_deep]),
            Err(Error::Schema(_))
        ));
    }
}
