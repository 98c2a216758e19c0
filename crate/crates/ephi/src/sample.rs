//! Seeded samplers for elements, matrices, forms and generator words. Every
//! sampler draws from a caller-supplied ChaCha stream, so a fixed seed
//! reproduces the same objects byte for byte across runs and platforms.

use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::form::AlternatingForm;
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingElement};
use crate::words::{variable_element, GeneratorAtom, GeneratorWord};
use crate::Result;

/// Coefficient range for integer-like draws; small values keep symbolic
/// products readable while still exercising signs and zero.
const COEFF_BOUND: i64 = 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws an element with small coefficients. `degree` bounds the total
/// degree of any polynomial layer; base rings ignore it.
pub fn random_element(rng: &mut ChaCha8Rng, ring: &RingDescriptor, degree: u32) -> RingElement {
    match ring {
        RingDescriptor::Integers => ring.from_i64(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)),
        RingDescriptor::Rationals => {
            let num = ring.from_i64(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND));
            let den = ring.from_i64(rng.gen_range(1..=COEFF_BOUND));
            num.divide_exact(&den).expect("rationals divide exactly")
        }
        RingDescriptor::IntegersMod(m) => {
            let residue = match m.to_u64() {
                Some(cap) => rng.gen_range(0..cap) as i64,
                None => rng.gen_range(0..i64::MAX),
            };
            ring.from_i64(residue)
        }
        RingDescriptor::Polynomial(p) => {
            let mut acc = ring.zero();
            for _ in 0..rng.gen_range(1..=3u32) {
                let coeff = random_element(rng, &p.base, degree);
                let mut term = coeff.coerce_into(ring).expect("constants lift into towers");
                for _ in 0..rng.gen_range(0..=degree) {
                    let var = variable_element(ring, rng.gen_range(0..p.variables.len()));
                    term = term.mul(&var).expect("same ring");
                }
                acc = acc.add(&term).expect("same ring");
            }
            acc
        }
        RingDescriptor::Localized(l) => {
            let num = random_element(rng, &l.base, degree);
            let exp = rng.gen_range(0..=1u32);
            RingElement::from_localized_parts(ring.clone(), num, exp)
                .expect("numerator sampled in the base ring")
        }
    }
}

/// Draws a polynomial with zero constant term, so it lies in the ideal
/// generated by the variables and vanishes under every variable at zero.
pub fn random_vanishing_element(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    degree: u32,
) -> Result<RingElement> {
    let RingDescriptor::Polynomial(p) = ring else {
        return Err(crate::Error::InvalidDescriptor(
            "vanishing elements require a polynomial ring".into(),
        ));
    };
    let sample = random_element(rng, ring, degree.max(1));
    let zeros = vec![p.base.zero(); p.variables.len()];
    let constant = sample.substitute(&zeros)?;
    sample.sub(&constant.coerce_into(ring)?)
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    rows: usize,
    cols: usize,
    degree: u32,
) -> Result<Matrix> {
    let entries = (0..rows * cols)
        .map(|_| random_element(rng, ring, degree))
        .collect();
    Matrix::new(ring.clone(), rows, cols, entries)
}

/// Draws an alternating matrix: zero diagonal, lower triangle the negated
/// mirror of the upper triangle.
pub fn random_alternating(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    dim: usize,
    degree: u32,
) -> Result<Matrix> {
    let mut m = Matrix::zero(ring.clone(), dim, dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let x = random_element(rng, ring, degree);
            *m.at_mut(i, j) = x.clone();
            *m.at_mut(j, i) = x.neg();
        }
    }
    Ok(m)
}

/// Draws a word in plain elementary generators `E_ij(a)` of the given size.
pub fn random_elem_word(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    size: usize,
    len: usize,
    degree: u32,
) -> Result<GeneratorWord> {
    let atoms = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=size);
            let mut j = rng.gen_range(1..=size - 1);
            if j >= i {
                j += 1;
            }
            GeneratorAtom::elem(i, j, random_element(rng, ring, degree))
        })
        .collect();
    GeneratorWord::new(ring.clone(), size, atoms)
}

/// Draws a word of row and column blocks of size `2n`, the shape the
/// symplectization pipeline consumes; each block carries a vector of
/// length `2n - 1`.
pub fn random_block_word(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    n: usize,
    len: usize,
    degree: u32,
) -> Result<GeneratorWord> {
    let atoms = (0..len)
        .map(|_| {
            let v: Vec<RingElement> = (0..2 * n - 1)
                .map(|_| random_element(rng, ring, degree))
                .collect();
            if rng.gen_bool(0.5) {
                GeneratorAtom::RowBlock { v }
            } else {
                GeneratorAtom::ColBlock { v }
            }
        })
        .collect();
    GeneratorWord::new(ring.clone(), 2 * n, atoms)
}

/// Draws a word of elementary generators whose parameters all vanish at
/// zero, so the evaluated matrix is the identity at the variable origin.
pub fn random_vanishing_word(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    size: usize,
    len: usize,
    degree: u32,
) -> Result<GeneratorWord> {
    let atoms = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=size);
            let mut j = rng.gen_range(1..=size - 1);
            if j >= i {
                j += 1;
            }
            Ok(GeneratorAtom::elem(
                i,
                j,
                random_vanishing_element(rng, ring, degree)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorWord::new(ring.clone(), size, atoms)
}

/// Draws a form congruent to the standard one: `phi = E^t psi_n E` for the
/// evaluation `E` of a random elementary word, returned with the word.
pub fn random_congruent_form(
    rng: &mut ChaCha8Rng,
    ring: &RingDescriptor,
    n: usize,
    len: usize,
    degree: u32,
) -> Result<(Matrix, GeneratorWord)> {
    let eps = random_elem_word(rng, ring, 2 * n, len, degree)?;
    let phi = AlternatingForm::psi_matrix(ring, n).congruence(&eps.evaluate()?)?;
    Ok((phi, eps))
}
