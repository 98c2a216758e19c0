//! A seeded battery of invariant checks spanning every pipeline: Pfaffians,
//! generator splitting, block words, translation, symplectization, form
//! reduction, expression, patching, homogenization, dilation and the JSON
//! boundary. The CLI exposes it as a smoke test; a fixed seed reproduces
//! the exact run.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;

use crate::form::AlternatingForm;
use crate::localglobal::{
    dilation_verify, quillen_patch_verify, swan_weibel_homogenize, CoverSpec,
};
use crate::matrix::Matrix;
use crate::parse::parse_element;
use crate::ring::{RingDescriptor, RingElement};
use crate::words::{alpha_matrix, beta_matrix};
use crate::{json, sample, vaserstein, Result};

#[derive(Debug, Clone)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success; the error message when a check aborted.
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<SelftestCheck>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let mark = if check.passed { "ok  " } else { "FAIL" };
            out.push_str(mark);
            out.push(' ');
            out.push_str(check.name);
            if !check.note.is_empty() {
                out.push_str(": ");
                out.push_str(&check.note);
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "selftest: {passed} passed, {} failed (seed {})\n",
            self.checks.len() - passed,
            self.seed
        ));
        out
    }
}

type Check = fn(&mut ChaCha8Rng) -> Result<bool>;

const CHECKS: &[(&str, Check)] = &[
    ("pfaffian squares to the determinant", pfaffian_squares),
    ("alpha and beta split additively", generators_split),
    ("block words evaluate to block matrices", block_words_match),
    ("translated generators are elementary and symplectic", translation_lands),
    ("symplectization certificates verify and reverify", symplectization_verifies),
    ("congruation certificates verify", congruation_verifies),
    ("form reduction certificates verify and reverify", reduction_verifies),
    ("expression certificates verify and reverify", expression_verifies),
    ("patching identities verify", patching_verifies),
    ("homogenization round trips at T = 1", homogenization_round_trips),
    ("dilation certificates verify", dilation_verifies),
    ("certificate encoding is deterministic", encoding_deterministic),
];

pub fn run(seed: u64) -> SelftestReport {
    let mut rng = sample::rng(seed);
    let checks = CHECKS
        .iter()
        .map(|(name, check)| match check(&mut rng) {
            Ok(passed) => SelftestCheck {
                name,
                passed,
                note: String::new(),
            },
            Err(e) => SelftestCheck {
                name,
                passed: false,
                note: e.to_string(),
            },
        })
        .collect();
    SelftestReport { seed, checks }
}

fn z() -> RingDescriptor {
    RingDescriptor::integers()
}

fn zmod(m: u64) -> RingDescriptor {
    RingDescriptor::integers_mod(BigUint::from(m)).expect("modulus is at least two")
}

fn pfaffian_squares(rng: &mut ChaCha8Rng) -> Result<bool> {
    for ring in [z(), zmod(7)] {
        for dim in [2usize, 4, 6] {
            for _ in 0..5 {
                let m = sample::random_alternating(rng, &ring, dim, 0)?;
                let pf = m.pfaffian()?;
                if pf.mul(&pf)? != m.determinant()? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn generators_split(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    for _ in 0..5 {
        let (phi, _) = sample::random_congruent_form(rng, &ring, 2, 4, 0)?;
        let form = AlternatingForm::decompose(phi)?;
        let k = form.dim() - 1;
        let u: Vec<RingElement> = (0..k).map(|_| sample::random_element(rng, &ring, 0)).collect();
        let v: Vec<RingElement> = (0..k).map(|_| sample::random_element(rng, &ring, 0)).collect();
        let sum: Vec<RingElement> = u
            .iter()
            .zip(&v)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        let alpha_split = alpha_matrix(&form, &sum)?
            == alpha_matrix(&form, &u)?.mul(&alpha_matrix(&form, &v)?)?;
        let beta_split = beta_matrix(&form, &sum)?
            == beta_matrix(&form, &u)?.mul(&beta_matrix(&form, &v)?)?;
        if !alpha_split || !beta_split {
            return Ok(false);
        }
    }
    Ok(true)
}

fn block_words_match(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = z();
    for n in [2usize, 3] {
        let psi = AlternatingForm::psi(&ring, n)?;
        for _ in 0..3 {
            let v: Vec<RingElement> = (0..2 * n - 1)
                .map(|_| sample::random_element(rng, &ring, 0))
                .collect();
            let c_ok = vaserstein::c_word(&ring, n, &v)?.evaluate()?
                == vaserstein::c_matrix(&psi, &v)?;
            let r_ok = vaserstein::r_word(&ring, n, &v)?.evaluate()?
                == vaserstein::r_matrix(&psi, &v)?;
            if !c_ok || !r_ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn translation_lands(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let n = 2;
    let size = 2 * n - 1;
    for _ in 0..4 {
        let a = sample::random_element(rng, &ring, 0);
        for k in 2..=size {
            for (i, j) in [(1usize, k), (k, 1)] {
                let word = vaserstein::translate_elem(&ring, n, i, j, &a)?;
                if word.evaluate()?
                    != Matrix::elementary(ring.clone(), size, i - 1, j - 1, a.clone())?
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn symplectization_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let w = sample::random_block_word(rng, &ring, 2, 6, 0)?;
    let cert = vaserstein::rao_swan_symplectize(&w)?;
    Ok(cert.is_verified() && cert.reverify()?.is_verified())
}

fn congruation_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let w = sample::random_elem_word(rng, &ring, 4, 6, 0)?;
    Ok(vaserstein::rao_swan_congruate(&w)?.is_verified())
}

fn reduction_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let (phi, _) = sample::random_congruent_form(rng, &ring, 2, 6, 0)?;
    let cert = vaserstein::alternating_reduce(&phi, true)?;
    Ok(cert.is_verified() && cert.reverify()?.is_verified())
}

fn expression_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let (phi, _) = sample::random_congruent_form(rng, &ring, 2, 4, 0)?;
    let form = AlternatingForm::decompose(phi)?;
    let target = sample::random_elem_word(rng, &ring, 3, 1, 0)?;
    let cert = vaserstein::express_in_ephi(&target, &form)?;
    Ok(cert.is_verified() && cert.reverify()?.is_verified())
}

fn patching_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = RingDescriptor::polynomial(z(), vec!["X".into()])?;
    let theta = sample::random_vanishing_word(rng, &ring, 3, 4, 2)?;
    let cover = CoverSpec::new(
        vec![z().from_i64(2), z().from_i64(3)],
        vec![z().from_i64(2), z().from_i64(-1)],
        1,
    )?;
    Ok(quillen_patch_verify(&theta, &cover)?.is_verified())
}

fn homogenization_round_trips(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = RingDescriptor::polynomial(z(), vec!["X1".into(), "X2".into()])?;
    let m = sample::random_matrix(rng, &ring, 3, 3, 2)?;
    let h = swan_weibel_homogenize(&m)?;
    Ok(h.substitute(&[ring.one()])? == m)
}

fn dilation_verifies(rng: &mut ChaCha8Rng) -> Result<bool> {
    let a = z().from_i64(2);
    let b = z().from_i64(2);
    let star_ring = RingDescriptor::polynomial(z(), vec!["X".into()])?;
    let loc_ring =
        RingDescriptor::polynomial(RingDescriptor::localized(a.clone())?, vec!["X".into()])?;
    let core = sample::random_vanishing_word(rng, &star_ring, 2, 3, 1)?;
    let theta = core.coerce_into(&loc_ring)?;
    let bx = parse_element("2*X", &star_ring)?;
    let theta_star = core.substitute(&[bx])?;
    Ok(dilation_verify(&theta_star, &theta, &a, &b, 1)?.is_verified())
}

fn encoding_deterministic(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ring = zmod(7);
    let w = sample::random_block_word(rng, &ring, 2, 4, 0)?;
    let cert = vaserstein::rao_swan_symplectize(&w)?;
    let text = json::encode_certificate(&cert, false)?;
    let back = json::decode_certificate(&text)?;
    Ok(back == cert && json::encode_certificate(&back, false)? == text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_is_reproducible() {
        let report = run(42);
        assert!(report.all_passed(), "{}", report.render());
        assert_eq!(report.render(), run(42).render());
        let lines = report.render();
        assert!(lines.contains("selftest: 12 passed, 0 failed (seed 42)"));
    }

    #[test]
    fn selftest_varies_with_the_seed_but_still_passes() {
        for seed in [0u64, 1, 7, 123456789] {
            let report = run(seed);
            assert!(report.all_passed(), "seed {seed}:\n{}", report.render());
        }
    }
}
