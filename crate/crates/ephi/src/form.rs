//! Invertible alternating forms and their block decomposition.
//!
//! An invertible alternating 2n x 2n matrix phi and its inverse split as
//!
//!   phi     = [ 0   -c  ]      phi^{-1} = [ 0    d  ]
//!             [ c^t  nu ]                 [ -d^t  mu ]
//!
//! with c, d rows of length 2n - 1. The identity phi phi^{-1} = I is
//! equivalent to the four block relations c d^t = 1, c mu = 0, nu d^t = 0,
//! and c^t d + mu... more precisely c^t d + nu mu = I; those relations are
//! what make the generator splittings work, so they are revalidated here
//! whenever a form is decomposed.

use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingElement};
use crate::{Error, Result};

/// Largest supported matrix dimension 2n.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    n: usize,
    phi: Matrix,
    phi_inv: Matrix,
    c: Matrix,
    d: Matrix,
    nu: Matrix,
    mu: Matrix,
    pf: RingElement,
}

impl AlternatingForm {
    /// Decomposes an invertible alternating matrix, requiring its Pfaffian
    /// to be a unit.
    pub fn decompose(phi: Matrix) -> Result<Self> {
        Self::decompose_inner(phi, false)
    }

    /// As [`decompose`], but requires Pfaffian exactly one.
    pub fn decompose_strict(phi: Matrix) -> Result<Self> {
        Self::decompose_inner(phi, true)
    }

    fn decompose_inner(phi: Matrix, strict: bool) -> Result<Self> {
        let dim = phi.rows();
        if phi.cols() != dim || dim == 0 || dim % 2 != 0 || dim > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "an alternating form needs an even dimension in 2..={MAX_DIM}, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        if !phi.is_alternating() {
            return Err(Error::NotAlternating(
                "form matrix must be alternating".into(),
            ));
        }
        let pf = phi.pfaffian()?;
        if strict && !pf.is_one() {
            return Err(Error::PfaffianNotOne {
                value: pf.render(),
            });
        }
        if pf.is_unit()?.is_none() {
            return Err(Error::PfaffianNotUnit {
                value: pf.render(),
            });
        }
        let phi_inv = phi.try_inverse()?;
        Self::from_parts(phi, phi_inv, pf)
    }

    /// Builds a form from a matrix and a precomputed inverse, verifying
    /// phi phi^{-1} = I and the block relations. This skips the adjugate
    /// inverse, which matters when congruence transformations already track
    /// the inverse.
    pub fn from_parts(phi: Matrix, phi_inv: Matrix, pf: RingElement) -> Result<Self> {
        let dim = phi.rows();
        let n = dim / 2;
        if !phi.mul(&phi_inv)?.is_identity() {
            return Err(Error::NotInvertible(
                "provided inverse does not invert the form".into(),
            ));
        }
        let ring = phi.ring().clone();
        let c = Matrix::from_fn(ring.clone(), 1, dim - 1, |_, j| phi.at(j + 1, 0).clone());
        let d = Matrix::from_fn(ring.clone(), 1, dim - 1, |_, j| {
            phi_inv.at(0, j + 1).clone()
        });
        let nu = Matrix::from_fn(ring.clone(), dim - 1, dim - 1, |i, j| {
            phi.at(i + 1, j + 1).clone()
        });
        let mu = Matrix::from_fn(ring.clone(), dim - 1, dim - 1, |i, j| {
            phi_inv.at(i + 1, j + 1).clone()
        });
        let form = AlternatingForm {
            n,
            phi,
            phi_inv,
            c,
            d,
            nu,
            mu,
            pf,
        };
        form.check_block_relations()?;
        Ok(form)
    }

    fn check_block_relations(&self) -> Result<()> {
        let cdt = self.c.mul(&self.d.transpose())?;
        if !cdt.at(0, 0).is_one() {
            return Err(Error::FormMismatch(format!(
                "c d^t = {}, expected 1",
                cdt.at(0, 0).render()
            )));
        }
        let cmu = self.c.mul(&self.mu)?;
        if cmu.entries().iter().any(|e| !e.is_zero()) {
            return Err(Error::FormMismatch("c mu is nonzero".into()));
        }
        let nudt = self.nu.mul(&self.d.transpose())?;
        if nudt.entries().iter().any(|e| !e.is_zero()) {
            return Err(Error::FormMismatch("nu d^t is nonzero".into()));
        }
        let recomposed = self
            .c
            .transpose()
            .mul(&self.d)?
            .add(&self.nu.mul(&self.mu)?)?;
        if !recomposed.is_identity() {
            return Err(Error::FormMismatch("c^t d + nu mu is not I".into()));
        }
        let det = self.phi.determinant()?;
        if self.pf.mul(&self.pf)? != det {
            return Err(Error::FormMismatch(format!(
                "Pf^2 = {} disagrees with det = {}",
                self.pf.mul(&self.pf)?.render(),
                det.render()
            )));
        }
        Ok(())
    }

    /// The standard symplectic form psi_n: orthogonal 2x2 blocks
    /// [[0, 1], [-1, 0]], Pfaffian +1.
    pub fn psi(ring: &RingDescriptor, n: usize) -> Result<Self> {
        if n == 0 || 2 * n > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "psi_n needs 1 <= n <= {}, got {n}",
                MAX_DIM / 2
            )));
        }
        let phi = Self::psi_matrix(ring, n);
        // psi_n^2 = -I, so the inverse is -psi_n.
        let phi_inv = phi.neg();
        Self::from_parts(phi, phi_inv, ring.one())
    }

    pub fn psi_matrix(ring: &RingDescriptor, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring.clone(), 2 * n, 2 * n);
        for i in 0..n {
            *m.at_mut(2 * i, 2 * i + 1) = ring.one();
            *m.at_mut(2 * i + 1, 2 * i) = ring.one().neg();
        }
        m
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.phi.ring()
    }

    /// Half rank n; the matrix is 2n x 2n.
    pub fn half_rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn phi_inv(&self) -> &Matrix {
        &self.phi_inv
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn nu(&self) -> &Matrix {
        &self.nu
    }

    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    pub fn pfaffian(&self) -> &RingElement {
        &self.pf
    }

    /// True when g^t phi g = phi.
    pub fn preserves(&self, g: &Matrix) -> Result<bool> {
        if g.rows() != self.dim() || g.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "group element must be {0}x{0}, got {1}x{2}",
                self.dim(),
                g.rows(),
                g.cols()
            )));
        }
        Ok(self.phi.congruence(g)? == self.phi)
    }
}
