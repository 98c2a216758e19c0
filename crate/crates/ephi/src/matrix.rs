//! Dense matrices over the exact rings.
//!
//! Determinants are fraction-free Bareiss over rings with exact division
//! and division-free Berkowitz elsewhere, so they are exact over every
//! supported ring. The Pfaffian is a memoized expansion along the first
//! remaining row, which pins its sign convention: Pf of the standard
//! 2x2 block [[0,1],[-1,0]] is +1.

use crate::ring::{RingDescriptor, RingElement};
use crate::{Error, Result};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl Matrix {
    pub fn new(
        ring: RingDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<RingElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if *e.descriptor() != ring {
                return Err(Error::descriptor_mismatch(
                    e.descriptor(),
                    &ring,
                    "matrix entry",
                ));
            }
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        ring: RingDescriptor,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(ring: RingDescriptor, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix {
            ring,
            rows,
            cols,
            entries: vec![z; rows * cols],
        }
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = Matrix::zero(ring.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    /// I + value * e_ij with zero-based off-diagonal indices.
    pub fn elementary(
        ring: RingDescriptor,
        n: usize,
        i: usize,
        j: usize,
        value: RingElement,
    ) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::IndexError(format!(
                "elementary matrix needs distinct indices below {n}, got ({i}, {j})"
            )));
        }
        let mut m = Matrix::identity(ring, n);
        *m.at_mut(i, j) = value;
        Ok(m)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RingElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    fn check_same_ring(&self, other: &Self, context: &str) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::descriptor_mismatch(&self.ring, &other.ring, context))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other, "matrix add")?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for (x, y) in self.entries.iter().zip(other.entries.iter()) {
            entries.push(x.add(y)?);
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other, "matrix mul")?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.at(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let rhs = other.at(k, j);
                    if rhs.is_zero() {
                        continue;
                    }
                    let prod = lhs.mul(rhs)?;
                    let cur = out.at(i, j).add(&prod)?;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RingElement) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.mul(s)?);
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other, "direct sum")?;
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Matrix::zero(self.ring.clone(), rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_alternating(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if !self.at(i, i).is_zero() {
                return false;
            }
            for j in (i + 1)..self.cols {
                if *self.at(i, j) != self.at(j, i).neg() {
                    return false;
                }
            }
        }
        true
    }

    /// The congruent image g^t * self * g.
    pub fn congruence(&self, g: &Self) -> Result<Self> {
        g.transpose().mul(self)?.mul(g)
    }

    pub fn submatrix(&self, drop_row: usize, drop_col: usize) -> Self {
        Matrix::from_fn(self.ring.clone(), self.rows - 1, self.cols - 1, |i, j| {
            let si = if i >= drop_row { i + 1 } else { i };
            let sj = if j >= drop_col { j + 1 } else { j };
            self.at(si, sj).clone()
        })
    }

    fn check_square(&self, context: &str) -> Result<()> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{context} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Exact determinant over any supported commutative ring.
    pub fn determinant(&self) -> Result<RingElement> {
        self.check_square("determinant")?;
        if self.ring.supports_exact_division() {
            self.determinant_bareiss()
        } else {
            self.determinant_berkowitz()
        }
    }

    /// Fraction-free Gaussian elimination; valid over integral domains with
    /// exact division (Sylvester's identity keeps every division exact).
    fn determinant_bareiss(&self) -> Result<RingElement> {
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<RingElement>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign_flip = false;
        let mut prev_pivot = self.ring.one();
        for k in 0..n - 1 {
            if at(&a, k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !at(&a, r, k).is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(self.ring.zero()),
                }
            }
            let pivot = at(&a, k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot
                        .mul(&at(&a, i, j))?
                        .sub(&at(&a, i, k).mul(&at(&a, k, j))?)?;
                    a[i * n + j] = num.divide_exact(&prev_pivot).ok_or_else(|| {
                        Error::DimensionMismatch(
                            "fraction-free elimination hit an inexact division".into(),
                        )
                    })?;
                }
                a[i * n + k] = self.ring.zero();
            }
            prev_pivot = pivot;
        }
        let det = at(&a, n - 1, n - 1);
        Ok(if sign_flip { det.neg() } else { det })
    }

    /// Division-free determinant via the Berkowitz vector recurrence, O(n^4)
    /// ring operations, valid over any commutative ring.
    fn determinant_berkowitz(&self) -> Result<RingElement> {
        let n = self.rows;
        // v holds the characteristic polynomial coefficients of the leading
        // principal submatrix processed so far, leading coefficient first.
        let mut v = vec![self.ring.one()];
        for i in 0..n {
            // Toeplitz column entries t_0 = 1, t_1 = -a_ii,
            // t_{j+2} = -(R M^j C) for the leading block M, row R, column C.
            let mut t = Vec::with_capacity(i + 2);
            t.push(self.ring.one());
            t.push(self.at(i, i).neg());
            let mut mc: Vec<RingElement> = (0..i).map(|r| self.at(r, i).clone()).collect();
            for _ in 0..i {
                let mut dot = self.ring.zero();
                for (c, val) in mc.iter().enumerate() {
                    dot = dot.add(&self.at(i, c).mul(val)?)?;
                }
                t.push(dot.neg());
                let mut next = Vec::with_capacity(i);
                for r in 0..i {
                    let mut s = self.ring.zero();
                    for (c, val) in mc.iter().enumerate() {
                        s = s.add(&self.at(r, c).mul(val)?)?;
                    }
                    next.push(s);
                }
                mc = next;
            }
            // v <- T v for the lower-triangular Toeplitz matrix T[p][q] =
            // t[p - q]; the output has one more row than v.
            let mut out = vec![self.ring.zero(); v.len() + 1];
            for (p, tv) in t.iter().enumerate() {
                if tv.is_zero() {
                    continue;
                }
                for (q, vv) in v.iter().enumerate() {
                    if p + q < out.len() {
                        out[p + q] = out[p + q].add(&tv.mul(vv)?)?;
                    }
                }
            }
            v = out;
        }
        let constant = v.last().expect("coefficient vector is nonempty").clone();
        Ok(if n % 2 == 1 { constant.neg() } else { constant })
    }

    /// Cofactor expansion along the first row. Exponential; kept as an
    /// independent oracle for the fast determinants.
    pub fn determinant_cofactor(&self) -> Result<RingElement> {
        self.check_square("determinant")?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        if n == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut acc = self.ring.zero();
        for j in 0..n {
            let c = self.at(0, j);
            if c.is_zero() {
                continue;
            }
            let minor = self.submatrix(0, j).determinant_cofactor()?;
            let term = c.mul(&minor)?;
            acc = if j % 2 == 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        Ok(acc)
    }

    /// Pfaffian of an alternating matrix by memoized expansion along the
    /// lowest remaining index. Requires even dimension at most 16.
    pub fn pfaffian(&self) -> Result<RingElement> {
        self.check_square("pfaffian")?;
        if !self.is_alternating() {
            return Err(Error::NotAlternating(
                "pfaffian requires an alternating matrix".into(),
            ));
        }
        let n = self.rows;
        if n % 2 != 0 || n > 16 {
            return Err(Error::DimensionMismatch(format!(
                "pfaffian needs an even dimension at most 16, got {n}"
            )));
        }
        let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut memo: HashMap<u32, RingElement> = HashMap::new();
        self.pfaffian_masked(full, &mut memo)
    }

    fn pfaffian_masked(
        &self,
        mask: u32,
        memo: &mut HashMap<u32, RingElement>,
    ) -> Result<RingElement> {
        if mask == 0 {
            return Ok(self.ring.one());
        }
        if let Some(v) = memo.get(&mask) {
            return Ok(v.clone());
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1u32 << i);
        let mut acc = self.ring.zero();
        let mut rank = 0usize;
        for j in (i + 1)..self.rows {
            if rest & (1u32 << j) == 0 {
                continue;
            }
            let entry = self.at(i, j);
            if !entry.is_zero() {
                let sub = self.pfaffian_masked(rest & !(1u32 << j), memo)?;
                let term = entry.mul(&sub)?;
                acc = if rank % 2 == 0 {
                    acc.add(&term)?
                } else {
                    acc.sub(&term)?
                };
            }
            rank += 1;
        }
        memo.insert(mask, acc.clone());
        Ok(acc)
    }

    /// Inverse via the adjugate when the determinant is a unit. Returns
    /// NotInvertible when the determinant is provably not a unit.
    pub fn try_inverse(&self) -> Result<Self> {
        self.check_square("inverse")?;
        let det = self.determinant()?;
        let det_inv = match det.is_unit()? {
            Some(inv) => inv,
            None => {
                return Err(Error::NotInvertible(format!(
                    "determinant {} is not a unit",
                    det.render()
                )))
            }
        };
        let n = self.rows;
        let mut out = Matrix::zero(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.submatrix(j, i).determinant()?;
                let signed = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                *out.at_mut(i, j) = signed.mul(&det_inv)?;
            }
        }
        Ok(out)
    }

    /// Maps every entry into `target` by the canonical coercion.
    pub fn coerce_into(&self, target: &RingDescriptor) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.coerce_into(target)?);
        }
        Ok(Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Substitutes images for the variables of a polynomial entry ring.
    pub fn substitute(&self, images: &[RingElement]) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.substitute(images)?);
        }
        let ring = entries
            .first()
            .map(|e| e.descriptor().clone())
            .unwrap_or_else(|| {
                images
                    .first()
                    .map(|e| e.descriptor().clone())
                    .unwrap_or(RingDescriptor::Integers)
            });
        Ok(Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
