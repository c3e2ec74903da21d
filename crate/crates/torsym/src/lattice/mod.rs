//! Exact integer linear algebra over `Z^n`: Smith normal form, basis
//! completion, cokernel presentations and quotient-lattice projections.
//!
//! Everything is arbitrary precision; unimodular reductions are free to blow
//! up intermediate entries without overflow. Pivot selection is deterministic
//! (smallest nonzero absolute value, then lowest index) so all outputs are
//! reproducible.

mod cokernel;
mod smith;

pub use cokernel::AbelianGroupPresentation;
pub use smith::{smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rank error: {0} vectors cannot be independent in rank {1}")]
    RankError(usize, usize),
    #[error("vectors do not extend to a basis of Z^{0}")]
    NotExtendableError(usize),
    #[error("vector {0} is not primitive")]
    NotPrimitiveError(IntVector),
}

/// A vector in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    entries: Vec<Int>,
}

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector { entries }
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector::new(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        IntVector::new(vec![Int::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &Int {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> IntVector {
        IntVector::new(self.entries.iter().map(|e| -e).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        self.add(&other.neg())
    }

    pub fn scaled(&self, c: &Int) -> IntVector {
        IntVector::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.len(), other.len());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Greatest common divisor of the entries (zero for the zero vector).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for e in &self.entries {
            g = g.gcd(e);
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Index of the first nonzero entry, if any.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    /// Index of the last nonzero entry, if any.
    pub fn trailing_index(&self) -> Option<usize> {
        self.entries.iter().rposition(|e| !e.is_zero())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// A dense integer matrix in row-major order. Zero rows or columns are legal;
/// the rank-0 corner cases show up as lattices of rank 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, IntVector::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flat_map(|r| r.entries).collect(),
        }
    }

    pub fn from_columns(cols: Vec<IntVector>, rows: usize) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|v| v.len() == rows));
        let mut m = IntMatrix::zeros(rows, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, v.entry(i).clone());
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        IntVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * v.entry(j)).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += c * row_j
    pub fn add_row_multiple(&mut self, i: usize, j: usize, c: &Int) {
        for k in 0..self.cols {
            let v = self.at(i, k) + c * self.at(j, k);
            self.set(i, k, v);
        }
    }

    /// col_i += c * col_j
    pub fn add_col_multiple(&mut self, i: usize, j: usize, c: &Int) {
        for k in 0..self.rows {
            let v = self.at(k, i) + c * self.at(k, j);
            self.set(k, i, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.at(i, k);
            self.set(i, k, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.at(k, j);
            self.set(k, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num.div_floor(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// True iff the given vectors extend to a basis of `Z^n`, i.e. the matrix with
/// these columns has Smith form with every diagonal entry equal to 1.
pub fn is_part_of_basis(vectors: &[IntVector], n: usize) -> Result<bool, LatticeError> {
    if vectors.len() > n {
        return Err(LatticeError::RankError(vectors.len(), n));
    }
    if vectors.iter().any(|v| v.len() != n) {
        return Err(LatticeError::RankError(vectors.len(), n));
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = IntMatrix::from_columns(vectors.to_vec(), n);
    let snf = smith_normal_form(&m);
    Ok((0..vectors.len()).all(|i| snf.d.at(i, i).is_one()))
}

/// Completes `vectors` (columns that are part of a basis) to a matrix in
/// `GL(n, Z)` whose first columns are the given vectors.
pub fn complete_to_basis(vectors: &[IntVector], n: usize) -> Result<IntMatrix, LatticeError> {
    match is_part_of_basis(vectors, n) {
        Ok(true) => {}
        _ => return Err(LatticeError::NotExtendableError(n)),
    }
    let k = vectors.len();
    if k == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let a = IntMatrix::from_columns(vectors.to_vec(), n);
    let snf = smith_normal_form(&a);
    // U A V = (I_k; 0), so A = U^-1 (I_k; 0) V^-1 and the block matrix
    // B = U^-1 diag(V^-1, I_{n-k}) has the original vectors as first columns.
    let mut block = IntMatrix::identity(n);
    for i in 0..k {
        for j in 0..k {
            block.set(i, j, snf.v_inv.at(i, j).clone());
        }
    }
    let b = snf.u_inv.mul(&block);
    debug_assert!(b.is_unimodular());
    Ok(b)
}

/// Projection `Q : Z^n -> Z^{n-1}` with `Q v = 0`, surjective, deterministic.
///
/// For `v = +-e_i` this is the coordinate projection deleting entry `i`;
/// otherwise the bottom rows of the inverse of a basis completion of `v`.
pub fn quotient_by_primitive(v: &IntVector) -> Result<IntMatrix, LatticeError> {
    let n = v.len();
    if n == 0 || !v.is_primitive() {
        return Err(LatticeError::NotPrimitiveError(v.clone()));
    }
    if let Some(i) = coordinate_axis(v) {
        let mut q = IntMatrix::zeros(n - 1, n);
        let mut r = 0;
        for j in 0..n {
            if j != i {
                q.set(r, j, Int::one());
                r += 1;
            }
        }
        return Ok(q);
    }
    let a = IntMatrix::from_columns(vec![v.clone()], n);
    let snf = smith_normal_form(&a);
    // B = U^-1 diag(V^-1, I) as in complete_to_basis; B^-1 = diag(V, I) U and
    // its rows 1..n kill v and are jointly surjective.
    let mut block = IntMatrix::identity(n);
    block.set(0, 0, snf.v.at(0, 0).clone());
    let b_inv = block.mul(&snf.u);
    let mut q = IntMatrix::zeros(n - 1, n);
    for i in 1..n {
        for j in 0..n {
            q.set(i - 1, j, b_inv.at(i, j).clone());
        }
    }
    debug_assert!(q.mul_vec(v).is_zero());
    Ok(q)
}

/// Some(i) iff `v = +-e_i`.
fn coordinate_axis(v: &IntVector) -> Option<usize> {
    let mut found = None;
    for (i, e) in v.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if found.is_some() || !e.abs().is_one() {
            return None;
        }
        found = Some(i);
    }
    found
}

/// Inverse of a unimodular matrix, via its Smith decomposition.
pub fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    assert!(m.is_unimodular(), "matrix is not unimodular");
    let snf = smith_normal_form(m);
    assert!(snf.d.is_identity());
    snf.v.mul(&snf.u)
}

/// Cokernel presentation of `Z^m` by the rows of `R`; see
/// [`AbelianGroupPresentation`].
pub fn cokernel_presentation(r: &IntMatrix) -> AbelianGroupPresentation {
    AbelianGroupPresentation::new(r.clone())
}

#[cfg(test)]
mod tests;
