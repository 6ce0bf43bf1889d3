//! Square integer matrices acting on the lattice.

// Index loops mirror the (i, j) entry formulas.
#![allow(clippy::needless_range_loop)]

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Square integer matrix over raw basis coordinates (see the module docs of
/// [`crate::lattice`] for the sign convention). All arithmetic accumulates
/// in 128 bits and reports overflow instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl IntegerMatrix {
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        IntegerMatrix { dim, rows }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse(
                "matrix rows must form a nonempty square".into(),
            ));
        }
        Ok(IntegerMatrix { dim, rows })
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut seen = vec![false; dim];
        let mut rows = vec![vec![0i64; dim]; dim];
        for (i, &p) in perm.iter().enumerate() {
            if p >= dim || seen[p] {
                return Err(Error::Parse("not a permutation".into()));
            }
            seen[p] = true;
            rows[p][i] = 1;
        }
        Ok(IntegerMatrix { dim, rows })
    }

    /// The reflection by `e_0 - e_1 - e_2 - e_3` embedded in dimension
    /// `dim >= 4`.
    pub fn sigma0(dim: usize) -> Result<Self> {
        if dim < 4 {
            return Err(Error::Precondition("sigma0 needs dimension >= 4".into()));
        }
        let mut m = IntegerMatrix::identity(dim);
        let block = [
            [2, 1, 1, 1],
            [-1, 0, -1, -1],
            [-1, -1, 0, -1],
            [-1, -1, -1, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                m.rows[i][j] = block[i][j];
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.dim != other.dim {
            return Err(Error::Precondition("matrix dimension mismatch".into()));
        }
        let n = self.dim;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    let p = (self.rows[i][k] as i128)
                        .checked_mul(other.rows[k][j] as i128)
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow)?;
                }
                rows[i][j] = i64::try_from(acc).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(IntegerMatrix { dim: n, rows })
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let n = self.dim;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.rows[j][i]).collect())
            .collect();
        IntegerMatrix { dim: n, rows }
    }

    /// Conjugation by `J = diag(1, -1, ..., -1)`: flips the sign of entries
    /// with exactly one index equal to zero.
    fn j_conjugate(&self) -> IntegerMatrix {
        let n = self.dim;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = if (i == 0) != (j == 0) { -1 } else { 1 };
                        s * self.rows[i][j]
                    })
                    .collect()
            })
            .collect();
        IntegerMatrix { dim: n, rows }
    }

    /// Inverse of a `J`-orthogonal matrix: `J M^T J`.
    pub fn orthogonal_inverse(&self) -> IntegerMatrix {
        self.transpose().j_conjugate()
    }

    /// True iff `M^T J M = J` with `J = diag(1, -1, ..., -1)`.
    pub fn preserves_form(&self) -> Result<bool> {
        Ok(self.mul(&self.orthogonal_inverse())? == IntegerMatrix::identity(self.dim))
    }

    /// True iff `M` fixes the canonical vector `-3 e_0 + e_1 + ... + e_n`.
    pub fn fixes_canonical_class(&self) -> Result<bool> {
        let n = self.dim;
        for i in 0..n {
            let mut acc: i128 = 0;
            for j in 0..n {
                let k = if j == 0 { -3i128 } else { 1 };
                acc = acc
                    .checked_add(
                        k.checked_mul(self.rows[i][j] as i128)
                            .ok_or(Error::Overflow)?,
                    )
                    .ok_or(Error::Overflow)?;
            }
            let expect = if i == 0 { -3 } else { 1 };
            if acc != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> bool {
        *self == IntegerMatrix::identity(self.dim)
    }

    /// True iff the matrix permutes the basis vectors and fixes `e_0`.
    pub fn is_index_permutation(&self) -> bool {
        if self.rows[0][0] != 1 {
            return false;
        }
        for i in 0..self.dim {
            let mut ones = 0;
            for j in 0..self.dim {
                match self.rows[i][j] {
                    0 => {}
                    1 => ones += 1,
                    _ => return false,
                }
            }
            if ones != 1 {
                return false;
            }
        }
        for j in 0..self.dim {
            let col_ones = (0..self.dim).filter(|&i| self.rows[i][j] == 1).count();
            if col_ones != 1 {
                return false;
            }
        }
        true
    }

    /// Applies the matrix to a vector in the stored `(d; m_1, ...)`
    /// convention: converts to raw coordinates, multiplies, converts back.
    /// Indices beyond the matrix dimension must be absent.
    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.support_len() > self.dim {
            return Err(Error::Precondition(format!(
                "vector support {} exceeds matrix dimension {}",
                v.support_len(),
                self.dim
            )));
        }
        let raw = v.raw_coords(self.dim)?;
        let mut out = vec![0i64; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: i128 = 0;
            for (j, &a) in row.iter().enumerate() {
                acc = acc
                    .checked_add(
                        (a as i128)
                            .checked_mul(raw[j] as i128)
                            .ok_or(Error::Overflow)?,
                    )
                    .ok_or(Error::Overflow)?;
            }
            out[i] = i64::try_from(acc).map_err(|_| Error::Overflow)?;
        }
        LatticeVector::from_raw_coords(&out)
    }

    /// Column 0 as a lattice vector, i.e. the image of `e_0`.
    pub fn image_of_e0(&self) -> Result<LatticeVector> {
        let col: Vec<i64> = (0..self.dim).map(|i| self.rows[i][0]).collect();
        LatticeVector::from_raw_coords(&col)
    }

    /// Embeds into a larger dimension, acting as the identity on the new
    /// basis vectors.
    pub fn embed(&self, dim: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::identity(dim.max(self.dim));
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.rows[i][j] = self.rows[i][j];
            }
        }
        m
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join(" "))?;
        }
        Ok(())
    }
}
