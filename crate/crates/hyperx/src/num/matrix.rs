use super::scalar::ExactScalar;
use crate::error::{Error, Result};
use std::fmt;

/// Dense exact matrix. All entries share one radicand context; mixing
/// distinct nonzero radicands is rejected at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    radicand: u64,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactScalar>) -> Result<Self> {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut radicand = 0u64;
        for e in &entries {
            let d = e.radicand();
            if d != 0 {
                if radicand == 0 {
                    radicand = d;
                } else if radicand != d {
                    return Err(Error::MixedRadicands(radicand, d));
                }
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            radicand,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            radicand: 0,
            entries: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn from_rows(rows: &[Vec<ExactScalar>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Self::new(r, c, rows.iter().flatten().cloned().collect())
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<ExactScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect())
            .collect();
        Self::from_rows(&data).expect("integer rows are radicand-free")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        let d = v.radicand();
        if d != 0 {
            if self.radicand == 0 {
                self.radicand = d;
            } else {
                assert_eq!(self.radicand, d, "mixed radicands in matrix");
            }
        }
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            radicand: self.radicand,
            entries: (0..self.cols * self.rows)
                .map(|idx| self.get(idx % self.rows, idx / self.rows).clone())
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ExactScalar::zero();
            for t in 0..self.cols {
                acc += self.get(i, t) * other.get(t, j);
            }
            acc
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let entries = row_idx
            .iter()
            .flat_map(|&i| col_idx.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        ExactMatrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            radicand: self.radicand,
            entries,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting. Intermediate entries stay divisions-exact, which keeps
    /// rational bit growth under control on integer input.
    pub fn determinant(&self) -> Result<ExactScalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ExactScalar::one());
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<ExactScalar>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = 1i32;
        let mut prev = ExactScalar::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) else {
                    return Ok(ExactScalar::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let pivot = at(&m, k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&pivot * &at(&m, i, j) - &(&at(&m, i, k) * &at(&m, k, j))) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = ExactScalar::zero();
            }
            prev = pivot;
        }
        let mut det = at(&m, n - 1, n - 1);
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// Exact rank over the field containing the entries.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        let mut pivot_col = 0;
        while rank < rows && pivot_col < cols {
            let pivot_row = (rank..rows).find(|&i| !m.get(i, pivot_col).is_zero());
            let Some(p) = pivot_row else {
                pivot_col += 1;
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    let a = m.get(rank, j).clone();
                    let b = m.get(p, j).clone();
                    m.entries[rank * cols + j] = b;
                    m.entries[p * cols + j] = a;
                }
            }
            let pivot = m.get(rank, pivot_col).clone();
            for i in rank + 1..rows {
                if m.get(i, pivot_col).is_zero() {
                    continue;
                }
                let factor = m.get(i, pivot_col) / &pivot;
                for j in pivot_col..cols {
                    let v = m.get(i, j) - &(&factor * m.get(rank, j));
                    m.entries[i * cols + j] = v;
                }
            }
            rank += 1;
            pivot_col += 1;
        }
        rank
    }

    /// True iff every k-by-k principal submatrix has rank exactly k-1.
    pub fn principal_minor_check(&self, k: usize) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        assert!(k >= 2 && k <= n, "need 2 <= k <= n");
        for subset in crate::hypersimplex::k_subsets(n, k) {
            if self.submatrix(&subset, &subset).rank() != k - 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Err(Error::VerificationFailed("matrix is singular".into()));
            };
            if p != col {
                for j in 0..n {
                    m.entries.swap(col * n + j, p * n + j);
                    inv.entries.swap(col * n + j, p * n + j);
                }
            }
            let pivot = m.get(col, col).inverse();
            for j in 0..n {
                let v = m.get(col, j) * &pivot;
                m.entries[col * n + j] = v;
                let v = inv.get(col, j) * &pivot;
                inv.entries[col * n + j] = v;
            }
            for i in 0..n {
                if i == col || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..n {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    m.entries[i * n + j] = v;
                    let v = inv.get(i, j) - &(&factor * inv.get(col, j));
                    inv.entries[i * n + j] = v;
                }
            }
        }
        Ok(inv)
    }

    /// A basis of the right nullspace, as rows.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        // reduced row echelon form
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.entries.swap(r * cols + j, p * cols + j);
                }
            }
            let pivot = m.get(r, c).inverse();
            for j in 0..cols {
                let v = m.get(r, j) * &pivot;
                m.entries[r * cols + j] = v;
            }
            for i in 0..rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.entries[i * cols + j] = v;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free_cols {
            let mut v = vec![ExactScalar::zero(); cols];
            v[fc] = ExactScalar::one();
            for &(pr, pc) in &pivots {
                v[pc] = -m.get(pr, fc).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} (radicand {})", self.rows, self.cols, self.radicand)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
