use crate::error::{Error, Result};
use crate::exactlinalg::field::{FieldElement, FieldSpec};
use crate::exactlinalg::rank;

/// An immutable sparse matrix over a [`FieldSpec`].
///
/// Entries are kept sorted by `(row, col)` with no duplicates and no stored
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<(u32, u32, FieldElement)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from triplets. Repeated positions are summed and
    /// entries that cancel to zero are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, field: FieldSpec, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, FieldElement)>,
    {
        let mut raw: Vec<(u32, u32, FieldElement)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            field.check(&v)?;
            raw.push((r as u32, c as u32, v));
        }
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(u32, u32, FieldElement)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(&last.2, &v),
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|(_, _, v)| !v.is_zero());
        Ok(SparseMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Builds a matrix from small integer entries, reduced into `field`.
    pub fn from_dense_i64(field: FieldSpec, dense: &[Vec<i64>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged dense matrix".into()));
        }
        let triplets = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, field.from_i64(v))));
        Self::from_triplets(rows, cols, field, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> {
        self.entries.iter().map(|(r, c, v)| (*r as usize, *c as usize, v))
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        let key = (row as u32, col as u32);
        match self.entries.binary_search_by(|(r, c, _)| (*r, *c).cmp(&key)) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|a| (a.0, a.1));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    /// Rows as sparse vectors `(col, value)`, sorted by column.
    pub(crate) fn row_vectors(&self) -> Vec<Vec<(u32, FieldElement)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r as usize].push((*c, v.clone()));
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_vectors();
        let f = self.field;
        let mut triplets = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &other_rows[*k as usize] {
                triplets.push((*r as usize, *c as usize, f.mul(a, b)));
            }
        }
        SparseMatrix::from_triplets(self.rows, other.cols, f, triplets)
    }

    pub fn rank(&self) -> usize {
        rank::rank(self)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Reorders rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<SparseMatrix> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.field,
            self.entries().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone())),
        )
    }
}

/// Exact rank over the matrix's field.
pub fn rank_of(m: &SparseMatrix) -> usize {
    m.rank()
}

/// `cols - rank`.
pub fn kernel_dim(m: &SparseMatrix) -> usize {
    m.kernel_dim()
}
