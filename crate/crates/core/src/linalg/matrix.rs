use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::linalg::field::Field;

/// Dense matrix over a field with labelled rows and columns.
///
/// Labels are opaque keys (simplices, `(vertex, coordinate)` pairs, plain
/// indices) and must be unique along each axis.
#[derive(Clone, Debug)]
pub struct FieldMatrix<F: Field, R = usize, C = usize> {
    field: F,
    row_labels: Vec<R>,
    col_labels: Vec<C>,
    entries: Vec<Vec<F::Elem>>,
}

fn check_unique<L: Eq + Hash + Debug>(labels: &[L]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(format!("{l:?}")));
        }
    }
    Ok(())
}

impl<F: Field> FieldMatrix<F, usize, usize> {
    /// Unlabelled matrix (labels are the row/column indices).
    pub fn from_rows(field: F, ncols: usize, entries: Vec<Vec<F::Elem>>) -> Result<Self> {
        let rows = (0..entries.len()).collect();
        FieldMatrix::new(field, rows, (0..ncols).collect(), entries)
    }

    pub fn identity(field: F, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Self::from_rows(field, n, entries).expect("square")
    }
}

impl<F, R, C> FieldMatrix<F, R, C>
where
    F: Field,
    R: Clone + Eq + Hash + Debug,
    C: Clone + Eq + Hash + Debug,
{
    pub fn new(field: F, row_labels: Vec<R>, col_labels: Vec<C>, entries: Vec<Vec<F::Elem>>) -> Result<Self> {
        if entries.len() != row_labels.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows but {} row labels",
                entries.len(),
                row_labels.len()
            )));
        }
        if let Some(row) = entries.iter().find(|r| r.len() != col_labels.len()) {
            return Err(Error::SizeMismatch(format!(
                "row of length {} but {} column labels",
                row.len(),
                col_labels.len()
            )));
        }
        check_unique(&row_labels)?;
        check_unique(&col_labels)?;
        Ok(Self {
            field,
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn zeros(field: F, row_labels: Vec<R>, col_labels: Vec<C>) -> Result<Self> {
        let entries = vec![vec![field.zero(); col_labels.len()]; row_labels.len()];
        Self::new(field, row_labels, col_labels, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }
    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }
    pub fn row_labels(&self) -> &[R] {
        &self.row_labels
    }
    pub fn col_labels(&self) -> &[C] {
        &self.col_labels
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.entries
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i][j] = v;
    }

    pub fn row_index(&self, label: &R) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }
    pub fn col_index(&self, label: &C) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    pub fn rank(&self) -> usize {
        self.field.pivot_columns(&self.entries, self.ncols()).len()
    }

    /// Dimension of the right kernel: `cols - rank`.
    pub fn kernel_dim(&self) -> usize {
        self.ncols() - self.rank()
    }

    pub fn transpose(&self) -> FieldMatrix<F, C, R> {
        let entries = (0..self.ncols())
            .map(|j| self.entries.iter().map(|row| row[j].clone()).collect())
            .collect();
        FieldMatrix {
            field: self.field.clone(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    /// Restriction to the given rows, in the given order.
    pub fn restrict_rows(&self, labels: &[R]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| {
                self.row_index(l)
                    .ok_or_else(|| Error::Invalid(format!("unknown row label {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            self.field.clone(),
            labels.to_vec(),
            self.col_labels.clone(),
            idx.iter().map(|&i| self.entries[i].clone()).collect(),
        )
    }

    /// Restriction to the given columns, in the given order.
    pub fn restrict_cols(&self, labels: &[C]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| {
                self.col_index(l)
                    .ok_or_else(|| Error::Invalid(format!("unknown column label {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            self.field.clone(),
            self.row_labels.clone(),
            labels.to_vec(),
            self.entries
                .iter()
                .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        )
    }

    /// The order-minimal column basis: columns are scanned in increasing
    /// `order` and a column is kept iff it is not in the span of the kept
    /// ones. Returned in scan order.
    pub fn greedy_column_basis<O>(&self, mut order: O) -> Vec<C>
    where
        O: FnMut(&C, &C) -> Ordering,
    {
        let mut perm: Vec<usize> = (0..self.ncols()).collect();
        perm.sort_by(|&a, &b| order(&self.col_labels[a], &self.col_labels[b]));
        let permuted: Vec<Vec<F::Elem>> = self
            .entries
            .iter()
            .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
            .collect();
        self.field
            .pivot_columns(&permuted, perm.len())
            .into_iter()
            .map(|p| self.col_labels[perm[p]].clone())
            .collect()
    }

    /// Order-minimal row basis (greedy over rows).
    pub fn greedy_row_basis<O>(&self, order: O) -> Vec<R>
    where
        O: FnMut(&R, &R) -> Ordering,
    {
        self.transpose().greedy_column_basis(order)
    }

    /// Matrix product `self * other`, keeping the outer labels.
    pub fn mul<D>(&self, other: &FieldMatrix<F, C, D>) -> Result<FieldMatrix<F, R, D>>
    where
        D: Clone + Eq + Hash + Debug,
    {
        if self.ncols() != other.nrows() {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..other.ncols())
                    .map(|j| {
                        row.iter().enumerate().fold(f.zero(), |acc, (k, a)| {
                            if f.is_zero(a) {
                                acc
                            } else {
                                f.add(&acc, &f.mul(a, &other.entries[k][j]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        FieldMatrix::new(f.clone(), self.row_labels.clone(), other.col_labels.clone(), entries)
    }
}

/// Incrementally maintained independent set of vectors in echelon form.
///
/// `insert` reports whether the vector increased the rank of the set.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<F: Field> {
    field: F,
    // (pivot position, reduced vector with a 1 at the pivot)
    echelon: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> IncrementalBasis<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            echelon: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    /// True iff `v` is independent of what was inserted before (it is then kept).
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        for (pivot, row) in &self.echelon {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Keep earlier rows reduced against the new pivot.
        for (_, row) in self.echelon.iter_mut() {
            if f.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                *x = f.sub(x, &f.mul(&factor, r));
            }
        }
        self.echelon.push((pivot, v));
        true
    }
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]);
        for i in (c + 1)..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.len();
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !field.is_zero(&m[i][c]))?;
        m.swap(p, c);
        let inv = field.inv(&m[c][c]);
        for j in c..=n {
            m[c][j] = field.mul(&m[c][j], &inv);
        }
        for i in 0..n {
            if i == c || field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..=n {
                let t = field.mul(&factor, &m[c][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}
