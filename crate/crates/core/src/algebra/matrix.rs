//! Dense matrices over a [`Ring`] context.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::{Field, Ring};
use super::AlgebraError;

/// A dense row-major matrix with optional integer row and column labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    row_labels: Option<Vec<usize>>,
    col_labels: Option<Vec<usize>>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn zeros<R: Ring<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows_iter().map(<[T]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_labels(&self) -> Option<&[usize]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[usize]> {
        self.col_labels.as_deref()
    }

    pub fn with_row_labels(mut self, labels: Vec<usize>) -> Result<Self, AlgebraError> {
        if labels.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch("row label count".into()));
        }
        self.row_labels = Some(labels);
        Ok(self)
    }

    pub fn with_col_labels(mut self, labels: Vec<usize>) -> Result<Self, AlgebraError> {
        if labels.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch("column label count".into()));
        }
        self.col_labels = Some(labels);
        Ok(self)
    }

    /// Map every entry, keeping labels.
    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The submatrix on the given 0-based row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// All rows, restricted to the given 0-based columns.
    pub fn columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn mul<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for t in 0..self.cols {
                let (a, b) = (self.get(i, t), other.get(t, j));
                if ring.is_zero(a) || ring.is_zero(b) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, b));
            }
            acc
        }))
    }

    /// Determinant by Laplace expansion with memoization over column
    /// subsets; uses only ring operations.
    pub fn det_division_free<R: Ring<Elem = T>>(&self, ring: &R) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ring.one());
        }
        assert!(n < usize::BITS as usize, "matrix too large for subset expansion");
        // minors[mask] = det of the last popcount(mask) rows on columns in mask
        let mut minors: HashMap<usize, T> = HashMap::new();
        minors.insert(0, ring.one());
        let mut layer: Vec<usize> = vec![0];
        for step in 0..n {
            let row = n - 1 - step;
            let mut next: HashMap<usize, T> = HashMap::new();
            for &mask in &layer {
                let sub = minors[&mask].clone();
                if ring.is_zero(&sub) {
                    continue;
                }
                for c in 0..n {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let e = self.get(row, c);
                    if ring.is_zero(e) {
                        continue;
                    }
                    // sign from the position of c among the columns of the new minor
                    let before = (mask & ((1 << c) - 1)).count_ones();
                    let mut term = ring.mul(e, &sub);
                    if before % 2 == 1 {
                        term = ring.neg(&term);
                    }
                    let key = mask | (1 << c);
                    let slot = next.entry(key).or_insert_with(|| ring.zero());
                    *slot = ring.add(slot, &term);
                }
            }
            layer = next.keys().copied().collect();
            layer.sort_unstable();
            minors = next;
        }
        Ok(minors
            .remove(&((1usize << n) - 1))
            .unwrap_or_else(|| ring.zero()))
    }

    /// Determinant by Gaussian elimination over a field.
    pub fn det_gauss<F: Field<Elem = T>>(&self, field: &F) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
                return Ok(field.zero());
            };
            if p != col {
                a.swap(p, col);
                det = field.neg(&det);
            }
            let pivot = a[col][col].clone();
            det = field.mul(&det, &pivot);
            let inv = field.inv(&pivot).expect("nonzero pivot");
            for r in col + 1..n {
                if field.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = field.mul(&a[r][col], &inv);
                for c in col..n {
                    let v = field.sub(&a[r][c], &field.mul(&factor, &a[col][c]));
                    a[r][c] = v;
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form and its 0-based pivot columns.
    pub fn rref<F: Field<Elem = T>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(p, r);
            let inv = field.inv(&a[r][c]).expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
            for i in 0..self.rows {
                if i == r || field.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in 0..self.cols {
                    let v = field.sub(&a[i][j], &field.mul(&factor, &a[r][j]));
                    a[i][j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::from_fn(self.rows, self.cols, |i, j| a[i][j].clone());
        out.col_labels = self.col_labels.clone();
        (out, pivots)
    }

    pub fn rank<F: Field<Elem = T>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// String form of every entry, for serialization.
    pub fn to_json_with(&self, fmt: impl Fn(&T) -> String) -> MatrixJson {
        MatrixJson {
            rows: self.rows_iter().map(|r| r.iter().map(&fmt).collect()).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn from_json_with(
        json: &MatrixJson,
        parse: impl Fn(&str) -> Result<T, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let rows = json
            .rows
            .iter()
            .map(|r| r.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = Matrix::from_rows(rows)?;
        if let Some(l) = &json.row_labels {
            m = m.with_row_labels(l.clone())?;
        }
        if let Some(l) = &json.col_labels {
            m = m.with_col_labels(l.clone())?;
        }
        Ok(m)
    }
}

/// Wire format for matrices: entries as strings plus optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<usize>>,
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let mut widths = vec![0; self.cols];
        for (idx, c) in cells.iter().enumerate() {
            let w = &mut widths[idx % self.cols.max(1)];
            *w = (*w).max(c.chars().count());
        }
        for i in 0..self.rows {
            if let Some(l) = &self.row_labels {
                write!(f, "{:>3} | ", l[i])?;
            }
            for j in 0..self.cols {
                let c = &cells[i * self.cols + j];
                let pad = widths[j] - c.chars().count();
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{}{}", " ".repeat(pad), c)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
