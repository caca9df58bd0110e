//! Dense exact matrices and the linear algebra every construction reduces to.
//!
//! Subspaces are handed around as matrices whose columns form a basis in
//! reduced column echelon form. That form is canonical: two subspaces are
//! equal exactly when their basis matrices are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Mat<F>,
    pub pivots: Vec<usize>,
}

/// A cokernel presented by the canonical projection onto the complement of
/// the image's pivot coordinates, and the coordinate section splitting it.
#[derive(Clone, Debug)]
pub struct Cokernel<F: Field> {
    pub projection: Mat<F>,
    pub section: Mat<F>,
}

impl<F: Field> Cokernel<F> {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    /// Row-major integer entries; handy for fixtures and tests.
    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self::from_fn(field, rows, cols, |r, c| field.from_i64(entries[r * cols + c]))
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self { field: field.clone(), rows: nrows, cols, data })
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::InvalidInput(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
        }
        Ok(Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn column_vector(field: &F, v: Vec<F::Elem>) -> Self {
        Self { field: field.clone(), rows: v.len(), cols: 1, data: v }
    }

    /// The `i`-th standard basis vector of a `n`-dimensional space.
    pub fn unit_vector(field: &F, n: usize, i: usize) -> Self {
        let mut m = Self::zeros(field, n, 1);
        m.data[i] = field.one();
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|e| !self.field.is_zero(e)).count()
    }

    pub fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.spec().to_string(),
                other.field.spec().to_string(),
            ))
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix product; skips zero entries on both sides.
    ///
    /// Panics on shape mismatch. Use [`Mat::checked_mul`] for untrusted shapes.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = &self.field;
        let n = other.cols;
        let other_nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..n).filter(|&j| !f.is_zero(other.get(k, j))).collect())
            .collect();
        let mut out = Self::zeros(f, self.rows, n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for &j in &other_nz[k] {
                    f.mul_add_assign(&mut out.data[i * n + j], a, other.get(k, j));
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in elementwise op");
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| self.field.mul(a, s)).collect(),
        }
    }

    /// Kronecker product: the basis vector `e_i ⊗ e_j` has index `i * dim₂ + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(f, self.rows * r2, self.cols * c2);
        let width = out.cols;
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = other.get(i2, j2);
                        if f.is_zero(b) {
                            continue;
                        }
                        out.data[(i1 * r2 + i2) * width + j1 * c2 + j2] = f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn checked_kron(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.kron(other))
    }

    /// Block-diagonal sum `M ⊕ N`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Side-by-side concatenation. All blocks must have `rows` rows.
    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, offset + c, b.get(r, c).clone());
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Stacked concatenation. All blocks must have `cols` columns.
    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// The symmetric braiding `V ⊗ W → W ⊗ V` for `dim V = a`, `dim W = b`.
    pub fn swap(field: &F, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(field, a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                m.set(j * a + i, i * b + j, field.one());
            }
        }
        m
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m: Vec<Vec<F::Elem>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
            if !f.is_one(&inv) {
                for e in m[r][c..].iter_mut() {
                    if !f.is_zero(e) {
                        *e = f.mul(e, &inv);
                    }
                }
            }
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !f.is_zero(&m[r][j])).collect();
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &nz {
                    let t = f.mul(&factor, &pivot_row[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let matrix = Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: m.into_iter().flatten().collect(),
        };
        Rref { matrix, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of the column span: reduced column echelon form,
    /// zero columns dropped.
    pub fn column_echelon(&self) -> Self {
        let Rref { matrix, pivots } = self.transpose().rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        matrix.select_rows(&idx).transpose()
    }

    /// Basis of the null space, canonicalized to reduced column echelon form.
    pub fn kernel_basis(&self) -> Self {
        let f = &self.field;
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (i, &p) in pivots.iter().enumerate() {
                let e = matrix.get(i, fc);
                if !f.is_zero(e) {
                    k.set(p, t, f.neg(e));
                }
            }
        }
        k.column_echelon()
    }

    pub fn image_basis(&self) -> Self {
        self.column_echelon()
    }

    /// Canonical cokernel of the map (columns span the image in the target).
    pub fn cokernel(&self) -> Cokernel<F> {
        Self::complement_of_span(&self.image_basis())
    }

    /// `(Q, dim)` with `Q · self = 0` and `Q` surjective.
    pub fn cokernel_projection(&self) -> (Self, usize) {
        let c = self.cokernel();
        let dim = c.dim();
        (c.projection, dim)
    }

    /// Quotient of the ambient space by the span of `basis`, which must
    /// already be in reduced column echelon form.
    pub fn complement_of_span(basis: &Self) -> Cokernel<F> {
        let f = &basis.field;
        let n = basis.rows;
        let pivot_rows: Vec<usize> = (0..basis.cols)
            .map(|c| (0..n).find(|&r| !f.is_zero(basis.get(r, c))).expect("nonzero basis column"))
            .collect();
        let mut is_pivot = vec![None; n];
        for (k, &p) in pivot_rows.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let free: Vec<usize> = (0..n).filter(|&r| is_pivot[r].is_none()).collect();
        let mut projection = Self::zeros(f, free.len(), n);
        let mut section = Self::zeros(f, n, free.len());
        for (t, &r) in free.iter().enumerate() {
            projection.set(t, r, f.one());
            section.set(r, t, f.one());
        }
        for (k, &p) in pivot_rows.iter().enumerate() {
            for (t, &r) in free.iter().enumerate() {
                let e = basis.get(r, k);
                if !f.is_zero(e) {
                    projection.set(t, p, f.neg(e));
                }
            }
        }
        Cokernel { projection, section }
    }

    /// Some `x` with `self · x = b`, or `None` when `b` is not in the column space.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        self.same_field(b)?;
        if b.rows != self.rows {
            return Err(Error::InvalidInput(format!(
                "right-hand side has {} rows, matrix has {}",
                b.rows, self.rows
            )));
        }
        let aug = Self::hstack(&self.field, self.rows, &[self, b]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(&self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..b.cols {
                x.set(p, k, matrix.get(i, self.cols + k).clone());
            }
        }
        Ok(Some(x))
    }

    /// `R` with `self · R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Result<Self> {
        let pivots = self.rref().pivots;
        if pivots.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "no right inverse: rank {} < {} rows",
                pivots.len(),
                self.rows
            )));
        }
        let square = self.select_cols(&pivots);
        let inv = square.inverse().expect("pivot columns are independent");
        let mut r = Self::zeros(&self.field, self.cols, self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..self.rows {
                r.set(p, c, inv.get(i, c).clone());
            }
        }
        Ok(r)
    }

    /// `L` with `L · self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Result<Self> {
        Ok(self.transpose().right_inverse()?.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let id = Self::identity(&self.field, self.rows);
        let aug = Self::hstack(&self.field, self.rows, &[self, &id]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let idx: Vec<usize> = (self.cols..2 * self.cols).collect();
        Some(matrix.select_cols(&idx))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Self) -> bool {
        let r = self.rank();
        Self::hstack(&self.field, self.rows, &[self, other]).rank() == r
    }
}

/// Matrix of a linear operator on `rows × cols` matrices.
///
/// Column `r·cols + c` is the concatenation (row-major) of the outputs of
/// `op` applied to the matrix unit `E_rc`. Solving against this matrix turns
/// "find all maps satisfying these identities" into plain kernels and solves.
pub fn operator_matrix<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    op: impl Fn(&Mat<F>) -> Vec<Mat<F>>,
) -> Mat<F> {
    let mut columns = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut unit = Mat::zeros(field, rows, cols);
            unit.set(r, c, field.one());
            columns.push(flatten(&op(&unit)));
        }
    }
    let height = match columns.first() {
        Some(c) => c.len(),
        None => flatten(&op(&Mat::zeros(field, rows, cols))).len(),
    };
    Mat::from_columns(field, height, &columns).expect("operator outputs have a fixed size")
}

/// Row-major concatenation of several matrices into one coordinate vector.
pub fn flatten<F: Field>(parts: &[Mat<F>]) -> Vec<F::Elem> {
    parts.iter().flat_map(|m| m.data.iter().cloned()).collect()
}

/// Inverse of [`flatten`] for a single `rows × cols` block.
pub fn unflatten<F: Field>(field: &F, rows: usize, cols: usize, v: &[F::Elem]) -> Mat<F> {
    Mat::from_fn(field, rows, cols, |r, c| v[r * cols + c].clone())
}

/// Intersection of two column spans, as a canonical basis.
pub fn intersect<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    // x = a·s = b·t  ⇔  [a | -b] (s, t) = 0
    let stacked = Mat::hstack(a.field(), a.rows(), &[a, &b.neg()]);
    let k = stacked.kernel_basis();
    let s = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    a.mul(&s).column_echelon()
}

/// Sum of column spans, as a canonical basis.
pub fn span_sum<F: Field>(field: &F, rows: usize, parts: &[&Mat<F>]) -> Mat<F> {
    Mat::hstack(field, rows, parts).column_echelon()
}
