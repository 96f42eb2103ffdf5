//! Exact matrices, subspaces and quotients.

pub(crate) mod echelon;
mod subspace;
mod system;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use echelon::{dispatch, lift_row, lower_row, Arith, Echelon};

pub use subspace::{QuotientSpace, Subspace};
pub use system::{LinearSystem, Term};

/// A matrix over an exact field.
///
/// Storage is dense when more than a quarter of the entries are nonzero and
/// row-sparse otherwise; the choice is invisible to callers.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Storage,
}

#[derive(Clone)]
enum Storage {
    Dense(Vec<Scalar>),
    Sparse(Vec<Vec<(usize, Scalar)>>),
}

/// Iterator over the nonzero entries of one row.
pub enum RowIter<'a> {
    Dense(std::iter::Enumerate<std::slice::Iter<'a, Scalar>>),
    Sparse(std::slice::Iter<'a, (usize, Scalar)>),
}

impl<'a> Iterator for RowIter<'a> {
    type Item = (usize, &'a Scalar);
    fn next(&mut self) -> Option<Self::Item> {
        match self {
            RowIter::Dense(it) => it.find(|(_, s)| !s.is_zero()),
            RowIter::Sparse(it) => it.next().map(|(c, s)| (*c, s)),
        }
    }
}

/// Column order used when choosing pivots in a solve.
///
/// Different orders pick different particular solutions of the same system.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Natural,
    Reversed,
    Seeded(u64),
}

impl PivotOrder {
    /// `perm[j]` is the original column placed at position `j`.
    fn permutation(&self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        match self {
            PivotOrder::Natural => {}
            PivotOrder::Reversed => perm.reverse(),
            PivotOrder::Seeded(seed) => perm.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed)),
        }
        perm
    }
}

impl Matrix {
    fn from_sorted_rows(field: Field, rows: usize, cols: usize, data: Vec<Vec<(usize, Scalar)>>) -> Matrix {
        let nnz: usize = data.iter().map(Vec::len).sum();
        let storage = if nnz * 4 > rows * cols {
            let mut dense = vec![field.zero(); rows * cols];
            for (r, row) in data.into_iter().enumerate() {
                for (c, s) in row {
                    dense[r * cols + c] = s;
                }
            }
            Storage::Dense(dense)
        } else {
            Storage::Sparse(data)
        };
        Matrix { field, rows, cols, data: storage }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: Storage::Sparse(vec![Vec::new(); rows]) }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_triplets(field, n, n, (0..n).map(|i| (i, i, field.one())))
    }

    /// Duplicate positions are summed. Panics on out-of-range indices.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Matrix {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, s) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            assert_eq!(s.field(), field, "entry from another field");
            if s.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_insert_with(|| field.zero());
            *slot = &*slot + &s;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, s)| !s.is_zero()).collect())
            .collect();
        Matrix::from_sorted_rows(field, rows, cols, data)
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_cols(field, rows, cols)
    }

    pub fn from_rows_with_cols(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            let mut sparse = Vec::new();
            for (c, s) in row.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if !s.is_zero() {
                    sparse.push((c, s));
                }
            }
            data.push(sparse);
        }
        Ok(Matrix::from_sorted_rows(field, n, cols, data))
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
        }
        Ok(Matrix::from_triplets(
            field,
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, s)| (i, j, s.clone()))),
        ))
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_triplets(field, v.len(), 1, v.iter().enumerate().map(|(i, s)| (i, 0, s.clone())))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.data, Storage::Dense(_))
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|r| self.row(r).count()).sum()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|r| self.row(r).next().is_none())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> RowIter<'_> {
        match &self.data {
            Storage::Dense(d) => RowIter::Dense(d[r * self.cols..(r + 1) * self.cols].iter().enumerate()),
            Storage::Sparse(s) => RowIter::Sparse(s[r].iter()),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) outside {}x{}", self.rows, self.cols);
        match &self.data {
            Storage::Dense(d) => d[r * self.cols + c].clone(),
            Storage::Sparse(s) => match s[r].binary_search_by_key(&c, |(j, _)| *j) {
                Ok(k) => s[r][k].1.clone(),
                Err(_) => self.field.zero(),
            },
        }
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| {
                let mut out = vec![self.field.zero(); self.cols];
                for (c, s) in self.row(r) {
                    out[c] = s.clone();
                }
                out
            })
            .collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<Scalar>> {
        self.transpose().to_rows()
    }

    /// Every entry as text, row-major.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.iter().map(Scalar::to_string).collect())
            .collect()
    }

    fn triplets(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, s)| (r, c, s.clone())))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_triplets(self.field, self.cols, self.rows, self.triplets().map(|(r, c, s)| (c, r, s)))
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        if k.is_zero() {
            return Matrix::zeros(self.field, self.rows, self.cols);
        }
        Matrix::from_triplets(self.field, self.rows, self.cols, self.triplets().map(|(r, c, s)| (r, c, &s * k)))
    }

    fn check_same_shape(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "sum")?;
        Ok(Matrix::from_triplets(self.field, self.rows, self.cols, self.triplets().chain(other.triplets())))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "difference")?;
        Ok(Matrix::from_triplets(
            self.field,
            self.rows,
            self.cols,
            self.triplets().chain(other.triplets().map(|(r, c, s)| (r, c, -s))),
        ))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self.field;
        let data = dispatch!(field, ar => {
            let right: Vec<Vec<(usize, _)>> =
                (0..other.rows).map(|r| lift_row(ar, &other.row_vec(r), 0)).collect();
            let mut acc = vec![ar.zero(); other.cols];
            let mut touched = vec![false; other.cols];
            let mut out = Vec::with_capacity(self.rows);
            for r in 0..self.rows {
                let mut support = Vec::new();
                for (k, a) in self.row(r) {
                    let a = ar.lift(a);
                    for (c, b) in &right[k] {
                        acc[*c] = ar.add_mul(&acc[*c], &a, b);
                        if !touched[*c] {
                            touched[*c] = true;
                            support.push(*c);
                        }
                    }
                }
                support.sort_unstable();
                let mut row = Vec::with_capacity(support.len());
                for c in support {
                    touched[c] = false;
                    let v = std::mem::replace(&mut acc[c], ar.zero());
                    if !ar.is_zero(&v) {
                        row.push((c, ar.lower(&v)));
                    }
                }
                out.push(row);
            }
            out
        });
        Ok(Matrix::from_sorted_rows(field, self.rows, other.cols, data))
    }

    fn row_vec(&self, r: usize) -> Vec<(usize, Scalar)> {
        self.row(r).map(|(c, s)| (c, s.clone())).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .fold(self.field.zero(), |acc, (c, s)| &acc + &(s * &v[c]))
            })
            .collect()
    }

    /// Kronecker product with row index `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        let (rb, cb) = (other.rows, other.cols);
        let mut entries = Vec::new();
        for (i, j, a) in self.triplets() {
            for (k, l, b) in other.triplets() {
                entries.push((i * rb + k, j * cb + l, &a * &b));
            }
        }
        Matrix::from_triplets(self.field, self.rows * rb, self.cols * cb, entries)
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let mut entries = Vec::new();
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            entries.extend(b.triplets().map(|(r, c, s)| (r, c + offset, s)));
            offset += b.cols;
        }
        Matrix::from_triplets(field, rows, offset, entries)
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut entries = Vec::new();
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            entries.extend(b.triplets().map(|(r, c, s)| (r + offset, c, s)));
            offset += b.rows;
        }
        Matrix::from_triplets(field, offset, cols, entries)
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let mut entries = Vec::new();
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            entries.extend(b.triplets().map(|(r, c, s)| (r + ro, c + co, s)));
            ro += b.rows;
            co += b.cols;
        }
        Matrix::from_triplets(field, ro, co, entries)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data: Vec<_> = idx.iter().map(|&r| self.row_vec(r)).collect();
        Matrix::from_sorted_rows(self.field, idx.len(), self.cols, data)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![Vec::new(); self.cols];
        for (j, &c) in idx.iter().enumerate() {
            pos[c].push(j);
        }
        let entries: Vec<_> = self
            .triplets()
            .flat_map(|(r, c, s)| pos[c].iter().map(move |&j| (r, j, s.clone())).collect::<Vec<_>>())
            .collect();
        Matrix::from_triplets(self.field, self.rows, idx.len(), entries)
    }

    /// Reduced row echelon form and its strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = self.rref_rows();
        let mut data = rows;
        data.resize(self.rows, Vec::new());
        (Matrix::from_sorted_rows(self.field, self.rows, self.cols, data), pivots)
    }

    /// Nonzero rows of the reduced echelon form, with pivots.
    pub(crate) fn rref_rows(&self) -> (Vec<Vec<(usize, Scalar)>>, Vec<usize>) {
        dispatch!(self.field, ar => {
            let mut ech = Echelon::new(ar, self.cols, self.cols);
            for r in 0..self.rows {
                ech.insert(&lift_row(ar, &self.row_vec(r), 0));
            }
            let (rows, pivots) = ech.into_rref();
            (rows.iter().map(|row| lower_row(ar, row)).collect(), pivots)
        })
    }

    pub fn rank(&self) -> usize {
        dispatch!(self.field, ar => {
            let mut ech = Echelon::new(ar, self.cols, self.cols);
            for r in 0..self.rows {
                ech.insert(&lift_row(ar, &self.row_vec(r), 0));
            }
            ech.rank()
        })
    }

    /// `{v : self * v = 0}` with the canonical basis read off the RREF.
    pub fn kernel(&self) -> Subspace {
        let (rows, pivots) = self.rref_rows();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut free_pos = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut vectors = vec![vec![self.field.zero(); self.cols]; free.len()];
        for (k, &f) in free.iter().enumerate() {
            vectors[k][f] = self.field.one();
        }
        for (row, &p) in rows.iter().zip(&pivots) {
            for (c, s) in row {
                if *c != p {
                    vectors[free_pos[*c]][p] = -s;
                }
            }
        }
        Subspace::from_independent_unchecked(self.field, self.cols, vectors)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix_columns(self)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows)).ok().flatten()
    }

    /// One solution of `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let b = Matrix::column_vector(self.field, rhs);
        Ok(self.solve_matrix(&b)?.map(|x| x.column(0)))
    }

    /// Solves `self * X = rhs` for all columns at once; `None` if any column
    /// is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.solve_matrix_with(rhs, &PivotOrder::Natural)
    }

    pub fn solve_matrix_with(&self, rhs: &Matrix, order: &PivotOrder) -> Result<Option<Matrix>> {
        let cols = self.solve_columns_with(rhs, order)?;
        if cols.iter().any(Option::is_none) {
            return Ok(None);
        }
        let columns: Vec<Vec<Scalar>> = cols.into_iter().map(Option::unwrap).collect();
        Ok(Some(Matrix::from_columns(self.field, self.cols, &columns)?))
    }

    /// Per right-hand-side column: a solution, or `None` if inconsistent.
    ///
    /// Free variables are set to zero; the pivot choice follows `order`.
    pub fn solve_columns_with(&self, rhs: &Matrix, order: &PivotOrder) -> Result<Vec<Option<Vec<Scalar>>>> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.cols;
        let k = rhs.cols;
        let perm = order.permutation(n);
        let mut position = vec![0; n];
        for (j, &c) in perm.iter().enumerate() {
            position[c] = j;
        }
        let field = self.field;
        dispatch!(field, ar => {
            let mut ech = Echelon::new(ar, n + k, n);
            for r in 0..self.rows {
                let mut row: Vec<(usize, _)> =
                    self.row(r).map(|(c, s)| (position[c], ar.lift(s))).collect();
                row.sort_unstable_by_key(|(c, _)| *c);
                row.extend(rhs.row(r).map(|(c, s)| (n + c, ar.lift(s))));
                ech.insert(&row);
            }
            let mut bad = vec![false; k];
            for row in ech.leftover() {
                for (c, _) in row {
                    bad[c - n] = true;
                }
            }
            let (rows, pivots) = ech.into_rref();
            let mut out: Vec<Option<Vec<Scalar>>> = (0..k)
                .map(|j| if bad[j] { None } else { Some(vec![field.zero(); n]) })
                .collect();
            for (row, &p) in rows.iter().zip(&pivots) {
                for (c, v) in row {
                    if *c >= n {
                        if let Some(sol) = out[c - n].as_mut() {
                            sol[perm[p]] = ar.lower(v);
                        }
                    }
                }
            }
            Ok(out)
        })
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|r| self.row(r).eq(other.row(r)))
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.to_text_rows() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }
}
