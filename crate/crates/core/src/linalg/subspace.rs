use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::Matrix;

/// A linear subspace of `K^n`, stored by its reduced echelon basis.
///
/// The basis is canonical, so `==` compares spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: (0..ambient).map(|i| vec![(i, field.one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let m = Matrix::from_rows_with_cols(field, vectors.to_vec(), ambient)?;
        Ok(Subspace::from_matrix_rows(&m))
    }

    pub(crate) fn from_independent_unchecked(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let m = Matrix::from_rows_with_cols(field, vectors, ambient).expect("vector lengths match ambient");
        Subspace::from_matrix_rows(&m)
    }

    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let (rows, pivots) = m.rref_rows();
        Subspace { field: m.field(), ambient: m.cols(), rows, pivots }
    }

    pub fn from_matrix_columns(m: &Matrix) -> Subspace {
        Subspace::from_matrix_rows(&m.transpose())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (c, s) in row {
                    v[*c] = s.clone();
                }
                v
            })
            .collect()
    }

    /// Basis as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_triplets(
            self.field,
            self.ambient,
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .flat_map(|(j, row)| row.iter().map(move |(c, s)| (*c, j, s.clone()))),
        )
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient space of dimension {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates with respect to the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.check_len(v)?;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (j, s) in row {
                residual[*j] = &residual[*j] - &(c * s);
            }
        }
        Ok(residual.iter().all(Scalar::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let stacked = Matrix::hstack(self.field, self.ambient, &[&a, &-&b]);
        let kernel = stacked.kernel();
        let k = self.dim();
        let vectors: Vec<Vec<Scalar>> = kernel
            .basis_vectors()
            .into_iter()
            .map(|x| a.mul_vec(&x[..k]))
            .collect();
        Subspace::span(self.field, self.ambient, &vectors)
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map does not act on this ambient space".into()));
        }
        Ok(Subspace::from_matrix_columns(&m.checked_mul(&self.basis_matrix())?))
    }
}

/// `K^n / relations` with a canonical projection and section.
///
/// Quotient coordinates are the non-pivot columns of the relations' echelon
/// basis; the section sends them back to standard basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    relations: Subspace,
    projection: Matrix,
    section: Matrix,
}

impl QuotientSpace {
    pub fn new(relations: Subspace) -> QuotientSpace {
        let field = relations.field;
        let n = relations.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &relations.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut free_pos = vec![usize::MAX; n];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut proj = Vec::new();
        for (k, &f) in free.iter().enumerate() {
            proj.push((k, f, field.one()));
        }
        for (row, &p) in relations.rows.iter().zip(&relations.pivots) {
            for (c, s) in row {
                if *c != p {
                    proj.push((free_pos[*c], p, -s));
                }
            }
        }
        let q = free.len();
        let projection = Matrix::from_triplets(field, q, n, proj);
        let section = Matrix::from_triplets(field, n, q, free.iter().enumerate().map(|(k, &f)| (f, k, field.one())));
        QuotientSpace { relations, projection, section }
    }

    pub fn of_span(field: Field, ambient: usize, relations: &[Vec<Scalar>]) -> Result<QuotientSpace> {
        Ok(QuotientSpace::new(Subspace::span(field, ambient, relations)?))
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// `dim × ambient`
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `ambient × dim`
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        self.section.mul_vec(q)
    }
}
