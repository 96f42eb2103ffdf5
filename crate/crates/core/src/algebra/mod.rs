//! Algebras by structure constants, bimodules, centers and derivations.

mod bimodule;
pub mod constructions;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

pub use bimodule::{Bimodule, BimoduleMap, BimoduleViolation, DirectSum, TensorOverA};

/// A finite-dimensional unital associative algebra.
///
/// `e_i e_j = Σ_k c(i,j,k) e_k`; omitted constants are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    basis: Vec<String>,
    unit: Vec<Scalar>,
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
}

/// A failed algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AlgebraViolation::LeftUnit { i } => write!(f, "unit * e_{i} != e_{i}"),
            AlgebraViolation::RightUnit { i } => write!(f, "e_{i} * unit != e_{i}"),
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, over {}, basis {:?})", self.dim(), self.field, self.basis)
    }
}

impl Algebra {
    /// Builds an algebra from structure constants `(i, j, k, c)`.
    ///
    /// Only shapes are checked here; see [`Algebra::validate`] and
    /// [`Algebra::checked`].
    pub fn new(
        field: Field,
        basis: Vec<String>,
        unit: Vec<Scalar>,
        table: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Algebra> {
        let d = basis.len();
        if unit.len() != d {
            return Err(Error::InvalidAlgebra(format!("unit has {} coordinates, dimension is {d}", unit.len())));
        }
        if unit.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut dense: Vec<Vec<Vec<Scalar>>> = vec![vec![vec![field.zero(); d]; d]; d];
        for (i, j, k, c) in table {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidAlgebra(format!("structure constant ({i},{j},{k}) out of range for dimension {d}")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            dense[i][j][k] = &dense[i][j][k] + &c;
        }
        let products = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect())
                    .collect()
            })
            .collect();
        Ok(Algebra { field, basis, unit, products })
    }

    /// [`Algebra::new`] followed by a full axiom check.
    pub fn checked(
        field: Field,
        basis: Vec<String>,
        unit: Vec<Scalar>,
        table: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Algebra> {
        let a = Algebra::new(field, basis, unit, table)?;
        let violations = a.validate();
        if violations.is_empty() {
            Ok(a)
        } else {
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidAlgebra(list.join("; ")))
        }
    }

    /// All violated associativity and unit identities on basis elements.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul_sparse_basis(&ij, k, true);
                    let right = self.mul_sparse_basis(&self.basis_product(j, k), i, false);
                    if left != right {
                        out.push(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e {
                out.push(AlgebraViolation::LeftUnit { i });
            }
            if self.mul(&e, &self.unit) != e {
                out.push(AlgebraViolation::RightUnit { i });
            }
        }
        out
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in &self.products[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    /// `x * e_k` (when `x_left`) or `e_k * x`, for a dense vector `x`.
    fn mul_sparse_basis(&self, x: &[Scalar], k: usize, x_left: bool) -> Vec<Scalar> {
        let e = self.basis_vector(k);
        if x_left {
            self.mul(x, &e)
        } else {
            self.mul(&e, x)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.products.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                for (k, c) in prod {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Sparse coordinates of `e_i e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.products[i][j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_triplets(
            self.field,
            d,
            d,
            (0..d).flat_map(|j| self.products[i][j].iter().map(move |(k, c)| (*k, j, c.clone()))),
        )
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_mult_basis(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_triplets(
            self.field,
            d,
            d,
            (0..d).flat_map(|j| self.products[j][i].iter().map(move |(k, c)| (*k, j, c.clone()))),
        )
    }

    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), a, |i| self.left_mult_basis(i))
    }

    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), a, |i| self.right_mult_basis(i))
    }

    /// Multiplication `A ⊗ A → A` as a `d × d²` matrix (column `i d + j`).
    pub fn multiplication_matrix(&self) -> Matrix {
        let d = self.dim();
        Matrix::from_triplets(
            self.field,
            d,
            d * d,
            (0..d).flat_map(|i| {
                (0..d).flat_map(move |j| self.products[i][j].iter().map(move |(k, c)| (*k, i * d + j, c.clone())))
            }),
        )
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.products[i][j] == self.products[j][i]))
    }

    /// `{z : z e_i = e_i z for all i}`.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let blocks: Vec<Matrix> = (0..d).map(|i| &self.right_mult_basis(i) - &self.left_mult_basis(i)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(self.field, d, &refs).kernel()
    }

    pub fn is_central(&self, z: &[Scalar]) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.basis_vector(i);
            self.mul(z, &e) == self.mul(&e, z)
        })
    }

    /// Checks that `map` (columns = images of basis vectors) is a unital
    /// algebra endomorphism.
    pub fn is_endomorphism(&self, map: &Matrix) -> bool {
        let d = self.dim();
        if map.rows() != d || map.cols() != d {
            return false;
        }
        if map.mul_vec(&self.unit) != self.unit {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..d).map(|i| map.column(i)).collect();
        (0..d).all(|i| {
            (0..d).all(|j| map.mul_vec(&self.basis_product(i, j)) == self.mul(&images[i], &images[j]))
        })
    }

    /// Human-readable form of a vector in this basis.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| if c.is_one() { name.clone() } else { format!("({c})*{name}") })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// `Der_K(A, M)` and `Inn_K(A, M)` as subspaces of `Hom_K(A, M)`.
///
/// A linear map `D` is the vector with entry `t · dim M + r` equal to
/// `D(e_t)_r`, matching the degree-1 cochain layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub derivations: Subspace,
    pub inner: Subspace,
}

impl DerivationSpace {
    pub fn outer_dim(&self) -> usize {
        self.derivations.dim() - self.inner.dim()
    }
}

/// Solves the Leibniz system `D(e_i e_j) = e_i D(e_j) + D(e_i) e_j`.
pub fn derivation_space(m: &Bimodule) -> DerivationSpace {
    let a = m.algebra();
    let (d, n, f) = (a.dim(), m.dim(), a.field());
    let var = |t: usize, r: usize| t * n + r;
    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let row0 = (i * d + j) * n;
            for (k, c) in a.product_of_basis(i, j) {
                for r in 0..n {
                    entries.push((row0 + r, var(*k, r), c.clone()));
                }
            }
            for s in 0..n {
                for (r, x) in m.left(i).transpose().row(s) {
                    entries.push((row0 + r, var(j, s), -x));
                }
                for (r, x) in m.right(j).transpose().row(s) {
                    entries.push((row0 + r, var(i, s), -x));
                }
            }
        }
    }
    let leibniz = Matrix::from_triplets(f, d * d * n, d * n, entries);
    let mut inner_gens = Vec::new();
    for v in 0..n {
        let mut vec = vec![f.zero(); d * n];
        for t in 0..d {
            let (lv, rv) = (m.left(t).column(v), m.right(t).column(v));
            for r in 0..n {
                vec[var(t, r)] = &lv[r] - &rv[r];
            }
        }
        inner_gens.push(vec);
    }
    DerivationSpace {
        derivations: leibniz.kernel(),
        inner: Subspace::span(f, d * n, &inner_gens).expect("lengths match"),
    }
}

pub(crate) fn combine(field: Field, n: usize, coeffs: &[Scalar], basis: impl Fn(usize) -> Matrix) -> Matrix {
    let mut acc = Matrix::zeros(field, n, n);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis(i).scale(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests;
