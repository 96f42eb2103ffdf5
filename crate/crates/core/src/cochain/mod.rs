//! The Hochschild cocomplex `C^n(A, M) = Hom_K(A^{⊗n}, M)`.
//!
//! A degree-`n` cochain is a `dim M × d^n` matrix. Column `t` is the value on
//! `e_{i_1} ⊗ ⋯ ⊗ e_{i_n}` with `t = Σ_k i_k d^{n-k}` (lexicographic, `i_1`
//! most significant). As a flat vector the entry `(r, t)` sits at
//! `t · dim M + r`.

mod cohomology;
mod products;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

pub use cohomology::{cohomology, Cohomology, CohomologyClass};
pub use products::{bullet, bullet_slot, center_action, cup, fundamental_formula_residual, gerstenhaber_bracket, left_cup_action, right_cup_action};

/// Digits of tensor index `t` (length `n`, base `d`).
pub fn decode_tensor(mut t: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = t % d;
        t /= d;
    }
    out
}

pub fn encode_tensor(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn tensor_count(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

/// A Hochschild cochain. Degree `-1` is the empty cochain (`dim M × 0`).
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<Bimodule>,
    degree: i32,
    values: Matrix,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(degree {}) {:?}", self.degree, self.values)
    }
}

impl Cochain {
    pub fn new(module: Arc<Bimodule>, degree: usize, values: Matrix) -> Result<Cochain> {
        let cols = tensor_count(module.algebra().dim(), degree);
        if values.rows() != module.dim() || values.cols() != cols {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain needs a {}x{cols} matrix, got {}x{}",
                module.dim(),
                values.rows(),
                values.cols()
            )));
        }
        if values.field() != module.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Cochain { module, degree: degree as i32, values })
    }

    pub fn zero(module: Arc<Bimodule>, degree: usize) -> Cochain {
        let cols = tensor_count(module.algebra().dim(), degree);
        let values = Matrix::zeros(module.field(), module.dim(), cols);
        Cochain { module, degree: degree as i32, values }
    }

    /// The degree `-1` object.
    pub fn empty(module: Arc<Bimodule>) -> Cochain {
        let values = Matrix::zeros(module.field(), module.dim(), 0);
        Cochain { module, degree: -1, values }
    }

    /// Zero cochain of a possibly negative degree.
    pub fn zero_of_degree(module: Arc<Bimodule>, degree: i32) -> Cochain {
        if degree < 0 {
            Cochain::empty(module)
        } else {
            Cochain::zero(module, degree as usize)
        }
    }

    /// A degree-0 cochain, i.e. an element of `M`.
    pub fn from_element(module: Arc<Bimodule>, v: &[Scalar]) -> Result<Cochain> {
        let f = module.field();
        let values = Matrix::column_vector(f, v);
        Cochain::new(module, 0, values)
    }

    /// Inverse of [`Cochain::to_vector`].
    pub fn from_vector(module: Arc<Bimodule>, degree: usize, v: &[Scalar]) -> Result<Cochain> {
        let n = module.dim();
        let cols = tensor_count(module.algebra().dim(), degree);
        if v.len() != n * cols {
            return Err(Error::DimensionMismatch(format!(
                "flat cochain has length {}, expected {}",
                v.len(),
                n * cols
            )));
        }
        let values = Matrix::from_triplets(
            module.field(),
            n,
            cols,
            v.iter().enumerate().map(|(k, s)| (k % n.max(1), k / n.max(1), s.clone())),
        );
        Cochain::new(module, degree, values)
    }

    /// Builds a cochain from its values on basis tensors.
    pub fn from_fn(module: Arc<Bimodule>, degree: usize, mut value: impl FnMut(&[usize]) -> Vec<Scalar>) -> Result<Cochain> {
        let d = module.algebra().dim();
        let cols: Vec<Vec<Scalar>> = (0..tensor_count(d, degree)).map(|t| value(&decode_tensor(t, d, degree))).collect();
        let values = Matrix::from_columns(module.field(), module.dim(), &cols)?;
        Cochain::new(module, degree, values)
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Degree as an index; `None` for the empty cochain.
    pub fn arity(&self) -> Option<usize> {
        (self.degree >= 0).then_some(self.degree as usize)
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let n = self.module.dim();
        let mut out = vec![self.field().zero(); n * self.values.cols()];
        for r in 0..n {
            for (t, s) in self.values.row(r) {
                out[t * n + r] = s.clone();
            }
        }
        out
    }

    /// Value on the basis tensor with the given digits.
    pub fn evaluate(&self, digits: &[usize]) -> Vec<Scalar> {
        self.values.column(encode_tensor(digits, self.algebra().dim()))
    }

    /// Postcomposition with a linear map `M → target`.
    pub fn map_coefficients(&self, target: &Arc<Bimodule>, map: &Matrix) -> Result<Cochain> {
        if map.cols() != self.module.dim() || map.rows() != target.dim() {
            return Err(Error::DimensionMismatch("coefficient map shape".into()));
        }
        if target.algebra() != self.algebra() {
            return Err(Error::Precondition("coefficient map changes the algebra".into()));
        }
        Ok(Cochain { module: target.clone(), degree: self.degree, values: map.checked_mul(&self.values)? })
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Precondition(format!("degrees {} and {} differ", self.degree, other.degree)));
        }
        if self.module != other.module {
            return Err(Error::Precondition("cochains have different coefficient modules".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(Cochain { module: self.module.clone(), degree: self.degree, values: self.values.checked_add(&other.values)? })
    }

    pub fn checked_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(Cochain { module: self.module.clone(), degree: self.degree, values: self.values.checked_sub(&other.values)? })
    }

    pub fn scale(&self, k: &Scalar) -> Cochain {
        Cochain { module: self.module.clone(), degree: self.degree, values: self.values.scale(k) }
    }

    /// `∂f(a_1..a_{n+1}) = a_1 f(a_2..) + Σ_{i=1}^{n} (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(..a_n) a_{n+1}`.
    ///
    /// The differential of the empty cochain is the zero cochain of degree 0.
    pub fn differential(&self) -> Cochain {
        let Some(n) = self.arity() else {
            return Cochain::zero(self.module.clone(), 0);
        };
        let a = self.algebra().clone();
        let d = a.dim();
        let f = self.field();
        let m = &self.module;
        let cols = self.values.to_columns();
        let out: Vec<Vec<Scalar>> = (0..tensor_count(d, n + 1))
            .map(|t| {
                let digits = decode_tensor(t, d, n + 1);
                let mut acc = m.left(digits[0]).mul_vec(&cols[encode_tensor(&digits[1..], d)]);
                for i in 1..=n {
                    let sign = Scalar::sign(f, i);
                    for (k, c) in a.product_of_basis(digits[i - 1], digits[i]) {
                        let mut merged = digits[..i - 1].to_vec();
                        merged.push(*k);
                        merged.extend_from_slice(&digits[i + 1..]);
                        let coeff = &sign * c;
                        for (slot, v) in acc.iter_mut().zip(&cols[encode_tensor(&merged, d)]) {
                            *slot = &*slot + &(&coeff * v);
                        }
                    }
                }
                let last = m.right(digits[n]).mul_vec(&cols[encode_tensor(&digits[..n], d)]);
                let sign = Scalar::sign(f, n + 1);
                for (slot, v) in acc.iter_mut().zip(&last) {
                    *slot = &*slot + &(&sign * v);
                }
                acc
            })
            .collect();
        let values = Matrix::from_columns(f, m.dim(), &out).expect("column lengths match");
        Cochain { module: m.clone(), degree: n as i32 + 1, values }
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }
}

/// `∂^n` on flat cochains: a `(dim M · d^{n+1}) × (dim M · d^n)` matrix.
pub fn differential_matrix(module: &Bimodule, n: usize) -> Matrix {
    let a = module.algebra();
    let (d, dm, f) = (a.dim(), module.dim(), a.field());
    let mut entries = Vec::new();
    let lefts: Vec<Vec<(usize, usize, Scalar)>> = (0..d).map(|i| triplets(module.left(i))).collect();
    let rights: Vec<Vec<(usize, usize, Scalar)>> = (0..d).map(|i| triplets(module.right(i))).collect();
    let last_sign = Scalar::sign(f, n + 1);
    for t in 0..tensor_count(d, n + 1) {
        let digits = decode_tensor(t, d, n + 1);
        let row0 = t * dm;
        let first = encode_tensor(&digits[1..], d) * dm;
        for (r, s, x) in &lefts[digits[0]] {
            entries.push((row0 + r, first + s, x.clone()));
        }
        for i in 1..=n {
            let sign = Scalar::sign(f, i);
            for (k, c) in a.product_of_basis(digits[i - 1], digits[i]) {
                let mut merged = digits[..i - 1].to_vec();
                merged.push(*k);
                merged.extend_from_slice(&digits[i + 1..]);
                let col0 = encode_tensor(&merged, d) * dm;
                let coeff = &sign * c;
                for r in 0..dm {
                    entries.push((row0 + r, col0 + r, coeff.clone()));
                }
            }
        }
        let front = encode_tensor(&digits[..n], d) * dm;
        for (r, s, x) in &rights[digits[n]] {
            entries.push((row0 + r, front + s, &last_sign * x));
        }
    }
    Matrix::from_triplets(f, dm * tensor_count(d, n + 1), dm * tensor_count(d, n), entries)
}

fn triplets(m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    (0..m.rows()).flat_map(|r| m.row(r).map(move |(c, s)| (r, c, s.clone()))).collect()
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        self.checked_add(rhs).expect("compatible cochains")
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self.checked_sub(rhs).expect("compatible cochains")
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scale(&self.field().from_i64(-1))
    }
}

#[cfg(test)]
mod tests;
