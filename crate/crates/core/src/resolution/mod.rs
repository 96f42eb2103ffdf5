//! The bar resolution, chain maps into extensions and null-homotopies.
//!
//! Chain maps and homotopies out of the bar resolution are stored through the
//! adjunction `Hom_{A^ev}(A^{⊗(k+2)}, X) ≅ Hom_K(A^{⊗k}, X)`, i.e. as cochains.
//! Under it, precomposition with `β_k` becomes the Hochschild differential.

mod chi;
mod omega;
mod periodic;

use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::budget::{power, Budget};
use crate::cochain::{decode_tensor, encode_tensor, tensor_count, Cochain};
use crate::error::{Error, Result};
use crate::extension::NExtension;
use crate::field::Scalar;
use crate::linalg::{Matrix, PivotOrder};

pub use chi::{chi, chi_inverse};
pub use omega::{derivation_from_extension, ext1_from_derivation, is_derivation, omega1, retraction, Omega1};
pub use periodic::{dual_numbers_generator, PeriodicResolution};

/// `B_k = A^{⊗(k+2)}` with outer actions, for `0 ≤ k ≤ N`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    algebra: Arc<Algebra>,
    terms: Vec<Arc<Bimodule>>,
    /// `differentials[0] = μ : B_0 → A`, `differentials[k] = β_k : B_k → B_{k-1}`.
    differentials: Vec<Matrix>,
}

impl BarResolution {
    /// Builds `B_0..B_N` and verifies `β∘β = 0` and exactness below degree `N`.
    pub fn new(algebra: &Arc<Algebra>, max_degree: usize, budget: &Budget) -> Result<BarResolution> {
        if max_degree == 0 {
            return Err(Error::Precondition("bar resolution needs max degree at least 1".into()));
        }
        let d = algebra.dim();
        for k in 0..=max_degree {
            budget.check(k, power(d, k + 2))?;
        }
        let f = algebra.field();
        let reg = Bimodule::regular(algebra);
        let mut terms = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let inner = Matrix::identity(f, tensor_count(d, k + 1));
            let left = reg.left_matrices().iter().map(|l| l.kron(&inner)).collect();
            let right = reg.right_matrices().iter().map(|r| inner.kron(r)).collect();
            terms.push(Arc::new(Bimodule::new(algebra.clone(), tensor_count(d, k + 2), left, right)?));
        }
        let mut differentials = vec![algebra.multiplication_matrix()];
        differentials.extend((1..=max_degree).map(|k| bar_differential(algebra, k)));
        let bar = BarResolution { algebra: algebra.clone(), terms, differentials };
        bar.verify()?;
        Ok(bar)
    }

    fn verify(&self) -> Result<()> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        if ranks[0] != self.algebra.dim() {
            return Err(Error::Internal("augmentation is not surjective".into()));
        }
        for k in 0..self.max_degree() {
            if !(&self.differentials[k] * &self.differentials[k + 1]).is_zero() {
                return Err(Error::Internal(format!("bar differentials do not compose to zero at degree {k}")));
            }
            if ranks[k] + ranks[k + 1] != self.terms[k].dim() {
                return Err(Error::Internal(format!("bar resolution is not exact at degree {k}")));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &Arc<Bimodule> {
        &self.terms[k]
    }

    /// `β_k` for `k ≥ 1`.
    pub fn differential(&self, k: usize) -> &Matrix {
        assert!(k >= 1, "β_0 is the augmentation");
        &self.differentials[k]
    }

    /// `μ : A ⊗ A → A`.
    pub fn augmentation(&self) -> &Matrix {
        &self.differentials[0]
    }

    /// `φ ↦ φ(1 ⊗ − ⊗ ⋯ ⊗ − ⊗ 1)` for an A^ev-linear `φ : B_k → M`.
    pub fn adjoint_cochain(&self, k: usize, module: &Arc<Bimodule>, phi: &Matrix) -> Result<Cochain> {
        if k > self.max_degree() {
            return Err(Error::Precondition(format!("degree {k} exceeds the bar resolution bound")));
        }
        if !self.terms[k].is_morphism_to(module, phi) {
            return Err(Error::NotBimoduleMap(format!("map out of B_{k} is not A^ev-linear")));
        }
        let d = self.algebra.dim();
        let unit = self.algebra.unit();
        let cols = phi.to_columns();
        let f = self.algebra.field();
        let inner = tensor_count(d, k);
        Cochain::from_fn(module.clone(), k, |mid| {
            let t = encode_tensor(mid, d);
            let mut acc = vec![f.zero(); module.dim()];
            for (p, up) in unit.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                for (q, uq) in unit.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                    let c = up * uq;
                    let col = &cols[(p * inner + t) * d + q];
                    for (s, v) in acc.iter_mut().zip(col) {
                        *s = &*s + &(&c * v);
                    }
                }
            }
            acc
        })
    }

    /// The A^ev-linear map `B_k → M`, `a_0 ⊗ ⋯ ⊗ a_{k+1} ↦ a_0 f(a_1..a_k) a_{k+1}`.
    pub fn realize(&self, f: &Cochain) -> Result<Matrix> {
        let k = f.arity().ok_or_else(|| Error::Precondition("cannot realize the empty cochain".into()))?;
        if f.algebra() != &self.algebra {
            return Err(Error::Precondition("cochain over a different algebra".into()));
        }
        let d = self.algebra.dim();
        let m = f.module();
        let values = f.values().to_columns();
        let cols: Vec<Vec<Scalar>> = (0..tensor_count(d, k + 2))
            .map(|t| {
                let digits = decode_tensor(t, d, k + 2);
                let mid = &values[encode_tensor(&digits[1..=k], d)];
                m.left(digits[0]).mul_vec(&m.right(digits[k + 1]).mul_vec(mid))
            })
            .collect();
        Matrix::from_columns(m.field(), m.dim(), &cols)
    }

    /// Lifts `id_A` to a chain map from the bar resolution into `s`.
    pub fn lift_identity(&self, s: &NExtension, order: &PivotOrder) -> Result<ChainMap> {
        if s.length() > self.max_degree() {
            return Err(Error::Precondition(format!(
                "extension of length {} exceeds the bar bound {}",
                s.length(),
                self.max_degree()
            )));
        }
        lift_identity(s, order)
    }
}

/// `β_k(a_0 ⊗ ⋯ ⊗ a_{k+1}) = Σ_{i=0}^{k} (-1)^i a_0 ⊗ ⋯ ⊗ a_i a_{i+1} ⊗ ⋯`.
fn bar_differential(a: &Algebra, k: usize) -> Matrix {
    let d = a.dim();
    let f = a.field();
    let mut entries = Vec::new();
    for t in 0..tensor_count(d, k + 2) {
        let digits = decode_tensor(t, d, k + 2);
        for i in 0..=k {
            let sign = Scalar::sign(f, i);
            for (p, c) in a.product_of_basis(digits[i], digits[i + 1]) {
                let mut merged = digits[..i].to_vec();
                merged.push(*p);
                merged.extend_from_slice(&digits[i + 2..]);
                entries.push((encode_tensor(&merged, d), t, &sign * c));
            }
        }
    }
    Matrix::from_triplets(f, tensor_count(d, k + 1), tensor_count(d, k + 2), entries)
}

/// A chain map from the bar resolution into an extension, in adjoint form:
/// `components[k] ∈ C^k(A, E_k)` for `0 ≤ k ≤ n`. On `A` it is `base · id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub base: Scalar,
    pub components: Vec<Cochain>,
}

impl ChainMap {
    /// Commuting squares: `d_0 Φ_0 = base · 1`, `d_k Φ_k = ∂ Φ_{k-1}`.
    pub fn is_chain_map_into(&self, s: &NExtension) -> bool {
        let n = s.length();
        if self.components.len() != n + 1 {
            return false;
        }
        if self.components.iter().enumerate().any(|(k, c)| c.arity() != Some(k) || c.module() != s.term(k)) {
            return false;
        }
        let unit: Vec<Scalar> = s.algebra().unit().iter().map(|u| u * &self.base).collect();
        if s.map(0).mul_vec(&self.components[0].values().column(0)) != unit {
            return false;
        }
        (1..=n).all(|k| s.map(k) * self.components[k].values() == *self.components[k - 1].differential().values())
    }

    pub fn checked_sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.components.len() != other.components.len() {
            return Err(Error::Precondition("chain maps of different lengths".into()));
        }
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.checked_sub(b)).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { base: &self.base - &other.base, components })
    }
}

/// `components[k] ∈ C^k(A, E_{k+1})` for `0 ≤ k < n`, adjoint to `s_k : B_k → E_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub components: Vec<Cochain>,
}

impl Homotopy {
    /// Checks `d_{k+1} s_k + s_{k-1} β_k = ψ_k` for `0 ≤ k ≤ n` (with `d_{n+1} = 0`, `s_{-1} = 0`).
    pub fn trivializes(&self, psi: &ChainMap, s: &NExtension) -> bool {
        let n = s.length();
        if self.components.len() != n || psi.components.len() != n + 1 || !psi.base.is_zero() {
            return false;
        }
        (0..=n).all(|k| {
            let mut total = Matrix::zeros(s.field(), s.term(k).dim(), psi.components[k].values().cols());
            if k < n {
                total = &total + &(s.map(k + 1) * self.components[k].values());
            }
            if k > 0 {
                total = &total + self.components[k - 1].differential().values();
            }
            total == *psi.components[k].values()
        })
    }

    /// `s_{n-1}(1 ⊗ − ⊗ ⋯ ⊗ − ⊗ 1)`, a degree-`(n-1)` cocycle with coefficients in `M`.
    pub fn top(&self) -> &Cochain {
        self.components.last().expect("homotopies have at least one component")
    }
}

fn solve_columns(map: &Matrix, rhs: &Matrix, order: &PivotOrder, what: &str) -> Result<Matrix> {
    let cols = map
        .solve_columns_with(rhs, order)?
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Precondition(format!("{what}: right-hand side is not in the image")))?;
    Matrix::from_columns(map.field(), map.cols(), &cols)
}

/// Degree by degree: `d_0 Φ_0 = 1`, then `d_k Φ_k = ∂ Φ_{k-1}`.
pub fn lift_identity(s: &NExtension, order: &PivotOrder) -> Result<ChainMap> {
    let f = s.field();
    let unit = Matrix::column_vector(f, s.algebra().unit());
    let first = solve_columns(s.map(0), &unit, order, "lifting at degree 0")
        .map_err(|_| Error::Internal("d_0 is not surjective".into()))?;
    let mut components = vec![Cochain::new(s.term(0).clone(), 0, first)?];
    for k in 1..=s.length() {
        let rhs = components[k - 1].differential();
        let x = solve_columns(s.map(k), rhs.values(), order, "lifting")
            .map_err(|_| Error::Internal(format!("extension is not exact at degree {}", k - 1)))?;
        components.push(Cochain::new(s.term(k).clone(), k, x)?);
    }
    Ok(ChainMap { base: f.one(), components })
}

/// Solves `d_{k+1} s_k = ψ_k − s_{k-1} β_k` degree by degree.
pub fn null_homotopy(psi: &ChainMap, s: &NExtension, order: &PivotOrder) -> Result<Homotopy> {
    let n = s.length();
    if !psi.base.is_zero() {
        return Err(Error::Precondition("chain map does not lift the zero map on A".into()));
    }
    if psi.components.len() != n + 1 {
        return Err(Error::Precondition("chain map length differs from the extension length".into()));
    }
    let mut components: Vec<Cochain> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = psi.components[k].clone();
        if k > 0 {
            rhs = rhs.checked_sub(&components[k - 1].differential())?;
        }
        let x = solve_columns(s.map(k + 1), rhs.values(), order, &format!("null-homotopy at degree {k}"))?;
        components.push(Cochain::new(s.term(k + 1).clone(), k, x)?);
    }
    let residual = psi.components[n].checked_sub(&components[n - 1].differential())?;
    if !residual.is_zero() {
        return Err(Error::Precondition(format!("null-homotopy fails at the top degree {n}")));
    }
    Ok(Homotopy { components })
}

#[cfg(test)]
mod tests;
