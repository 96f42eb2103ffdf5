use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::extension::NExtension;
use crate::field::Scalar;
use crate::linalg::{LinearSystem, Matrix, Subspace, Term};

/// `Ω¹_A = ker(μ : A ⊗ A → A)` with its universal derivation `d a = a ⊗ 1 − 1 ⊗ a`.
#[derive(Clone, Debug)]
pub struct Omega1 {
    algebra: Arc<Algebra>,
    module: Arc<Bimodule>,
    /// `ι : Ω¹ → A ⊗ A`, `d² × dim Ω¹`.
    inclusion: Matrix,
    /// `d`, `dim Ω¹ × dim A`.
    universal: Matrix,
    /// Coordinates of `e_a · d(e_b)` in column `a d + b`.
    generators: Matrix,
}

pub fn omega1(a: &Arc<Algebra>) -> Result<Omega1> {
    let f = a.field();
    let d = a.dim();
    let tensor = Bimodule::outer_tensor(a);
    let kernel = a.multiplication_matrix().kernel();
    let (module, inclusion) = tensor.submodule(&kernel)?;
    let unit = a.unit();
    let mut columns = Vec::with_capacity(d);
    for i in 0..d {
        let mut w = vec![f.zero(); d * d];
        for q in 0..d {
            w[i * d + q] = &w[i * d + q] + &unit[q];
            w[q * d + i] = &w[q * d + i] - &unit[q];
        }
        columns.push(kernel.coordinates(&w)?.ok_or_else(|| Error::Internal("d(a) outside ker μ".into()))?);
    }
    let universal = Matrix::from_columns(f, module.dim(), &columns)?;
    let mut gens = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            gens.push(module.left(p).mul_vec(&universal.column(q)));
        }
    }
    let generators = Matrix::from_columns(f, module.dim(), &gens)?;
    let omega = Omega1 { algebra: a.clone(), module: Arc::new(module), inclusion, universal, generators };
    if !omega.universal_is_derivation() {
        return Err(Error::Internal("universal map fails the Leibniz rule".into()));
    }
    if omega.generators.rank() != omega.module.dim() {
        return Err(Error::Internal("a · d(b) do not span Ω¹".into()));
    }
    Ok(omega)
}

impl Omega1 {
    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    pub fn universal(&self) -> &Matrix {
        &self.universal
    }

    /// Rank of `{a · d b}`; equals `dim Ω¹`.
    pub fn generator_rank(&self) -> usize {
        self.generators.rank()
    }

    /// The universal map as a degree-1 cochain with coefficients in `Ω¹`.
    pub fn universal_derivation(&self) -> Cochain {
        Cochain::new(self.module.clone(), 1, self.universal.clone()).expect("shape matches")
    }

    fn universal_is_derivation(&self) -> bool {
        self.universal_derivation().is_cocycle()
    }

    /// `D ↦ D̄` with `D̄ ∘ d = D`.
    pub fn hom_from_derivation(&self, derivation: &Cochain) -> Result<Matrix> {
        if !is_derivation(derivation) {
            return Err(Error::Precondition("map is not a derivation".into()));
        }
        let m = derivation.module();
        let d = self.algebra.dim();
        let values = derivation.values();
        let mut images = Vec::with_capacity(d * d);
        for p in 0..d {
            for q in 0..d {
                images.push(m.left(p).mul_vec(&values.column(q)));
            }
        }
        let rhs = Matrix::from_columns(m.field(), m.dim(), &images)?;
        let transposed = self
            .generators
            .transpose()
            .solve_matrix(&rhs.transpose())?
            .ok_or_else(|| Error::Internal("derivation does not factor through Ω¹".into()))?;
        let bar = transposed.transpose();
        if !self.module.is_morphism_to(m, &bar) || &bar * &self.universal != *values {
            return Err(Error::Internal("factorization through Ω¹ failed".into()));
        }
        Ok(bar)
    }

    /// `f ↦ f ∘ d`.
    pub fn derivation_from_hom(&self, target: &Arc<Bimodule>, f: &Matrix) -> Result<Cochain> {
        if !self.module.is_morphism_to(target, f) {
            return Err(Error::NotBimoduleMap("map out of Ω¹ is not A^ev-linear".into()));
        }
        Cochain::new(target.clone(), 1, f * &self.universal)
    }

    /// `Hom(ι, M)` applied to `a ⊗ b ↦ a v b`: the map `Ω¹ → M` of the inner derivation of `v`.
    pub fn restricted_element_map(&self, target: &Bimodule, v: &[Scalar]) -> Result<Matrix> {
        let d = self.algebra.dim();
        let mut cols = Vec::with_capacity(d * d);
        for p in 0..d {
            for q in 0..d {
                cols.push(target.left(p).mul_vec(&target.right(q).mul_vec(v)));
            }
        }
        let psi = Matrix::from_columns(target.field(), target.dim(), &cols)?;
        Ok(&psi * &self.inclusion)
    }
}

/// Derivations are exactly the degree-1 cocycles.
pub fn is_derivation(derivation: &Cochain) -> bool {
    derivation.arity() == Some(1) && derivation.is_cocycle()
}

/// The pushout of `0 → Ω¹ → A ⊗ A → A → 0` along `D̄`:
/// `E = (M ⊕ A⊗A) / {(D̄ w, −ι w)}`.
pub fn ext1_from_derivation(derivation: &Cochain) -> Result<NExtension> {
    let m = derivation.module();
    let a = derivation.algebra();
    let omega = omega1(a)?;
    let bar = omega.hom_from_derivation(derivation)?;
    let tensor = Bimodule::outer_tensor(a);
    let negated = -&omega.inclusion;
    let relations = Matrix::vstack(m.field(), omega.module.dim(), &[&bar, &negated]);
    pushout_extension(m, &tensor, &relations, &a.multiplication_matrix())
}

/// `0 → M → (M ⊕ X)/R → A → 0` with `M → ·` the first injection and `· → A`
/// induced by `to_base : X → A`.
pub(crate) fn pushout_extension(
    m: &Arc<Bimodule>,
    x: &Bimodule,
    relations: &Matrix,
    to_base: &Matrix,
) -> Result<NExtension> {
    let sum = Bimodule::direct_sum(&[m, x])?;
    let (module, q) = sum.module.quotient(&Subspace::from_matrix_columns(relations))?;
    let inject = q.projection() * &sum.injections[0];
    let onto = &(to_base * &sum.projections[1]) * q.section();
    NExtension::checked(m.clone(), vec![Arc::new(module)], vec![onto, inject])
}

/// `D_e(a) = i^{-1}(a e − e a)` for a preimage `e` of `1`.
pub fn derivation_from_extension(s: &NExtension, e: &[Scalar]) -> Result<Cochain> {
    if s.length() != 1 {
        return Err(Error::Precondition("derivations come from 1-extensions".into()));
    }
    let mid = s.term(0);
    if e.len() != mid.dim() {
        return Err(Error::DimensionMismatch("preimage has the wrong length".into()));
    }
    if s.map(0).mul_vec(e) != s.algebra().unit() {
        return Err(Error::Precondition("chosen element does not map to 1".into()));
    }
    let d = s.algebra().dim();
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let commutator: Vec<Scalar> =
            mid.left(i).mul_vec(e).iter().zip(mid.right(i).mul_vec(e)).map(|(x, y)| x - &y).collect();
        cols.push(
            s.map(1)
                .solve(&commutator)?
                .ok_or_else(|| Error::Internal("commutator is not in the image of M".into()))?,
        );
    }
    let m = s.coefficients();
    Cochain::new(m.clone(), 1, Matrix::from_columns(m.field(), m.dim(), &cols)?)
}

/// A bimodule retraction `r : E → M` with `r ∘ i = id`, if one exists.
pub fn retraction(s: &NExtension) -> Result<Option<Matrix>> {
    if s.length() != 1 {
        return Err(Error::Precondition("retractions are defined for 1-extensions".into()));
    }
    let (m, e) = (s.coefficients(), s.term(0));
    let f = s.field();
    let neg = f.from_i64(-1);
    let mut sys = LinearSystem::new(f);
    let r = sys.add_unknown(m.dim(), e.dim());
    for i in 0..s.algebra().dim() {
        for (src, tgt) in [(e.left(i), m.left(i)), (e.right(i), m.right(i))] {
            sys.add_equation(
                m.dim(),
                e.dim(),
                &[Term::new(r, None, Some(src), f.one()), Term::new(r, Some(tgt), None, neg.clone())],
                None,
            )?;
        }
    }
    sys.add_equation(m.dim(), m.dim(), &[Term::new(r, None, Some(s.map(1)), f.one())], Some(&Matrix::identity(f, m.dim())))?;
    Ok(sys.solve()?.map(|mut x| x.remove(0)))
}
