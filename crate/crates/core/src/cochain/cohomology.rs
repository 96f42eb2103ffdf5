use std::sync::Arc;

use crate::algebra::Bimodule;
use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{QuotientSpace, Subspace};

use super::{differential_matrix, Cochain};

/// A computed presentation of `HH^n(A, M)`.
///
/// Cocycles and coboundaries are subspaces of flat cochains; classes are
/// coordinates in the canonical quotient of the cocycle coordinates.
#[derive(Clone, Debug)]
pub struct Cohomology {
    module: Arc<Bimodule>,
    degree: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    quotient: QuotientSpace,
}

/// A cocycle together with the presentation it is read in.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub representative: Cochain,
    pub space: Arc<Cohomology>,
}

impl CohomologyClass {
    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        self.space.class_of(&self.representative).expect("representative is a cocycle")
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(Scalar::is_zero)
    }
}

/// `HH^n(A, M) = ker ∂^n / im ∂^{n-1}`.
pub fn cohomology(module: &Arc<Bimodule>, n: usize, budget: &Budget) -> Result<Cohomology> {
    let d = module.algebra().dim();
    budget.check(n + 1, power(d, n + 1).saturating_mul(module.dim() as u128))?;
    let cocycles = differential_matrix(module, n).kernel();
    let coboundaries = if n == 0 {
        Subspace::zero(module.field(), module.dim())
    } else {
        differential_matrix(module, n - 1).column_space()
    };
    let mut rel = Vec::with_capacity(coboundaries.dim());
    for b in coboundaries.basis_vectors() {
        rel.push(
            cocycles
                .coordinates(&b)?
                .ok_or_else(|| Error::Internal("coboundary outside the cocycle space".into()))?,
        );
    }
    let quotient = QuotientSpace::of_span(module.field(), cocycles.dim(), &rel)?;
    Ok(Cohomology { module: module.clone(), degree: n, cocycles, coboundaries, quotient })
}

impl Cohomology {
    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    fn check_cochain(&self, f: &Cochain) -> Result<()> {
        if f.arity() != Some(self.degree) || f.module() != &self.module {
            return Err(Error::Precondition(format!(
                "cochain of degree {} does not belong to this degree-{} presentation",
                f.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    /// Cocycle with the given class coordinates, via the canonical section.
    pub fn cochain_from_class(&self, coords: &[Scalar]) -> Result<Cochain> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch("class coordinates have the wrong length".into()));
        }
        let z = self.quotient.lift(coords);
        let flat = self.cocycles.basis_matrix().mul_vec(&z);
        Cochain::from_vector(self.module.clone(), self.degree, &flat)
    }

    /// Deterministic representatives of a basis of `HH^n`.
    pub fn representatives(&self) -> Vec<Cochain> {
        let f = self.module.field();
        (0..self.dim())
            .map(|i| {
                let mut e = vec![f.zero(); self.dim()];
                e[i] = f.one();
                self.cochain_from_class(&e).expect("basis coordinates")
            })
            .collect()
    }

    /// Cocycle from coordinates in the canonical cocycle basis.
    pub fn cocycle_from_coordinates(&self, coords: &[Scalar]) -> Result<Cochain> {
        if coords.len() != self.cocycles.dim() {
            return Err(Error::DimensionMismatch("cocycle coordinates have the wrong length".into()));
        }
        let flat = self.cocycles.basis_matrix().mul_vec(coords);
        Cochain::from_vector(self.module.clone(), self.degree, &flat)
    }

    pub fn is_coboundary(&self, f: &Cochain) -> Result<bool> {
        self.check_cochain(f)?;
        self.coboundaries.contains(&f.to_vector())
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<Vec<Scalar>> {
        self.check_cochain(f)?;
        let coords = self
            .cocycles
            .coordinates(&f.to_vector())?
            .ok_or_else(|| Error::Precondition("cochain is not a cocycle".into()))?;
        Ok(self.quotient.project(&coords))
    }

    pub fn class(self: &Arc<Self>, representative: Cochain) -> Result<CohomologyClass> {
        self.class_of(&representative)?;
        Ok(CohomologyClass { representative, space: self.clone() })
    }
}
