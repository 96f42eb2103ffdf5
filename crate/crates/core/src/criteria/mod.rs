//! Executable structural criteria: braided-monoidal tests on the center,
//! bracket-vanishing implications, kernels of derivations via a relative
//! center, Morita transport, Poisson brackets on the center and the
//! Gerstenhaber axioms on cohomology.
//!
//! Every check returns a [`CriterionReport`]. Each outcome carries at least
//! one witness: a verifiable object when it holds and a counterexample when
//! it does not.

mod axioms;
mod braiding;
mod chain;
mod kernel;
mod morita;
mod poisson;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Bimodule};
use crate::budget::Budget;
use crate::cochain::{cohomology, Cochain, Cohomology};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

pub use axioms::{extension_module_axioms, gerstenhaber_axioms, module_axioms};
pub use braiding::{check_ring_epi_criterion, find_braiding, BraidingSearch, BraidingTarget, DEFAULT_PATTERN_BUDGET};
pub use chain::vanishing_chain;
pub use kernel::{ed_module, kernel_via_ed};
pub use morita::{morita_transport, MoritaData};
pub use poisson::poisson_check;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element { label: String, coordinates: Vec<String> },
    Matrix { label: String, rows: Vec<Vec<String>> },
    Subspace { label: String, basis: Vec<Vec<String>> },
    Cochain { label: String, degree: i32, matrix: Vec<Vec<String>> },
    Count { label: String, value: usize },
    Note { text: String },
}

impl Witness {
    pub fn element(label: impl Into<String>, v: &[Scalar]) -> Witness {
        Witness::Element { label: label.into(), coordinates: v.iter().map(Scalar::to_text).collect() }
    }

    pub fn matrix(label: impl Into<String>, m: &Matrix) -> Witness {
        Witness::Matrix { label: label.into(), rows: m.to_text_rows() }
    }

    pub fn subspace(label: impl Into<String>, s: &Subspace) -> Witness {
        Witness::Subspace {
            label: label.into(),
            basis: s.basis_vectors().iter().map(|v| v.iter().map(Scalar::to_text).collect()).collect(),
        }
    }

    pub fn cochain(label: impl Into<String>, c: &Cochain) -> Witness {
        Witness::Cochain { label: label.into(), degree: c.degree(), matrix: c.values().to_text_rows() }
    }

    pub fn count(label: impl Into<String>, value: usize) -> Witness {
        Witness::Count { label: label.into(), value }
    }

    pub fn note(text: impl Into<String>) -> Witness {
        Witness::Note { text: text.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub label: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub outcomes: Vec<Outcome>,
}

impl CriterionReport {
    pub fn new(criterion: impl Into<String>) -> CriterionReport {
        CriterionReport { criterion: criterion.into(), outcomes: Vec::new() }
    }

    /// Appends an outcome. Panics on an empty witness list, which would break
    /// the report contract.
    pub fn push(&mut self, label: impl Into<String>, holds: bool, witnesses: Vec<Witness>) {
        assert!(!witnesses.is_empty(), "outcomes need a witness");
        self.outcomes.push(Outcome { label: label.into(), holds, witnesses });
    }

    pub fn outcome(&self, label: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.label == label)
    }

    pub fn holds(&self, label: &str) -> Option<bool> {
        self.outcome(label).map(|o| o.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }
}

/// `Z(A)` as an algebra in its own right, with the inclusion into `A`.
pub fn center_algebra(a: &Algebra) -> Result<(Algebra, Matrix)> {
    let center = a.center();
    let basis = center.basis_vectors();
    let coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        center.coordinates(v)?.ok_or_else(|| Error::Internal("center is not closed under multiplication".into()))
    };
    let mut table = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for (k, c) in coords(&a.mul(x, y))?.into_iter().enumerate() {
                if !c.is_zero() {
                    table.push((i, j, k, c));
                }
            }
        }
    }
    let names = (1..=basis.len()).map(|i| format!("z{i}")).collect();
    let algebra = Algebra::checked(a.field(), names, coords(a.unit())?, table)?;
    Ok((algebra, center.basis_matrix()))
}

/// Cohomology spaces of one module, computed on demand.
pub(crate) struct CohomologyCache<'a> {
    module: Arc<Bimodule>,
    budget: &'a Budget,
    spaces: BTreeMap<usize, Cohomology>,
}

impl<'a> CohomologyCache<'a> {
    pub(crate) fn new(module: Arc<Bimodule>, budget: &'a Budget) -> Self {
        CohomologyCache { module, budget, spaces: BTreeMap::new() }
    }

    pub(crate) fn get(&mut self, n: usize) -> Result<&Cohomology> {
        if !self.spaces.contains_key(&n) {
            let space = cohomology(&self.module, n, self.budget)?;
            self.spaces.insert(n, space);
        }
        Ok(&self.spaces[&n])
    }

    /// True for the empty cochain and for coboundaries.
    pub(crate) fn is_coboundary(&mut self, c: &Cochain) -> Result<bool> {
        match c.arity() {
            None => Ok(true),
            Some(n) => self.get(n)?.is_coboundary(c),
        }
    }
}

#[cfg(test)]
mod tests;
