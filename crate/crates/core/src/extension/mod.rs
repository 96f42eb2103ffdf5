//! Yoneda n-extensions `0 → M → E_{n-1} → ⋯ → E_0 → A → 0` of bimodules.
//!
//! Indexing: `terms[k] = E_k` for `0 ≤ k < n`, and `maps[k] = d_k : E_k → E_{k-1}`
//! for `0 ≤ k ≤ n`, where `E_n = M` and `E_{-1} = A`.

mod baer;
mod bracket;
mod splice;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{LinearSystem, Matrix, Term};

pub use baer::baer_sum;
pub use bracket::{bracket_source, ext_bracket, ext_bracket_from_lift, ext_bracket_on_morphism, ExtBracket};
pub use splice::{loop_pair, splice_left, splice_right, LoopPair};

#[derive(Clone, PartialEq, Eq)]
pub struct NExtension {
    coefficients: Arc<Bimodule>,
    base: Arc<Bimodule>,
    terms: Vec<Arc<Bimodule>>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for NExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<usize> = self.terms.iter().rev().map(|t| t.dim()).collect();
        write!(f, "NExtension(0 → {} → {:?} → {} → 0)", self.coefficients.dim(), dims, self.base.dim())
    }
}

/// A failed extension axiom; `position` is the index `k` of `d_k` or `E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionViolation {
    NotLinear { position: usize },
    NotComplex { position: usize },
    NotExact { position: usize },
    NotSurjective { position: usize },
    NotInjective { position: usize },
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionViolation::NotLinear { position } => write!(f, "d_{position} is not a bimodule map"),
            ExtensionViolation::NotComplex { position } => write!(f, "d_{position} ∘ d_{} ≠ 0", position + 1),
            ExtensionViolation::NotExact { position } => write!(f, "sequence is not exact at E_{position}"),
            ExtensionViolation::NotSurjective { position } => write!(f, "d_{position} is not surjective"),
            ExtensionViolation::NotInjective { position } => write!(f, "d_{position} is not injective"),
        }
    }
}

impl NExtension {
    /// Checks shapes and the algebra only; see [`NExtension::validate`].
    pub fn new(coefficients: Arc<Bimodule>, terms: Vec<Arc<Bimodule>>, maps: Vec<Matrix>) -> Result<NExtension> {
        let algebra = coefficients.algebra().clone();
        if terms.is_empty() {
            return Err(Error::InvalidExtension("an extension needs at least one middle term".into()));
        }
        if maps.len() != terms.len() + 1 {
            return Err(Error::InvalidExtension(format!(
                "{} middle terms need {} maps, got {}",
                terms.len(),
                terms.len() + 1,
                maps.len()
            )));
        }
        if terms.iter().any(|t| t.algebra() != &algebra) {
            return Err(Error::InvalidExtension("middle terms over a different algebra".into()));
        }
        let base = Arc::new(Bimodule::regular(&algebra));
        let ext = NExtension { coefficients, base, terms, maps };
        for k in 0..ext.maps.len() {
            let (rows, cols) = (ext.below(k).dim(), ext.term(k).dim());
            let m = &ext.maps[k];
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::InvalidExtension(format!(
                    "d_{k} must be {rows}x{cols}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ext)
    }

    /// [`NExtension::new`] followed by validation.
    pub fn checked(coefficients: Arc<Bimodule>, terms: Vec<Arc<Bimodule>>, maps: Vec<Matrix>) -> Result<NExtension> {
        let ext = NExtension::new(coefficients, terms, maps)?;
        let violations = ext.validate();
        if violations.is_empty() {
            Ok(ext)
        } else {
            let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidExtension(text.join("; ")))
        }
    }

    /// `0 → M → M ⊕ A → A → 0` for `n = 1`; `0 → M → M → 0 → ⋯ → 0 → A → A → 0` otherwise.
    pub fn trivial(coefficients: &Arc<Bimodule>, n: usize) -> Result<NExtension> {
        if n == 0 {
            return Err(Error::Precondition("extensions have length at least 1".into()));
        }
        let a = coefficients.algebra();
        let f = a.field();
        let base = Arc::new(Bimodule::regular(a));
        let (dm, d) = (coefficients.dim(), a.dim());
        if n == 1 {
            let sum = Bimodule::direct_sum(&[coefficients, &base])?;
            let maps = vec![sum.projections[1].clone(), sum.injections[0].clone()];
            return NExtension::new(coefficients.clone(), vec![Arc::new(sum.module)], maps);
        }
        let zero = Arc::new(Bimodule::zero(a));
        let mut terms = vec![base.clone()];
        terms.extend((1..n - 1).map(|_| zero.clone()));
        terms.push(coefficients.clone());
        let mut maps = vec![Matrix::identity(f, d)];
        for k in 1..n {
            let rows = if k == 1 { d } else { 0 };
            let cols = if k == n - 1 { dm } else { 0 };
            maps.push(Matrix::zeros(f, rows, cols));
        }
        maps.push(Matrix::identity(f, dm));
        NExtension::new(coefficients.clone(), terms, maps)
    }

    pub fn validate(&self) -> Vec<ExtensionViolation> {
        let mut out = Vec::new();
        let n = self.length();
        for k in 0..=n {
            if !self.term(k).is_morphism_to(self.below(k), &self.maps[k]) {
                out.push(ExtensionViolation::NotLinear { position: k });
            }
        }
        for k in 0..n {
            if !(&self.maps[k] * &self.maps[k + 1]).is_zero() {
                out.push(ExtensionViolation::NotComplex { position: k });
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        if ranks[0] != self.base.dim() {
            out.push(ExtensionViolation::NotSurjective { position: 0 });
        }
        for k in 0..n {
            if ranks[k] + ranks[k + 1] != self.terms[k].dim() {
                out.push(ExtensionViolation::NotExact { position: k });
            }
        }
        if ranks[n] != self.coefficients.dim() {
            out.push(ExtensionViolation::NotInjective { position: n });
        }
        out
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.coefficients.algebra()
    }

    pub fn field(&self) -> Field {
        self.coefficients.field()
    }

    /// `M`.
    pub fn coefficients(&self) -> &Arc<Bimodule> {
        &self.coefficients
    }

    /// `A` as a bimodule.
    pub fn base(&self) -> &Arc<Bimodule> {
        &self.base
    }

    pub fn terms(&self) -> &[Arc<Bimodule>] {
        &self.terms
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `E_k` for `0 ≤ k ≤ n`, with `E_n = M`.
    pub fn term(&self, k: usize) -> &Arc<Bimodule> {
        if k == self.terms.len() {
            &self.coefficients
        } else {
            &self.terms[k]
        }
    }

    /// `E_{k-1}`, with `E_{-1} = A`.
    pub fn below(&self, k: usize) -> &Arc<Bimodule> {
        if k == 0 {
            &self.base
        } else {
            self.term(k - 1)
        }
    }

    /// `d_k : E_k → E_{k-1}`.
    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }
}

/// A morphism of extensions with the same ends: identity on `M` and on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMorphism {
    /// `components[k] : E_k → E'_k` for `0 ≤ k < n`.
    pub components: Vec<Matrix>,
}

impl ExtMorphism {
    /// True when every component is A^ev-linear and every square commutes.
    pub fn connects(&self, source: &NExtension, target: &NExtension) -> bool {
        let n = source.length();
        if target.length() != n || self.components.len() != n {
            return false;
        }
        if source.coefficients != target.coefficients {
            return false;
        }
        let f = source.field();
        let component = |k: usize| -> Matrix {
            if k == n {
                Matrix::identity(f, source.coefficients.dim())
            } else {
                self.components[k].clone()
            }
        };
        for k in 0..n {
            let g = &self.components[k];
            if g.rows() != target.term(k).dim() || g.cols() != source.term(k).dim() {
                return false;
            }
            if !source.term(k).is_morphism_to(target.term(k), g) {
                return false;
            }
        }
        for k in 0..=n {
            let top = &target.maps[k] * &component(k);
            let bottom = if k == 0 { source.maps[0].clone() } else { &self.components[k - 1] * &source.maps[k] };
            if top != bottom {
                return false;
            }
        }
        true
    }

    pub fn identity(s: &NExtension) -> ExtMorphism {
        ExtMorphism { components: s.terms.iter().map(|t| Matrix::identity(s.field(), t.dim())).collect() }
    }
}

/// Searches for a morphism `source → target` fixing both ends (one linear solve).
pub fn find_morphism(source: &NExtension, target: &NExtension) -> Result<Option<ExtMorphism>> {
    let n = source.length();
    if target.length() != n {
        return Err(Error::Precondition("extensions have different lengths".into()));
    }
    if source.coefficients != target.coefficients || source.algebra() != target.algebra() {
        return Err(Error::Precondition("extensions have different ends".into()));
    }
    let f = source.field();
    let one = f.one();
    let neg = f.from_i64(-1);
    let mut sys = LinearSystem::new(f);
    let blocks: Vec<usize> = (0..n).map(|k| sys.add_unknown(target.term(k).dim(), source.term(k).dim())).collect();
    for k in 0..n {
        let (s, t) = (source.term(k), target.term(k));
        for i in 0..source.algebra().dim() {
            for (sa, ta) in [(s.left(i), t.left(i)), (s.right(i), t.right(i))] {
                sys.add_equation(
                    t.dim(),
                    s.dim(),
                    &[Term::new(blocks[k], None, Some(sa), one.clone()), Term::new(blocks[k], Some(ta), None, neg.clone())],
                    None,
                )?;
            }
        }
    }
    // d'_k g_k − g_{k−1} d_k = 0, with g_{−1} = id_A and g_n = id_M.
    for k in 0..=n {
        let rows = target.below(k).dim();
        let cols = source.term(k).dim();
        let mut terms = Vec::new();
        let mut rhs = Matrix::zeros(f, rows, cols);
        if k < n {
            terms.push(Term::new(blocks[k], Some(&target.maps[k]), None, one.clone()));
        } else {
            rhs = &rhs - &target.maps[k];
        }
        if k > 0 {
            terms.push(Term::new(blocks[k - 1], None, Some(&source.maps[k]), neg.clone()));
        } else {
            rhs = &rhs + &source.maps[0];
        }
        sys.add_equation(rows, cols, &terms, Some(&rhs))?;
    }
    Ok(sys.solve()?.map(|components| ExtMorphism { components }))
}
