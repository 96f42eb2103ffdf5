use std::sync::Arc;

use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, QuotientSpace, Subspace};

use super::{ExtMorphism, NExtension};

fn require_relative_central(s: &NExtension, z: &[Scalar]) -> Result<()> {
    if z.len() != s.algebra().dim() {
        return Err(Error::DimensionMismatch("element length differs from algebra dimension".into()));
    }
    if !s.coefficients().is_relative_central(z) {
        return Err(Error::Precondition("element is not in Z_M(A)".into()));
    }
    Ok(())
}

/// Pushout data for `S#f`: `P = (M ⊕ E_{n-1}) / {(z m, −d_n m)}`.
struct Pushout {
    ext: NExtension,
    quotient: QuotientSpace,
}

/// Pullback data for `f#S`: `P = {(a, e) ∈ A ⊕ E_0 : z a = d_0 e}`.
struct Pullback {
    ext: NExtension,
    inclusion: Matrix,
}

fn pushout(s: &NExtension, z: &[Scalar]) -> Result<Pushout> {
    require_relative_central(s, z)?;
    let n = s.length();
    let m = s.coefficients();
    let f = s.field();
    let top = s.term(n - 1);
    let sum = Bimodule::direct_sum(&[m, top])?;
    let negated = -s.map(n);
    let relations = Matrix::vstack(f, m.dim(), &[&m.left_action(z), &negated]);
    let (module, quotient) = sum.module.quotient(&Subspace::from_matrix_columns(&relations))?;
    let mut terms = s.terms().to_vec();
    terms[n - 1] = Arc::new(module);
    let mut maps = s.maps().to_vec();
    maps[n - 1] = &(s.map(n - 1) * &sum.projections[1]) * quotient.section();
    maps[n] = quotient.projection() * &sum.injections[0];
    let ext = NExtension::checked(m.clone(), terms, maps)?;
    Ok(Pushout { ext, quotient })
}

fn pullback(s: &NExtension, z: &[Scalar]) -> Result<Pullback> {
    require_relative_central(s, z)?;
    let f = s.field();
    let base = s.base();
    let bottom = s.term(0);
    let sum = Bimodule::direct_sum(&[base, bottom])?;
    let negated = -s.map(0);
    let condition = Matrix::hstack(f, base.dim(), &[&base.left_action(z), &negated]);
    let (module, inclusion) = sum.module.submodule(&condition.kernel())?;
    let into = &sum.injections[1] * s.map(1);
    let lifted = inclusion
        .solve_matrix(&into)?
        .ok_or_else(|| Error::Internal("d_1 does not land in the pullback".into()))?;
    let mut terms = s.terms().to_vec();
    terms[0] = Arc::new(module);
    let mut maps = s.maps().to_vec();
    maps[0] = &sum.projections[0] * &inclusion;
    maps[1] = lifted;
    let ext = NExtension::checked(s.coefficients().clone(), terms, maps)?;
    Ok(Pullback { ext, inclusion })
}

/// `S#f` for `f = z · −` with `z ∈ Z_M(A)`: pushout at the left end.
pub fn splice_right(s: &NExtension, z: &[Scalar]) -> Result<NExtension> {
    Ok(pushout(s, z)?.ext)
}

/// `f#S` for `f = z · −` with `z ∈ Z_M(A)`: pullback at the right end.
pub fn splice_left(z: &[Scalar], s: &NExtension) -> Result<NExtension> {
    Ok(pullback(s, z)?.ext)
}

/// The parallel morphisms `F_λ, F_ρ : S#f → f#S`.
#[derive(Clone, Debug)]
pub struct LoopPair {
    pub source: NExtension,
    pub target: NExtension,
    pub lambda: ExtMorphism,
    pub rho: ExtMorphism,
}

impl LoopPair {
    pub fn is_trivial(&self) -> bool {
        self.lambda == self.rho
    }
}

pub fn loop_pair(s: &NExtension, z: &[Scalar]) -> Result<LoopPair> {
    let push = pushout(s, z)?;
    let pull = pullback(s, z)?;
    let n = s.length();
    let f = s.field();
    let m = s.coefficients();
    let into_pullback = |v: &Matrix| -> Result<Matrix> {
        pull.inclusion.solve_matrix(v)?.ok_or_else(|| Error::Internal("loop map leaves the pullback".into()))
    };
    let mut lambda = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    for k in 0..n {
        let e = s.term(k);
        let (lz, rz) = (e.left_action(z), e.right_action(z));
        let pair = if n == 1 {
            // (m, e) ↦ (p(e), z e + i(m)) and (p(e), e z + i(m))
            let build = |act: &Matrix| -> Result<Matrix> {
                let top = Matrix::hstack(f, s.base().dim(), &[&Matrix::zeros(f, s.base().dim(), m.dim()), s.map(0)]);
                let bottom = Matrix::hstack(f, e.dim(), &[s.map(1), act]);
                into_pullback(&(&Matrix::vstack(f, m.dim() + e.dim(), &[&top, &bottom]) * push.quotient.section()))
            };
            (build(&lz)?, build(&rz)?)
        } else if k == n - 1 {
            // (m, e) ↦ z e + d_n m and e z + d_n m
            let build = |act: &Matrix| &Matrix::hstack(f, e.dim(), &[s.map(n), act]) * push.quotient.section();
            (build(&lz), build(&rz))
        } else if k == 0 {
            // e ↦ (d_0 e, z e) and (d_0 e, e z)
            let build = |act: &Matrix| into_pullback(&Matrix::vstack(f, e.dim(), &[s.map(0), act]));
            (build(&lz)?, build(&rz)?)
        } else {
            (lz, rz)
        };
        lambda.push(pair.0);
        rho.push(pair.1);
    }
    let lambda = ExtMorphism { components: lambda };
    let rho = ExtMorphism { components: rho };
    if !lambda.connects(&push.ext, &pull.ext) || !rho.connects(&push.ext, &pull.ext) {
        return Err(Error::Internal("loop maps are not morphisms of extensions".into()));
    }
    Ok(LoopPair { source: push.ext, target: pull.ext, lambda, rho })
}
