use std::sync::Arc;

use crate::algebra::Bimodule;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::extension::NExtension;
use crate::linalg::{Matrix, PivotOrder, Subspace};

use super::{lift_identity, BarResolution};

/// Pushout of the truncated bar resolution along the cocycle `φ ∈ C^n(A, M)`:
/// `0 → M → Q → B_{n-2} → ⋯ → B_0 → A → 0`, `Q = (M ⊕ B_{n-1}) / {(φ b, −β_n b)}`.
pub fn chi(bar: &BarResolution, phi: &Cochain) -> Result<NExtension> {
    let n = phi
        .arity()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Precondition("chi needs a cocycle of degree at least 1".into()))?;
    if n > bar.max_degree() {
        return Err(Error::Precondition(format!("degree {n} exceeds the bar bound {}", bar.max_degree())));
    }
    if !phi.is_cocycle() {
        return Err(Error::Precondition("chi needs a cocycle".into()));
    }
    let m = phi.module();
    let f = m.field();
    let realized = bar.realize(phi)?;
    let negated = -bar.differential(n);
    let relations = Subspace::from_matrix_columns(&Matrix::vstack(f, realized.cols(), &[&realized, &negated]));
    let top = bar.term(n - 1);
    let sum = Bimodule::direct_sum(&[m, top])?;
    let (q_module, q) = sum.module.quotient(&relations)?;
    let below = if n == 1 { bar.augmentation() } else { bar.differential(n - 1) };
    let onto = &(below * &sum.projections[1]) * q.section();
    let inject = q.projection() * &sum.injections[0];

    let mut terms: Vec<Arc<Bimodule>> = (0..n - 1).map(|k| bar.term(k).clone()).collect();
    terms.push(Arc::new(q_module));
    let mut maps = Vec::with_capacity(n + 1);
    if n > 1 {
        maps.push(bar.augmentation().clone());
        maps.extend((1..n - 1).map(|k| bar.differential(k).clone()));
    }
    maps.push(onto);
    maps.push(inject);
    NExtension::checked(m.clone(), terms, maps)
}

/// The degree-`n` component of a lift of `id_A`; a cocycle representing `[S]`.
pub fn chi_inverse(s: &NExtension, order: &PivotOrder) -> Result<Cochain> {
    let mut lift = lift_identity(s, order)?;
    Ok(lift.components.pop().expect("lift has n + 1 components"))
}
