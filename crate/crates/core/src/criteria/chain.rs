use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::budget::Budget;
use crate::cochain::center_action;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{CohomologyCache, CriterionReport, Witness};

/// Evaluates, on the supplied modules and degrees `1..=max_degree`:
///
/// * `center_invariants`: `M^{Z(A)} = M`,
/// * `relative_center_equals_center`: `Z(A) = Z_M(A)`,
/// * `outer_tensor_relative_center`: `Z(A) = Z_{A⊗A}(A)`,
/// * `brackets_vanish`: `[φ, z]_M` is a coboundary for every basis class `φ`
///   and every basis element `z` of `Z_M(A)`.
pub fn vanishing_chain(
    a: &Arc<Algebra>,
    modules: &[Arc<Bimodule>],
    max_degree: usize,
    budget: &Budget,
) -> Result<CriterionReport> {
    if modules.iter().any(|m| m.algebra() != a) {
        return Err(Error::Precondition("every module must be over the given algebra".into()));
    }
    let center = a.center();
    let center_basis = center.basis_vectors();
    let mut report = CriterionReport::new("vanishing_chain");

    let mut invariants_failure = None;
    'outer: for (idx, m) in modules.iter().enumerate() {
        for z in &center_basis {
            let diff = &m.left_action(z) - &m.right_action(z);
            if let Some(col) = (0..m.dim()).find(|&c| diff.column(c).iter().any(|s| !s.is_zero())) {
                invariants_failure = Some(vec![
                    Witness::count("module index", idx),
                    Witness::element("z in Z(A)", z),
                    Witness::element("m", &m_basis(m, col)),
                    Witness::element("z m − m z", &diff.column(col)),
                ]);
                break 'outer;
            }
        }
    }
    match invariants_failure {
        Some(w) => report.push("center_invariants", false, w),
        None => report.push(
            "center_invariants",
            true,
            vec![Witness::subspace("Z(A), acting symmetrically", &center), Witness::count("modules checked", modules.len())],
        ),
    }

    let mut relative_failure = None;
    for (idx, m) in modules.iter().enumerate() {
        let rel = m.relative_center();
        if rel != center {
            relative_failure = Some(vec![
                Witness::count("module index", idx),
                Witness::subspace("Z(A)", &center),
                Witness::subspace("Z_M(A)", &rel),
            ]);
            break;
        }
    }
    match relative_failure {
        Some(w) => report.push("relative_center_equals_center", false, w),
        None => report.push(
            "relative_center_equals_center",
            true,
            vec![Witness::subspace("Z(A) = Z_M(A)", &center), Witness::count("modules checked", modules.len())],
        ),
    }

    let outer = Bimodule::outer_tensor(a);
    let outer_rel = outer.relative_center();
    if outer_rel == center {
        report.push("outer_tensor_relative_center", true, vec![Witness::subspace("Z(A) = Z_{A⊗A}(A)", &center)]);
    } else {
        let unit = Matrix::column_vector(a.field(), a.unit());
        let z = center_basis
            .iter()
            .find(|z| !outer_rel.contains(z).unwrap_or(true))
            .ok_or_else(|| Error::Internal("relative center strictly larger than the center".into()))?;
        let zc = Matrix::column_vector(a.field(), z);
        report.push(
            "outer_tensor_relative_center",
            false,
            vec![
                Witness::element("z in Z(A)", z),
                Witness::element("z⊗1 − 1⊗z in A⊗A", &(&zc.kron(&unit) - &unit.kron(&zc)).column(0)),
            ],
        );
    }

    let mut checked = 0;
    let mut bracket_failure = None;
    'modules: for (idx, m) in modules.iter().enumerate() {
        let zs = m.relative_center().basis_vectors();
        let mut cache = CohomologyCache::new(m.clone(), budget);
        for n in 1..=max_degree {
            let reps = cache.get(n)?.representatives();
            for phi in &reps {
                for z in &zs {
                    let value = center_action(phi, z)?;
                    checked += 1;
                    if !cache.is_coboundary(&value)? {
                        bracket_failure = Some(vec![
                            Witness::count("module index", idx),
                            Witness::cochain("class representative", phi),
                            Witness::element("z in Z_M(A)", z),
                            Witness::cochain("[φ, z] (not a coboundary)", &value),
                        ]);
                        break 'modules;
                    }
                }
            }
        }
    }
    match bracket_failure {
        Some(w) => report.push("brackets_vanish", false, w),
        None => report.push(
            "brackets_vanish",
            true,
            vec![Witness::count("class/element pairs with coboundary bracket", checked), Witness::count("max degree", max_degree)],
        ),
    }
    Ok(report)
}

fn m_basis(m: &Bimodule, i: usize) -> Vec<crate::field::Scalar> {
    let mut v = vec![m.field().zero(); m.dim()];
    v[i] = m.field().one();
    v
}
