use crate::algebra::Bimodule;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

use super::{CriterionReport, Witness};

fn require_derivation(derivation: &Cochain) -> Result<()> {
    if derivation.degree() != 1 || !derivation.is_cocycle() {
        return Err(Error::Precondition("expected a derivation (a degree-1 cocycle)".into()));
    }
    Ok(())
}

/// Quotient of `(A⊗A) ⊕ M` by the span of `(a⊗b − ab⊗1, second(a, b))` over
/// basis pairs, with the induced map `M → quotient`.
fn quotient_of_sum(derivation: &Cochain, second: impl Fn(usize, usize) -> Vec<Scalar>) -> Result<(Bimodule, Matrix)> {
    let m = derivation.module();
    let a = derivation.algebra();
    let f = a.field();
    let d = a.dim();
    let tensor = Bimodule::outer_tensor(a);
    let sum = Bimodule::direct_sum(&[&tensor, m])?;
    let unit = Matrix::column_vector(f, a.unit());
    let mut relations = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let ei = Matrix::column_vector(f, &a.basis_vector(i));
            let ej = Matrix::column_vector(f, &a.basis_vector(j));
            let ab = Matrix::column_vector(f, &a.mul(&a.basis_vector(i), &a.basis_vector(j)));
            let mut col = (&ei.kron(&ej) - &ab.kron(&unit)).column(0);
            col.extend(second(i, j));
            relations.push(col);
        }
    }
    let span = Subspace::span(f, sum.module.dim(), &relations)?;
    let (module, q) = sum.module.quotient(&span)?;
    let embed = q.projection() * &sum.injections[1];
    Ok((module, embed))
}

/// `E_D = ((A⊗A) ⊕ M) / {(a⊗b − ab⊗1, a D(b))}` and the map `M → E_D`.
///
/// With the relation pairing `a⊗b − ab⊗1` with `D(a) b` the span is not
/// closed under the right action and `M` fails to embed; pairing it with
/// `a D(b)` realizes `E_D` as the pushout of `0 → Ω¹ → A⊗A → A → 0` along
/// the map `Ω¹ → M` induced by `D`.
pub fn ed_module(derivation: &Cochain) -> Result<(Bimodule, Matrix)> {
    require_derivation(derivation)?;
    let m = derivation.module();
    let a = derivation.algebra();
    quotient_of_sum(derivation, |i, j| m.left_action(&a.basis_vector(i)).mul_vec(&derivation.evaluate(&[j])))
}

/// The same construction with the second component `D(a) b`.
#[cfg(test)]
pub(crate) fn ed_module_as_printed(derivation: &Cochain) -> Result<(Bimodule, Matrix)> {
    let m = derivation.module();
    let a = derivation.algebra();
    quotient_of_sum(derivation, |i, j| m.right_action(&a.basis_vector(j)).mul_vec(&derivation.evaluate(&[i])))
}

/// Compares `Ker(D) ∩ Z_M(A)` with `Z_{E_D}(A)`.
pub fn kernel_via_ed(derivation: &Cochain) -> Result<CriterionReport> {
    require_derivation(derivation)?;
    let m = derivation.module();
    let (ed, embed) = ed_module(derivation)?;
    let kernel = derivation.values().kernel();
    let direct = kernel.intersection(&m.relative_center())?;
    let via_ed = ed.relative_center();
    let mut report = CriterionReport::new("kernel_via_ed");
    report.push("coefficients_embed", embed.is_injective(), vec![Witness::matrix("M → E_D", &embed)]);
    report.push(
        "kernel_equals_relative_center",
        direct == via_ed,
        vec![Witness::subspace("Ker(D) ∩ Z_M(A)", &direct), Witness::subspace("Z_{E_D}(A)", &via_ed)],
    );
    Ok(report)
}
