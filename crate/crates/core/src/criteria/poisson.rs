use crate::budget::Budget;
use crate::cochain::{center_action, cohomology, gerstenhaber_bracket, Cochain};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;

use super::{CriterionReport, Witness};

/// For a degree-2 cocycle `Π` with coefficients in `A`: tests whether `{Π, Π}`
/// is a coboundary and, if so, checks that `{z, z'} = [[Π, z], z']` is a
/// Poisson bracket on `Z(A)` over all basis pairs and triples.
pub fn poisson_check(pi: &Cochain, budget: &Budget) -> Result<CriterionReport> {
    let a = pi.algebra().clone();
    let f = a.field();
    if f.characteristic() == 2 {
        return Err(Error::Precondition("Poisson structures need characteristic different from 2".into()));
    }
    if !pi.module().is_regular() || pi.degree() != 2 {
        return Err(Error::Precondition("expected a degree-2 cochain with coefficients in A".into()));
    }
    if !pi.is_cocycle() {
        return Err(Error::Precondition("Π is not a cocycle".into()));
    }
    let mut report = CriterionReport::new("poisson");
    let square = gerstenhaber_bracket(pi, pi)?;
    if !cohomology(pi.module(), 3, budget)?.is_coboundary(&square)? {
        report.push("self_bracket_is_coboundary", false, vec![Witness::cochain("{Π, Π}", &square)]);
        return Ok(report);
    }
    report.push("self_bracket_is_coboundary", true, vec![Witness::cochain("{Π, Π}", &square)]);

    let center = a.center();
    let basis = center.basis_vectors();
    let bracket = |u: &[Scalar], v: &[Scalar]| -> Result<Vec<Scalar>> {
        Ok(center_action(&center_action(pi, u)?, v)?.evaluate(&[]))
    };
    let add = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> { x.iter().zip(y).map(|(p, q)| p + q).collect() };
    let c = basis.len();

    let mut table = Vec::with_capacity(c * c);
    let mut closed = true;
    for u in &basis {
        for v in &basis {
            let value = bracket(u, v)?;
            match center.coordinates(&value)? {
                Some(coords) => table.push(coords),
                None => {
                    closed = false;
                    table.push(vec![f.zero(); c]);
                }
            }
        }
    }
    report.push(
        "values_in_center",
        closed,
        vec![Witness::matrix("column i*c+j holds the center coordinates of {z_i, z_j}", &Matrix::from_columns(f, c, &table)?)],
    );

    let mut antisymmetry = None;
    'anti: for u in &basis {
        for v in &basis {
            let sum = add(&bracket(u, v)?, &bracket(v, u)?);
            if sum.iter().any(|s| !s.is_zero()) {
                antisymmetry = Some(vec![Witness::element("z", u), Witness::element("z'", v), Witness::element("{z,z'} + {z',z}", &sum)]);
                break 'anti;
            }
        }
    }
    let pairs = c * c;
    let triples = c * c * c;
    push_axiom(&mut report, "antisymmetry", antisymmetry, pairs);

    let mut jacobi = None;
    let mut leibniz = None;
    for u in &basis {
        for v in &basis {
            for w in &basis {
                if jacobi.is_none() {
                    let total = add(
                        &add(&bracket(u, &bracket(v, w)?)?, &bracket(v, &bracket(w, u)?)?),
                        &bracket(w, &bracket(u, v)?)?,
                    );
                    if total.iter().any(|s| !s.is_zero()) {
                        jacobi = Some(vec![
                            Witness::element("a", u),
                            Witness::element("b", v),
                            Witness::element("c", w),
                            Witness::element("cyclic sum", &total),
                        ]);
                    }
                }
                if leibniz.is_none() {
                    let lhs = bracket(u, &a.mul(v, w))?;
                    let rhs = add(&a.mul(&bracket(u, v)?, w), &a.mul(v, &bracket(u, w)?));
                    if lhs != rhs {
                        let defect: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                        leibniz = Some(vec![
                            Witness::element("a", u),
                            Witness::element("b", v),
                            Witness::element("c", w),
                            Witness::element("{a,bc} − {a,b}c − b{a,c}", &defect),
                        ]);
                    }
                }
            }
        }
    }
    push_axiom(&mut report, "jacobi", jacobi, triples);
    push_axiom(&mut report, "leibniz", leibniz, triples);
    Ok(report)
}

fn push_axiom(report: &mut CriterionReport, label: &str, failure: Option<Vec<Witness>>, instances: usize) {
    match failure {
        Some(w) => report.push(label, false, w),
        None => report.push(label, true, vec![Witness::count("basis instances checked", instances)]),
    }
}
