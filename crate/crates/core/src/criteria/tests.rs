use std::sync::Arc;

use super::*;
use crate::algebra::constructions::*;
use crate::algebra::derivation_space;
use crate::cochain::{cohomology, Cochain};
use crate::error::Error;
use crate::field::Scalar;
use crate::field::Field;

fn q() -> Field {
    Field::Rational
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn arc(a: Algebra) -> Arc<Algebra> {
    Arc::new(a)
}

fn regular(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Arc::new(Bimodule::regular(a))
}

fn outer(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Arc::new(Bimodule::outer_tensor(a))
}

fn twisted(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Arc::new(Bimodule::twisted(a, &dual_numbers_sign_twist(a.field())).unwrap())
}

fn budget() -> Budget {
    Budget::default()
}

fn fixtures() -> Vec<Arc<Algebra>> {
    vec![
        arc(dual_numbers(q())),
        arc(dual_numbers(f2())),
        arc(dual_numbers(f3())),
        arc(product_of_fields(q())),
        arc(full_matrix_algebra(q(), 2)),
        arc(upper_triangular(q())),
        arc(abelian_group_algebra(f2(), &[2])),
        arc(abelian_group_algebra(f2(), &[2, 2])),
    ]
}

fn assert_witnessed(report: &CriterionReport) {
    assert!(!report.outcomes.is_empty());
    for o in &report.outcomes {
        assert!(!o.witnesses.is_empty(), "{} / {}", report.criterion, o.label);
    }
}

#[test]
fn center_algebra_of_matrices_is_the_ground_field() {
    let (z, inclusion) = center_algebra(&full_matrix_algebra(q(), 2)).unwrap();
    assert_eq!(z.dim(), 1);
    assert_eq!(inclusion.rows(), 4);
    let (z, _) = center_algebra(&dual_numbers(q())).unwrap();
    assert_eq!(z.dim(), 2);
    assert!(z.is_commutative());
}

#[test]
fn ring_epi_examples() {
    let m2 = check_ring_epi_criterion(&full_matrix_algebra(q(), 2)).unwrap();
    assert_eq!(m2.holds("multiplication_bijective"), Some(true));
    let dual = check_ring_epi_criterion(&dual_numbers(q())).unwrap();
    assert_eq!(dual.holds("multiplication_bijective"), Some(false));
    let w = &dual.outcome("multiplication_bijective").unwrap().witnesses;
    assert!(w.iter().any(|x| matches!(x, Witness::Element { label, .. } if label.starts_with("z⊗1"))));
    assert_eq!(check_ring_epi_criterion(&product_of_fields(q())).unwrap().holds("multiplication_bijective"), Some(false));
    assert_eq!(check_ring_epi_criterion(&upper_triangular(q())).unwrap().holds("multiplication_bijective"), Some(true));
    for a in fixtures() {
        assert_witnessed(&check_ring_epi_criterion(&a).unwrap());
    }
}

fn check_braiding_solution(t: &Algebra, r: &[Scalar]) {
    let (system, rhs) = super::braiding::tests_support::equations(t);
    assert_eq!(system.mul_vec(r), rhs);
    assert!(super::braiding::tests_support::invertible(t, r));
}

#[test]
fn braiding_on_the_ground_field_is_trivial() {
    let k = ground_field(q());
    let found = find_braiding(&k, BraidingTarget::Algebra, DEFAULT_PATTERN_BUDGET).unwrap();
    assert_eq!(found.element, Some(vec![q().one()]));
    assert!(found.report().all_hold());
}

#[test]
fn braiding_on_a_one_dimensional_center_is_trivial() {
    for a in [full_matrix_algebra(q(), 2), upper_triangular(q())] {
        let found = find_braiding(&a, BraidingTarget::Center, DEFAULT_PATTERN_BUDGET).unwrap();
        let r = found.element.clone().expect("1⊗1⊗1 solves the equations");
        assert_eq!(found.patterns_tried, 1);
        check_braiding_solution(&found.algebra, &r);
    }
}

#[test]
fn braiding_is_not_found_when_the_epi_criterion_fails() {
    for a in [dual_numbers(q()), dual_numbers(f2()), dual_numbers(f3()), product_of_fields(q())] {
        let found = find_braiding(&a, BraidingTarget::Center, 500).unwrap();
        assert!(found.element.is_none());
        let report = found.report();
        assert_eq!(report.holds("invertible_solution_found"), Some(false));
        assert_witnessed(&report);
    }
}

#[test]
fn braiding_search_over_a_small_prime_field_is_exhaustive() {
    // the linear system is already inconsistent, which settles the search
    let found = find_braiding(&dual_numbers(f2()), BraidingTarget::Algebra, 1 << 16).unwrap();
    assert_eq!(found.solution_dim, None);
    assert!(found.exhaustive);
    assert!(found.report().outcome("invertible_solution_found").is_some_and(|o| !o.holds));
}

#[test]
fn braiding_on_a_matrix_algebra_is_not_the_trivial_element() {
    for f in [q(), f2()] {
        let a = full_matrix_algebra(f, 2);
        let found = find_braiding(&a, BraidingTarget::Algebra, DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(found.solution_dim, Some(0));
        let r = found.element.clone().expect("M_2 bimodules are braided");
        assert!(r.iter().filter(|s| !s.is_zero()).count() > 1);
        check_braiding_solution(&a, &r);
    }
}

#[test]
fn braiding_on_upper_triangular_matrices_is_inconsistent() {
    let found = find_braiding(&upper_triangular(q()), BraidingTarget::Algebra, DEFAULT_PATTERN_BUDGET).unwrap();
    assert_eq!(found.solution_dim, None);
    assert!(found.element.is_none());
}

#[test]
fn vanishing_chain_with_one_dimensional_center() {
    for a in [arc(full_matrix_algebra(q(), 2)), arc(upper_triangular(q()))] {
        let report = vanishing_chain(&a, &[regular(&a), outer(&a)], 2, &budget()).unwrap();
        assert_witnessed(&report);
        assert!(report.all_hold(), "{report:?}");
    }
}

#[test]
fn vanishing_chain_on_dual_numbers_produces_the_euler_witness() {
    let a = arc(dual_numbers(q()));
    let report = vanishing_chain(&a, &[regular(&a)], 2, &budget()).unwrap();
    assert_eq!(report.holds("outer_tensor_relative_center"), Some(false));
    assert_eq!(report.holds("brackets_vanish"), Some(false));
    assert_eq!(report.holds("relative_center_equals_center"), Some(true));
    let w = &report.outcome("brackets_vanish").unwrap().witnesses;
    let value = w.iter().find_map(|x| match x {
        Witness::Cochain { label, degree, .. } if label.starts_with("[φ") => Some(*degree),
        _ => None,
    });
    assert_eq!(value, Some(0));
}

#[test]
fn vanishing_chain_on_a_product_shows_the_converse_fails() {
    let a = arc(product_of_fields(q()));
    let report = vanishing_chain(&a, &[regular(&a), outer(&a)], 3, &budget()).unwrap();
    assert_eq!(report.holds("outer_tensor_relative_center"), Some(false));
    assert_eq!(report.holds("brackets_vanish"), Some(true));
    assert_eq!(report.holds("relative_center_equals_center"), Some(false));
}

#[test]
fn epi_criterion_implies_the_center_items() {
    for a in fixtures() {
        let epi = check_ring_epi_criterion(&a).unwrap().holds("multiplication_bijective").unwrap();
        let mut modules = vec![regular(&a), outer(&a)];
        if a.dim() == 2 && a.field() != f2() && a.is_commutative() && !a.center().is_zero() {
            if let Ok(m) = Bimodule::twisted(&a, &dual_numbers_sign_twist(a.field())) {
                modules.push(Arc::new(m));
            }
        }
        let report = vanishing_chain(&a, &modules, 1, &budget()).unwrap();
        if epi {
            assert!(report.holds("center_invariants").unwrap());
            assert!(report.holds("relative_center_equals_center").unwrap());
            assert!(report.holds("outer_tensor_relative_center").unwrap());
        }
        assert_eq!(report.holds("outer_tensor_relative_center").unwrap(), epi);
        assert_eq!(report.holds("center_invariants"), report.holds("relative_center_equals_center"));
        if report.holds("outer_tensor_relative_center").unwrap() {
            assert!(report.holds("brackets_vanish").unwrap());
        }
    }
}

fn derivations(m: &Arc<Bimodule>) -> Vec<Cochain> {
    let space = derivation_space(m);
    let mut out = vec![Cochain::zero(m.clone(), 1)];
    for v in space.derivations.basis_vectors().iter().chain(space.inner.basis_vectors().iter()) {
        out.push(Cochain::from_vector(m.clone(), 1, v).unwrap());
    }
    out
}

#[test]
fn kernel_via_ed_on_fixtures() {
    let mut modules = Vec::new();
    for a in fixtures() {
        modules.push(regular(&a));
        if a.dim() <= 2 {
            modules.push(outer(&a));
        }
    }
    let dq = arc(dual_numbers(q()));
    modules.push(twisted(&dq));
    let mut inner_seen = 0;
    for m in &modules {
        for d in derivations(m) {
            if !d.is_zero() && derivation_space(m).inner.contains(&d.to_vector()).unwrap() {
                inner_seen += 1;
            }
            let report = kernel_via_ed(&d).unwrap();
            assert_witnessed(&report);
            assert!(report.all_hold(), "{report:?}");
        }
    }
    assert!(inner_seen > 0);
}

#[test]
fn kernel_via_ed_examples() {
    let a = arc(dual_numbers(q()));
    let m = regular(&a);
    let euler = Cochain::from_fn(m.clone(), 1, |d| if d[0] == 1 { vec![q().zero(), q().one()] } else { vec![q().zero(); 2] }).unwrap();
    let report = kernel_via_ed(&euler).unwrap();
    let expected = Witness::subspace("Z_{E_D}(A)", &Subspace::span(q(), 2, &[a.unit().to_vec()]).unwrap());
    assert!(report.outcome("kernel_equals_relative_center").unwrap().witnesses.contains(&expected));
    let zero = kernel_via_ed(&Cochain::zero(m.clone(), 1)).unwrap();
    let all = Witness::subspace("Z_{E_D}(A)", &m.relative_center());
    assert!(zero.outcome("kernel_equals_relative_center").unwrap().witnesses.contains(&all));
    let (ed, _) = ed_module(&Cochain::zero(m.clone(), 1)).unwrap();
    assert_eq!(ed.dim(), a.dim() + m.dim());
    assert!(kernel_via_ed(&Cochain::zero(m.clone(), 2)).is_err());
    let not_derivation = Cochain::from_fn(m.clone(), 1, |_| vec![q().one(), q().zero()]).unwrap();
    assert!(kernel_via_ed(&not_derivation).is_err());
}

#[test]
fn printed_relations_do_not_give_an_extension() {
    let a = arc(dual_numbers(q()));
    let m = regular(&a);
    let euler = Cochain::from_fn(m.clone(), 1, |d| if d[0] == 1 { vec![q().zero(), q().one()] } else { vec![q().zero(); 2] }).unwrap();
    match super::kernel::ed_module_as_printed(&euler) {
        Err(_) => {}
        Ok((_, embed)) => assert!(!embed.is_injective()),
    }
    let (_, embed) = ed_module(&euler).unwrap();
    assert!(embed.is_injective());
}

#[test]
fn ed_agrees_with_the_pushout_extension() {
    let a = arc(upper_triangular(q()));
    let m = regular(&a);
    for d in derivations(&m) {
        let (ed, _) = ed_module(&d).unwrap();
        let ext = crate::resolution::ext1_from_derivation(&d).unwrap();
        assert_eq!(ed.dim(), ext.term(0).dim());
        assert_eq!(ed.relative_center(), ext.term(0).relative_center());
    }
}

#[test]
fn morita_transport_on_dual_numbers() {
    let a = arc(dual_numbers(q()));
    for m in [regular(&a), twisted(&a)] {
        let report = morita_transport(&m, 2, 2, &budget()).unwrap();
        assert_witnessed(&report);
        assert!(report.all_hold(), "{report:?}");
    }
    let report = morita_transport(&regular(&a), 2, 1, &budget()).unwrap();
    let h1 = &report.outcome("hh1_dims_agree").unwrap().witnesses;
    assert!(h1.contains(&Witness::count("dim HH^1(A, M)", 1)));
}

#[test]
fn morita_transport_degree_zero_for_other_fixtures() {
    for (a, k) in [(arc(ground_field(q())), 3), (arc(product_of_fields(q())), 2), (arc(dual_numbers(f2())), 2)] {
        let report = morita_transport(&regular(&a), k, 0, &budget()).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }
}

#[test]
fn morita_data_is_a_bimodule_of_the_expected_size() {
    let a = arc(dual_numbers(q()));
    let data = MoritaData::new(&regular(&a), 2, &budget()).unwrap();
    assert_eq!(data.matrix_algebra.dim(), 8);
    assert_eq!(data.transported.dim(), 8);
    assert!(data.transported.validate().is_empty());
    assert!(MoritaData::new(&regular(&a), 0, &budget()).is_err());
    assert!(matches!(MoritaData::new(&regular(&a), 2, &Budget::new(10)), Err(Error::Budget { .. })));
}

#[test]
fn poisson_zero_structure() {
    let a = arc(dual_numbers(q()));
    let m = regular(&a);
    let report = poisson_check(&Cochain::zero(m, 2), &budget()).unwrap();
    assert!(report.all_hold());
    let table = report.outcome("values_in_center").unwrap();
    assert!(matches!(&table.witnesses[0], Witness::Matrix { rows, .. } if rows.iter().flatten().all(|s| s == "0")));
}

#[test]
fn poisson_on_fixtures() {
    for a in [arc(dual_numbers(q())), arc(dual_numbers(f3())), arc(abelian_group_algebra(f3(), &[3])), arc(full_matrix_algebra(q(), 2))] {
        let m = regular(&a);
        let h2 = cohomology(&m, 2, &budget()).unwrap();
        let mut candidates = h2.representatives();
        if candidates.len() > 1 {
            let sum = candidates.iter().skip(1).try_fold(candidates[0].clone(), |acc, c| acc.checked_add(c)).unwrap();
            candidates.push(sum);
        }
        for pi in candidates {
            let report = poisson_check(&pi, &budget()).unwrap();
            assert_witnessed(&report);
            if report.holds("self_bracket_is_coboundary") == Some(true) {
                assert!(report.all_hold(), "{report:?}");
            }
        }
    }
}

#[test]
fn poisson_on_a_one_dimensional_center_is_zero() {
    let a = arc(upper_triangular(q()));
    let report = poisson_check(&Cochain::zero(regular(&a), 2), &budget()).unwrap();
    assert!(report.all_hold());
}

#[test]
fn poisson_rejects_bad_input() {
    let a = arc(dual_numbers(f2()));
    assert!(matches!(poisson_check(&Cochain::zero(regular(&a), 2), &budget()), Err(Error::Precondition(_))));
    let b = arc(dual_numbers(q()));
    assert!(poisson_check(&Cochain::zero(regular(&b), 1), &budget()).is_err());
    let non_cocycle = Cochain::from_fn(regular(&b), 2, |_| vec![q().one(), q().zero()]).unwrap();
    assert!(!non_cocycle.is_cocycle());
    assert!(poisson_check(&non_cocycle, &budget()).is_err());
}

#[test]
fn gerstenhaber_axioms_hold_in_low_degree() {
    for a in [arc(dual_numbers(q())), arc(abelian_group_algebra(f2(), &[2])), arc(upper_triangular(q()))] {
        let report = gerstenhaber_axioms(&a, 3, &budget()).unwrap();
        assert_witnessed(&report);
        assert_eq!(report.outcomes.len(), 6);
        assert!(report.all_hold(), "{report:?}");
    }
}

#[test]
fn module_axioms_hold_on_fixtures() {
    let dq = arc(dual_numbers(q()));
    let z2 = arc(abelian_group_algebra(f2(), &[2]));
    for m in [regular(&dq), twisted(&dq), regular(&z2), outer(&dq)] {
        let report = module_axioms(&m, 3, &budget()).unwrap();
        assert_witnessed(&report);
        assert!(report.all_hold(), "{report:?}");
    }
}

#[test]
fn reports_serialize() {
    let report = check_ring_epi_criterion(&dual_numbers(q())).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["criterion"], "ring_epi");
    assert_eq!(json["outcomes"][0]["holds"], false);
    assert!(json["outcomes"][0]["witnesses"][0]["kind"].is_string());
}

/// `K[x,y]/(x², y²)` on the basis `1, x, y, xy`.
fn two_dual_numbers(f: Field) -> Arc<Algebra> {
    let exps = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut table = Vec::new();
    for (i, &(a, b)) in exps.iter().enumerate() {
        for (j, &(c, d)) in exps.iter().enumerate() {
            if let Some(k) = exps.iter().position(|&e| e == (a + c, b + d)) {
                table.push((i, j, k, f.one()));
            }
        }
    }
    let names = ["1", "x", "y", "xy"].map(String::from).to_vec();
    arc(Algebra::checked(f, names, vec![f.one(), f.zero(), f.zero(), f.zero()], table).unwrap())
}

#[test]
fn poisson_from_commuting_euler_derivations() {
    // Π = x∂x ∧ y∂y, so {x, y} = ±2xy
    let a = two_dual_numbers(q());
    let exps = [(0i64, 0i64), (1, 0), (0, 1), (1, 1)];
    let pi = Cochain::from_fn(regular(&a), 2, |t| {
        let ((xi, yi), (xj, yj)) = (exps[t[0]], exps[t[1]]);
        let prod = a.mul(&a.basis_vector(t[0]), &a.basis_vector(t[1]));
        let c = q().from_i64(xi * yj - yi * xj);
        prod.iter().map(|s| s * &c).collect()
    })
    .unwrap();
    assert!(pi.is_cocycle());
    let report = poisson_check(&pi, &budget()).unwrap();
    assert!(report.all_hold(), "{report:?}");
    let table = report.outcome("values_in_center").unwrap();
    let Witness::Matrix { rows, .. } = &table.witnesses[0] else { panic!("expected a matrix") };
    assert!(rows.iter().flatten().any(|s| s != "0"));
}

#[test]
fn extension_module_axioms_agree_with_the_cochain_side() {
    let a = arc(dual_numbers(q()));
    for m in [regular(&a), twisted(&a)] {
        let cochain_side = module_axioms(&m, 3, &budget()).unwrap();
        let extension_side = extension_module_axioms(&m, 3, &budget()).unwrap();
        assert_witnessed(&extension_side);
        for label in ["twice_bracketed_symmetric_sum", "bracket_is_derivation"] {
            assert_eq!(extension_side.holds(label), cochain_side.holds(label), "{label}");
        }
    }
}
