use std::sync::Arc;

use super::constructions::*;
use super::*;

fn q() -> Field {
    Field::Rational
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn vecf(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

fn mat(field: Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(field, rows.iter().map(|r| vecf(field, r)).collect()).unwrap()
}

#[test]
fn validation_examples() {
    assert!(ground_field(q()).validate().is_empty());
    assert!(dual_numbers(q()).validate().is_empty());
    let bad = Algebra::new(
        q(),
        vec!["e1".into(), "e2".into()],
        vecf(q(), &[1, 0]),
        vec![(0, 0, 1, q().one()), (1, 0, 0, q().one())],
    )
    .unwrap();
    let v = bad.validate();
    assert!(v.iter().any(|x| matches!(x, AlgebraViolation::LeftUnit { .. } | AlgebraViolation::RightUnit { .. })));
    assert!(Algebra::checked(q(), vec!["e".into()], vecf(q(), &[1]), vec![]).is_err());
}

#[test]
fn fixtures_are_valid() {
    for field in [q(), f2(), Field::prime(3).unwrap()] {
        for a in [
            dual_numbers(field),
            product_of_fields(field),
            upper_triangular(field),
            full_matrix_algebra(field, 2),
            abelian_group_algebra(field, &[2, 2]),
            matrix_algebra_over(&dual_numbers(field), 2),
        ] {
            assert!(a.validate().is_empty(), "{a:?}");
            let a = Arc::new(a);
            assert!(Bimodule::regular(&a).validate().is_empty());
            assert!(Bimodule::outer_tensor(&a).validate().is_empty());
        }
    }
}

#[test]
fn regular_actions_of_dual_numbers() {
    let a = Arc::new(dual_numbers(q()));
    let m = Bimodule::regular(&a);
    let shift = mat(q(), &[&[0, 0], &[1, 0]]);
    assert_eq!(m.left(1), &shift);
    assert_eq!(m.right(1), &shift);
    let k = Arc::new(ground_field(q()));
    assert_eq!(Bimodule::regular(&k).left(0), &Matrix::identity(q(), 1));
}

#[test]
fn outer_tensor_acts_on_separate_legs() {
    let a = Arc::new(dual_numbers(q()));
    let t = Bimodule::outer_tensor(&a);
    assert_eq!(t.dim(), 4);
    // x (1 ⊗ 1) = x ⊗ 1, i.e. basis index 0 goes to index 2.
    assert_eq!(t.left(1).column(0), vecf(q(), &[0, 0, 1, 0]));
    // (1 ⊗ 1) x = 1 ⊗ x, index 0 goes to index 1.
    assert_eq!(t.right(1).column(0), vecf(q(), &[0, 1, 0, 0]));
}

#[test]
fn centers() {
    assert_eq!(dual_numbers(q()).center().dim(), 2);
    let m2 = full_matrix_algebra(q(), 2);
    let z = m2.center();
    assert_eq!(z, Subspace::span(q(), 4, &[m2.unit().to_vec()]).unwrap());
    let ut = upper_triangular(q());
    assert_eq!(ut.center(), Subspace::span(q(), 3, &[ut.unit().to_vec()]).unwrap());
}

#[test]
fn relative_centers() {
    for field in [q(), f2()] {
        for a in [dual_numbers(field), upper_triangular(field), full_matrix_algebra(field, 2)] {
            let a = Arc::new(a);
            assert_eq!(Bimodule::regular(&a).relative_center(), a.center());
            let outer = Bimodule::outer_tensor(&a).relative_center();
            assert!(Bimodule::regular(&a).relative_center().contains_subspace(&outer).unwrap());
        }
    }
    let a = Arc::new(dual_numbers(q()));
    let tw = Bimodule::twisted(&a, &dual_numbers_sign_twist(q())).unwrap();
    assert_eq!(tw.relative_center(), Subspace::span(q(), 2, &[vecf(q(), &[1, 0])]).unwrap());
    let a2 = Arc::new(dual_numbers(f2()));
    let tw2 = Bimodule::twisted(&a2, &dual_numbers_sign_twist(f2())).unwrap();
    assert!(tw2.is_regular());
    let nil = Bimodule::twisted(&a2, &dual_numbers_nil_twist(f2())).unwrap();
    assert!(nil.validate().is_empty());
    assert_eq!(nil.relative_center().dim(), 1);
    let sym = Bimodule::new(a.clone(), 2, Bimodule::regular(&a).left_matrices().to_vec(), Bimodule::regular(&a).left_matrices().to_vec()).unwrap();
    assert_eq!(sym.relative_center().dim(), 2);
    assert!(Bimodule::twisted(&a, &mat(q(), &[&[1, 0], &[1, 1]])).is_err());
}

#[test]
fn defect_examples() {
    let a = Arc::new(dual_numbers(q()));
    let tw = Bimodule::twisted(&a, &dual_numbers_sign_twist(q())).unwrap();
    assert!(!tw.defect(&vecf(q(), &[0, 1])).unwrap().is_zero());
    assert!(tw.defect(&vecf(q(), &[1, 0])).unwrap().is_zero());
    assert!(Bimodule::regular(&a).defect(&vecf(q(), &[3, 1])).unwrap().is_zero());
    let ut = Arc::new(upper_triangular(q()));
    assert!(Bimodule::regular(&ut).defect(&vecf(q(), &[1, 0, 0])).is_err());
}

#[test]
fn invariants_examples() {
    let m2 = Arc::new(full_matrix_algebra(q(), 2));
    assert_eq!(Bimodule::regular(&m2).invariants(), m2.center());
    let a = Arc::new(dual_numbers(q()));
    assert_eq!(Bimodule::regular(&a).invariants().dim(), 2);
}

#[test]
fn tensor_products_over_a() {
    let a = Arc::new(dual_numbers(q()));
    let reg = Bimodule::regular(&a);
    assert_eq!(Bimodule::tensor_over(&reg, &reg).unwrap().module.dim(), 2);
    let (t, rho) = reg.right_unitor().unwrap();
    assert_eq!(t.module.dim(), 2);
    assert!(rho.inverse().is_some());
    assert!(t.module.is_morphism_to(&reg, &rho));
    let (_, lambda) = reg.left_unitor().unwrap();
    assert!(lambda.inverse().is_some());
    let (ax, _) = reg.quotient(&Subspace::span(q(), 2, &[vecf(q(), &[0, 1])]).unwrap()).unwrap();
    assert_eq!(Bimodule::tensor_over(&ax, &ax).unwrap().module.dim(), 1);
}

#[test]
fn quotient_rejects_non_submodule() {
    let a = Arc::new(dual_numbers(q()));
    let reg = Bimodule::regular(&a);
    assert!(reg.quotient(&Subspace::span(q(), 2, &[vecf(q(), &[1, 0])]).unwrap()).is_err());
    assert!(reg.submodule(&Subspace::span(q(), 2, &[vecf(q(), &[1, 0])]).unwrap()).is_err());
    let (sub, incl) = reg.submodule(&Subspace::span(q(), 2, &[vecf(q(), &[0, 1])]).unwrap()).unwrap();
    assert!(sub.is_morphism_to(&reg, &incl));
}

#[test]
fn hom_space_of_regular_is_center() {
    for a in [dual_numbers(q()), full_matrix_algebra(q(), 2), product_of_fields(q())] {
        let a = Arc::new(a);
        let reg = Bimodule::regular(&a);
        assert_eq!(Bimodule::hom_basis(&reg, &reg).unwrap().len(), a.center().dim());
    }
}

#[test]
fn derivation_examples() {
    let k = Arc::new(ground_field(q()));
    assert_eq!(derivation_space(&Bimodule::regular(&k)).derivations.dim(), 0);
    let a = Arc::new(dual_numbers(q()));
    let ds = derivation_space(&Bimodule::regular(&a));
    assert_eq!((ds.derivations.dim(), ds.inner.dim()), (1, 0));
    // Euler derivation: D(1) = 0, D(x) = x.
    assert!(ds.derivations.contains(&vecf(q(), &[0, 0, 0, 1])).unwrap());
    let m2 = Arc::new(full_matrix_algebra(q(), 2));
    let ds = derivation_space(&Bimodule::regular(&m2));
    assert_eq!(ds.derivations.dim(), 3);
    assert_eq!(ds.derivations, ds.inner);
    for a in [upper_triangular(q()), product_of_fields(q())] {
        let ds = derivation_space(&Bimodule::regular(&Arc::new(a)));
        assert!(ds.derivations.contains_subspace(&ds.inner).unwrap());
    }
}

#[test]
fn matrix_algebra_basics() {
    let b = matrix_algebra_over(&dual_numbers(q()), 2);
    assert_eq!(b.dim(), 8);
    assert_eq!(b.center().dim(), 2);
    assert!(abelian_group_algebra(q(), &[2, 2]).is_commutative());
}

#[test]
fn tensor_of_dual_numbers_is_commutative_with_a_four_dimensional_center() {
    let a = tensor_product(&dual_numbers(q()), &dual_numbers(q()));
    assert_eq!(a.dim(), 4);
    assert!(a.is_commutative());
    assert_eq!(a.center().dim(), 4);
    // (x⊗1)(1⊗x) = x⊗x and (x⊗1)² = 0
    assert_eq!(a.mul(&a.basis_vector(2), &a.basis_vector(1)), a.basis_vector(3));
    assert_eq!(a.mul(&a.basis_vector(2), &a.basis_vector(2)), a.zero_vector());
    let m2 = tensor_product(&full_matrix_algebra(f2(), 2), &dual_numbers(f2()));
    assert!(m2.validate().is_empty());
    assert_eq!(m2.center().dim(), 2);
}
