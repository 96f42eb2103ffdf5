use std::sync::Arc;

use super::*;
use crate::algebra::constructions::*;
use crate::algebra::derivation_space;
use crate::cochain::cohomology;
use crate::extension::{find_morphism, NExtension};
use crate::field::Field;
use crate::sampling;

fn q() -> Field {
    Field::Rational
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn vecf(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

fn regular(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Arc::new(Bimodule::regular(a))
}

fn euler(m: &Arc<Bimodule>) -> Cochain {
    let f = m.field();
    Cochain::from_fn(m.clone(), 1, |d| if d[0] == 1 { vecf(f, &[0, 1]) } else { vecf(f, &[0, 0]) }).unwrap()
}

fn bar(a: &Arc<Algebra>, n: usize) -> BarResolution {
    BarResolution::new(a, n, &Budget::default()).unwrap()
}

#[test]
fn bar_of_ground_field_alternates() {
    let a = Arc::new(ground_field(q()));
    let b = bar(&a, 4);
    for k in 1..=4 {
        let expected = if k % 2 == 1 { Matrix::zeros(q(), 1, 1) } else { Matrix::identity(q(), 1) };
        assert_eq!(*b.differential(k), expected);
    }
}

#[test]
fn bar_of_dual_numbers_is_exact() {
    let a = Arc::new(dual_numbers(q()));
    let b = bar(&a, 3);
    assert!((b.differential(1) * b.differential(2)).is_zero());
    assert!((b.augmentation() * b.differential(1)).is_zero());
    let r1 = b.differential(1).rank();
    let r2 = b.differential(2).rank();
    assert_eq!(r1 + r2, b.term(1).dim());
    assert_eq!(b.augmentation().rank() + r1, b.term(0).dim());
    assert!(b.term(2).validate().is_empty());
}

#[test]
fn bar_budget_names_degree() {
    let a = Arc::new(dual_numbers(q()));
    match BarResolution::new(&a, 6, &Budget::new(64)) {
        Err(Error::Budget { degree, .. }) => assert_eq!(degree, 5),
        other => panic!("expected a budget error, got {other:?}"),
    }
}

#[test]
fn adjunction_at_degree_zero() {
    let a = Arc::new(upper_triangular(q()));
    let m = regular(&a);
    let b = bar(&a, 1);
    let v = vecf(q(), &[1, 2, 3]);
    let phi = b.realize(&Cochain::from_element(m.clone(), &v).unwrap()).unwrap();
    assert_eq!(b.adjoint_cochain(0, &m, &phi).unwrap().evaluate(&[]), v);
    assert!(b.adjoint_cochain(0, &m, &Matrix::identity(q(), 9).select_rows(&[0, 1, 2])).is_err());
}

#[test]
fn adjunction_round_trips_and_intertwines() {
    for a in [Arc::new(dual_numbers(f2())), Arc::new(product_of_fields(f2())), Arc::new(upper_triangular(q()))] {
        let b = bar(&a, 3);
        let m = regular(&a);
        let mut rng = sampling::rng(13);
        for k in 0..=2 {
            let f = sampling::cochain(&m, k, &mut rng);
            let phi = b.realize(&f).unwrap();
            assert!(b.term(k).is_morphism_to(&m, &phi));
            assert_eq!(b.adjoint_cochain(k, &m, &phi).unwrap(), f);
            assert_eq!(&phi * b.differential(k + 1), b.realize(&f.differential()).unwrap());
        }
    }
}

fn explicit_squares_commute(b: &BarResolution, s: &NExtension, lift: &ChainMap) -> bool {
    let realized: Vec<Matrix> = lift.components.iter().map(|c| b.realize(c).unwrap()).collect();
    let first = s.map(0) * &realized[0] == b.augmentation().scale(&lift.base);
    first && (1..=s.length()).all(|k| s.map(k) * &realized[k] == &realized[k - 1] * b.differential(k))
}

#[test]
fn lifts_into_chi_are_chain_maps() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let b = bar(&a, 3);
    for n in 1..=3 {
        let h = cohomology(&m, n, &Budget::default()).unwrap();
        let phi = sampling::cocycle(&h, &mut sampling::rng(n as u64));
        let s = chi(&b, &phi).unwrap();
        assert_eq!(s.length(), n);
        for order in [PivotOrder::Natural, PivotOrder::Reversed, PivotOrder::Seeded(3)] {
            let lift = b.lift_identity(&s, &order).unwrap();
            assert!(lift.is_chain_map_into(&s));
            assert!(explicit_squares_commute(&b, &s, &lift));
        }
    }
}

#[test]
fn lift_into_split_extension() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let s = NExtension::trivial(&m, 1).unwrap();
    let lift = lift_identity(&s, &PivotOrder::Natural).unwrap();
    assert!(lift.is_chain_map_into(&s));
    assert_eq!(lift.components[0].evaluate(&[]), vecf(q(), &[0, 0, 1, 0]));
    assert!(lift.components[1].is_zero());
    assert!(bar(&a, 1).lift_identity(&NExtension::trivial(&m, 2).unwrap(), &PivotOrder::Natural).is_err());
}

#[test]
fn distinct_lifts_differ_by_null_homotopic_map() {
    let a = Arc::new(dual_numbers(f2()));
    let m = regular(&a);
    let b = bar(&a, 3);
    for n in 1..=3 {
        let h = cohomology(&m, n, &Budget::default()).unwrap();
        let s = chi(&b, &sampling::cocycle(&h, &mut sampling::rng(40 + n as u64))).unwrap();
        let first = lift_identity(&s, &PivotOrder::Natural).unwrap();
        let second = lift_identity(&s, &PivotOrder::Seeded(9)).unwrap();
        let difference = first.checked_sub(&second).unwrap();
        let homotopy = null_homotopy(&difference, &s, &PivotOrder::Natural).unwrap();
        assert!(homotopy.trivializes(&difference, &s));
    }
}

#[test]
fn null_homotopy_recovers_constructed_homotopies() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let b = bar(&a, 3);
    let h = cohomology(&m, 3, &Budget::default()).unwrap();
    let s = chi(&b, &sampling::cocycle(&h, &mut sampling::rng(5))).unwrap();
    let mut rng = sampling::rng(6);
    let n = s.length();
    let t: Vec<Cochain> = (0..n).map(|k| sampling::cochain(s.term(k + 1), k, &mut rng)).collect();
    let mut components = Vec::new();
    for k in 0..=n {
        let mut total = Cochain::zero(s.term(k).clone(), k);
        if k < n {
            total = total.checked_add(&t[k].map_coefficients(s.term(k), s.map(k + 1)).unwrap()).unwrap();
        }
        if k > 0 {
            total = total.checked_add(&t[k - 1].differential()).unwrap();
        }
        components.push(total);
    }
    let psi = ChainMap { base: q().zero(), components };
    let found = null_homotopy(&psi, &s, &PivotOrder::Natural).unwrap();
    assert!(found.trivializes(&psi, &s));
    let zero = ChainMap { base: q().zero(), components: (0..=n).map(|k| Cochain::zero(s.term(k).clone(), k)).collect() };
    assert!(null_homotopy(&zero, &s, &PivotOrder::Natural).unwrap().components.iter().all(Cochain::is_zero));
    let lift = lift_identity(&s, &PivotOrder::Natural).unwrap();
    assert!(matches!(null_homotopy(&lift, &s, &PivotOrder::Natural), Err(Error::Precondition(_))));
}

#[test]
fn omega_one_examples() {
    let k = Arc::new(ground_field(q()));
    assert_eq!(omega1(&k).unwrap().module().dim(), 0);
    let a = Arc::new(dual_numbers(q()));
    let om = omega1(&a).unwrap();
    assert_eq!(om.module().dim(), 2);
    assert_eq!(om.generator_rank(), 2);
    assert!(is_derivation(&om.universal_derivation()));
    assert!((&a.multiplication_matrix() * om.inclusion()).is_zero());
    let m2 = Arc::new(full_matrix_algebra(q(), 2));
    assert_eq!(omega1(&m2).unwrap().module().dim(), 12);
}

#[test]
fn derivation_dictionary_round_trips() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let om = omega1(&a).unwrap();
    let zero = Cochain::zero(m.clone(), 1);
    assert!(om.hom_from_derivation(&zero).unwrap().is_zero());
    let d = euler(&m);
    let bar = om.hom_from_derivation(&d).unwrap();
    assert_eq!(om.derivation_from_hom(&m, &bar).unwrap(), d);
    let not_derivation = Cochain::from_fn(m.clone(), 1, |i| if i[0] == 0 { vecf(q(), &[1, 0]) } else { vecf(q(), &[0, 0]) }).unwrap();
    assert!(om.hom_from_derivation(&not_derivation).is_err());

    let ut = Arc::new(upper_triangular(q()));
    let mu = regular(&ut);
    let omu = omega1(&ut).unwrap();
    let v = vecf(q(), &[1, 4, -2]);
    let inner = Cochain::from_element(mu.clone(), &v).unwrap().differential();
    let inner_bar = omu.hom_from_derivation(&inner).unwrap();
    assert_eq!(inner_bar, omu.restricted_element_map(&mu, &v).unwrap());
    let space = derivation_space(&mu);
    for basis in space.derivations.basis_vectors() {
        let d = Cochain::from_vector(mu.clone(), 1, &basis).unwrap();
        let back = omu.derivation_from_hom(&mu, &omu.hom_from_derivation(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}

#[test]
fn ext1_splits_exactly_for_inner_derivations() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let d = euler(&m);
    let s = ext1_from_derivation(&d).unwrap();
    assert!(retraction(&s).unwrap().is_none());
    let inner = Cochain::from_element(m.clone(), &vecf(q(), &[2, 1])).unwrap().differential();
    assert!(retraction(&ext1_from_derivation(&inner).unwrap()).unwrap().is_some());

    let ut = Arc::new(upper_triangular(q()));
    let mu = regular(&ut);
    let inner = Cochain::from_element(mu.clone(), &vecf(q(), &[0, 1, 0])).unwrap().differential();
    assert!(!inner.is_zero());
    let s = ext1_from_derivation(&inner).unwrap();
    assert!(retraction(&s).unwrap().is_some());
}

#[test]
fn derivation_from_extension_inverts_ext1() {
    for field in [q(), f2()] {
        let a = Arc::new(dual_numbers(field));
        let m = regular(&a);
        let space = derivation_space(&m);
        let mut rng = sampling::rng(7);
        for basis in space.derivations.basis_vectors() {
            let d = Cochain::from_vector(m.clone(), 1, &basis).unwrap();
            let s = ext1_from_derivation(&d).unwrap();
            let e = s.map(0).solve(a.unit()).unwrap().unwrap();
            let recovered = derivation_from_extension(&s, &e).unwrap();
            assert!(is_derivation(&recovered));
            let diff = recovered.checked_sub(&d).unwrap();
            assert!(space.inner.contains(&diff.to_vector()).unwrap());
            let shift = s.map(1).mul_vec(&sampling::vector(field, m.dim(), &mut rng));
            let other: Vec<Scalar> = e.iter().zip(&shift).map(|(x, y)| x + y).collect();
            let again = derivation_from_extension(&s, &other).unwrap();
            assert!(space.inner.contains(&again.checked_sub(&recovered).unwrap().to_vector()).unwrap());
            let wrong: Vec<Scalar> = e.iter().map(|x| x + x).collect();
            if field == q() {
                assert!(derivation_from_extension(&s, &wrong).is_err());
            }
        }
    }
}

#[test]
fn chi_of_coboundary_is_trivial() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let b = bar(&a, 3);
    let mut rng = sampling::rng(12);
    for n in 1..=3 {
        let psi = sampling::cochain(&m, n - 1, &mut rng);
        let s = chi(&b, &psi.differential()).unwrap();
        let trivial = NExtension::trivial(&m, n).unwrap();
        assert!(find_morphism(&s, &trivial).unwrap().is_some(), "degree {n}");
    }
    let h = cohomology(&m, 2, &Budget::default()).unwrap();
    let phi = &h.representatives()[0];
    assert!(find_morphism(&chi(&b, phi).unwrap(), &NExtension::trivial(&m, 2).unwrap()).unwrap().is_none());
    assert!(chi(&b, &sampling::cochain(&m, 2, &mut rng)).is_err());
}

#[test]
fn chi_in_degree_one_matches_the_derivation_pushout() {
    let a = Arc::new(dual_numbers(q()));
    let m = regular(&a);
    let b = bar(&a, 1);
    let d = euler(&m);
    let via_chi = chi(&b, &d).unwrap();
    let via_omega = ext1_from_derivation(&d).unwrap();
    let forward = find_morphism(&via_chi, &via_omega).unwrap().unwrap();
    assert!(forward.connects(&via_chi, &via_omega));
    assert!(forward.components[0].inverse().is_some());
}

#[test]
fn chi_inverse_inverts_chi() {
    for field in [q(), f2()] {
        let a = Arc::new(dual_numbers(field));
        let tw = Arc::new(Bimodule::twisted(&a, &dual_numbers_sign_twist(field)).unwrap());
        let b = bar(&a, 3);
        for m in [regular(&a), tw] {
            for n in 1..=3 {
                let h = cohomology(&m, n, &Budget::default()).unwrap();
                let phi = sampling::cocycle(&h, &mut sampling::rng(n as u64 + 100));
                let s = chi(&b, &phi).unwrap();
                for order in [PivotOrder::Natural, PivotOrder::Seeded(1)] {
                    let back = chi_inverse(&s, &order).unwrap();
                    assert!(h.is_coboundary(&back.checked_sub(&phi).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn periodic_resolution_matches_cohomology() {
    let budget = Budget::default();
    for (field, expected) in [(q(), vec![2, 1, 1, 1, 1]), (f2(), vec![2, 2, 2, 2, 2])] {
        let a = Arc::new(dual_numbers(field));
        let res = PeriodicResolution::new(&a, 4).unwrap();
        let m = regular(&a);
        assert_eq!(res.ext_dims(&m).unwrap(), expected);
        let dims: Vec<usize> = (0..=4).map(|n| cohomology(&m, n, &budget).unwrap().dim()).collect();
        assert_eq!(dims, expected);
        let tw = Bimodule::twisted(&a, &dual_numbers_sign_twist(field)).unwrap();
        let tw = Arc::new(tw);
        let dims: Vec<usize> = (0..=3).map(|n| cohomology(&tw, n, &budget).unwrap().dim()).collect();
        assert_eq!(res.ext_dims(&tw).unwrap()[..4], dims[..]);
    }
}

#[test]
fn periodic_resolution_accepts_isomorphic_presentations() {
    let g = Arc::new(abelian_group_algebra(f2(), &[2]));
    let res = PeriodicResolution::new(&g, 3).unwrap();
    assert_eq!(res.generator(), &vecf(f2(), &[1, 1])[..]);
    assert_eq!(res.ext_dims(&Bimodule::regular(&g)).unwrap(), vec![2, 2, 2, 2]);
    assert!(PeriodicResolution::new(&Arc::new(product_of_fields(q())), 2).is_err());
    assert!(PeriodicResolution::new(&Arc::new(upper_triangular(q())), 2).is_err());
}
