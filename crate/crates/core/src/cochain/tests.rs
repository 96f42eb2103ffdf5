use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::constructions::*;
use crate::budget::Budget;
use crate::sampling;

fn q() -> Field {
    Field::Rational
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn regular(a: Algebra) -> Arc<Bimodule> {
    Arc::new(Bimodule::regular(&Arc::new(a)))
}

fn sign_twisted(field: Field) -> Arc<Bimodule> {
    let a = Arc::new(dual_numbers(field));
    Arc::new(Bimodule::twisted(&a, &dual_numbers_sign_twist(field)).unwrap())
}

fn vecf(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

/// The Euler derivation `x ↦ x` on the dual numbers, as a degree-1 cochain.
fn euler(m: &Arc<Bimodule>) -> Cochain {
    let f = m.field();
    Cochain::from_fn(m.clone(), 1, |d| if d[0] == 1 { vecf(f, &[0, 1]) } else { vecf(f, &[0, 0]) }).unwrap()
}

fn identity_cochain(m: &Arc<Bimodule>) -> Cochain {
    let f = m.field();
    let d = m.dim();
    Cochain::from_fn(m.clone(), 1, |i| (0..d).map(|k| if k == i[0] { f.one() } else { f.zero() }).collect()).unwrap()
}

#[test]
fn tensor_index_convention() {
    assert_eq!(decode_tensor(5, 2, 3), vec![1, 0, 1]);
    assert_eq!(encode_tensor(&[1, 0, 1], 2), 5);
    assert_eq!(decode_tensor(7, 3, 2), vec![2, 1]);
    assert_eq!(tensor_count(3, 0), 1);
}

#[test]
fn flat_vector_round_trip() {
    let m = regular(upper_triangular(q()));
    let f = sampling::cochain(&m, 2, &mut sampling::rng(3));
    let v = f.to_vector();
    assert_eq!(Cochain::from_vector(m.clone(), 2, &v).unwrap(), f);
    assert_eq!(v[4 * 3 + 1], f.values().get(1, 4));
}

#[test]
fn degree_zero_differential_is_commutator() {
    let m = regular(upper_triangular(q()));
    let a = m.algebra().clone();
    let v = vecf(q(), &[2, 5, -1]);
    let dv = Cochain::from_element(m.clone(), &v).unwrap().differential();
    for i in 0..3 {
        let e = a.basis_vector(i);
        let expected: Vec<Scalar> = a.mul(&e, &v).iter().zip(a.mul(&v, &e)).map(|(x, y)| x - &y).collect();
        assert_eq!(dv.evaluate(&[i]), expected);
    }
    let unit = Cochain::from_element(m.clone(), a.unit()).unwrap();
    assert!(unit.is_cocycle());
}

#[test]
fn euler_derivation_is_a_cocycle() {
    let m = regular(dual_numbers(q()));
    let d = euler(&m);
    let dd = d.differential();
    assert_eq!(dd.evaluate(&[1, 1]), vecf(q(), &[0, 0]));
    assert!(dd.is_zero());
}

#[test]
fn differential_squares_to_zero() {
    let mut rng = sampling::rng(11);
    for m in [regular(dual_numbers(f3())), sign_twisted(f3()), regular(upper_triangular(f3()))] {
        let top = if m.algebra().dim() == 2 { 3 } else { 2 };
        for n in 0..=top {
            let f = sampling::cochain(&m, n, &mut rng);
            assert!(f.differential().differential().is_zero(), "degree {n}");
        }
    }
    let e = Cochain::empty(regular(dual_numbers(q())));
    assert_eq!(e.differential().degree(), 0);
    assert!(e.differential().is_zero());
}

#[test]
fn differential_matrix_agrees_with_evaluation() {
    let mut rng = sampling::rng(5);
    for m in [sign_twisted(q()), regular(upper_triangular(q())), Arc::new(Bimodule::outer_tensor(&Arc::new(dual_numbers(q()))))] {
        for n in 0..=2 {
            let f = sampling::cochain(&m, n, &mut rng);
            let via_matrix = differential_matrix(&m, n).mul_vec(&f.to_vector());
            assert_eq!(via_matrix, f.differential().to_vector());
        }
    }
}

#[test]
fn cohomology_of_dual_numbers() {
    let budget = Budget::default();
    let rational = regular(dual_numbers(q()));
    let dims: Vec<usize> = (0..=4).map(|n| cohomology(&rational, n, &budget).unwrap().dim()).collect();
    assert_eq!(dims, vec![2, 1, 1, 1, 1]);
    let binary = regular(dual_numbers(f2()));
    let dims: Vec<usize> = (0..=4).map(|n| cohomology(&binary, n, &budget).unwrap().dim()).collect();
    assert_eq!(dims, vec![2, 2, 2, 2, 2]);
}

#[test]
fn cohomology_of_separable_fixtures() {
    let budget = Budget::default();
    for a in [full_matrix_algebra(q(), 2), product_of_fields(q())] {
        let centre = a.center().dim();
        let m = regular(a);
        assert_eq!(cohomology(&m, 0, &budget).unwrap().dim(), centre);
        assert_eq!(cohomology(&m, 1, &budget).unwrap().dim(), 0);
        assert_eq!(cohomology(&m, 2, &budget).unwrap().dim(), 0);
    }
}

#[test]
fn representatives_and_classes() {
    let m = regular(dual_numbers(q()));
    let h = cohomology(&m, 1, &Budget::default()).unwrap();
    let reps = h.representatives();
    assert_eq!(reps.len(), 1);
    assert!(reps[0].is_cocycle());
    assert!(!h.is_coboundary(&reps[0]).unwrap());
    let e = euler(&m);
    assert!(!h.class_of(&e).unwrap()[0].is_zero());
    let h0 = cohomology(&m, 0, &Budget::default()).unwrap();
    let cob = Cochain::from_element(m.clone(), &vecf(q(), &[1, 3])).unwrap().differential();
    assert!(h.is_coboundary(&cob).unwrap());
    assert!(h.class_of(&cob).unwrap().iter().all(Scalar::is_zero));
    assert!(h.class_of(&sampling::cochain(&m, 2, &mut sampling::rng(1))).is_err());
    assert_eq!(h0.dim(), 2);
}

#[test]
fn budget_guard_names_degree() {
    let m = regular(dual_numbers(q()));
    match cohomology(&m, 5, &Budget::new(100)) {
        Err(Error::Budget { degree, .. }) => assert_eq!(degree, 6),
        other => panic!("expected a budget error, got {other:?}"),
    }
}

/// `λ(f ⌣ g)` evaluated by hand against the computed cup product over `F_2[x]/(x²)`.
#[test]
fn cup_matches_brute_force() {
    let m = regular(dual_numbers(f2()));
    let a = m.algebra().clone();
    let h = cohomology(&m, 1, &Budget::default()).unwrap();
    let gens = h.representatives();
    assert_eq!(gens.len(), 2);
    let (_, lambda) = m.left_unitor().unwrap();
    for f in &gens {
        for g in &gens {
            let c = cup(f, g).unwrap();
            assert_eq!(c.degree(), 2);
            for i in 0..2 {
                for j in 0..2 {
                    let expected = a.mul(&f.evaluate(&[i]), &g.evaluate(&[j]));
                    assert_eq!(lambda.mul_vec(&c.evaluate(&[i, j])), expected);
                }
            }
        }
    }
}

#[test]
fn cup_with_unit_is_unital() {
    let m = sign_twisted(q());
    let reg = regular(dual_numbers(q()));
    let one = Cochain::from_element(reg.clone(), reg.algebra().unit()).unwrap();
    let f = sampling::cochain(&m, 2, &mut sampling::rng(9));
    let (_, rho) = m.right_unitor().unwrap();
    assert_eq!(&rho * cup(&f, &one).unwrap().values(), f.values().clone());
    let (_, lambda) = m.left_unitor().unwrap();
    assert_eq!(&lambda * cup(&one, &f).unwrap().values(), f.values().clone());
}

#[test]
fn bullet_with_identity_multiplies_by_degree() {
    let mut rng = sampling::rng(21);
    for field in [q(), f3()] {
        let m = regular(upper_triangular(field));
        let id = identity_cochain(&m);
        for deg in 0..=3 {
            let f = sampling::cochain(&m, deg, &mut rng);
            let b = bullet(&f, &id).unwrap();
            assert_eq!(b, f.scale(&field.from_i64(deg as i64)));
        }
    }
}

#[test]
fn bullet_with_degree_zero_is_alternating_substitution() {
    let m = regular(dual_numbers(q()));
    let f = sampling::cochain(&m, 2, &mut sampling::rng(4));
    let z = vecf(q(), &[2, -1]);
    let zc = Cochain::from_element(m.clone(), &z).unwrap();
    let b = bullet(&f, &zc).unwrap();
    assert_eq!(b.degree(), 1);
    for a in 0..2 {
        let mut expected = vec![q().zero(); 2];
        for (k, c) in z.iter().enumerate() {
            let diff: Vec<Scalar> = f.evaluate(&[k, a]).iter().zip(f.evaluate(&[a, k])).map(|(x, y)| x - &y).collect();
            for (s, v) in expected.iter_mut().zip(&diff) {
                *s = &*s + &(c * v);
            }
        }
        assert_eq!(b.evaluate(&[a]), expected);
    }
    let empty = bullet(&zc, &f).unwrap();
    assert_eq!(empty.degree(), 1);
    assert!(empty.is_zero());
}

#[test]
fn bracket_is_graded_antisymmetric() {
    let mut rng = sampling::rng(8);
    for field in [q(), f3()] {
        let m = regular(dual_numbers(field));
        for (dm, dn) in [(1, 1), (1, 2), (2, 2), (0, 2), (3, 1)] {
            let f = sampling::cochain(&m, dm, &mut rng);
            let g = sampling::cochain(&m, dn, &mut rng);
            let sign = Scalar::sign(field, ((dm as i64 - 1) * (dn as i64 - 1)).rem_euclid(2) as usize);
            let total = gerstenhaber_bracket(&f, &g).unwrap().checked_add(&gerstenhaber_bracket(&g, &f).unwrap().scale(&sign)).unwrap();
            assert!(total.is_zero());
        }
    }
    let m = regular(dual_numbers(f2()));
    let f = sampling::cochain(&m, 2, &mut rng);
    assert!(gerstenhaber_bracket(&f, &f).unwrap().is_zero());
}

#[test]
fn group_algebra_bracket_is_nonzero() {
    let budget = Budget::default();
    let m = regular(abelian_group_algebra(f2(), &[2]));
    let h1 = cohomology(&m, 1, &budget).unwrap();
    let h2 = cohomology(&m, 2, &budget).unwrap();
    let mut nonzero = false;
    for f in h1.representatives() {
        for g in h2.representatives() {
            let b = gerstenhaber_bracket(&f, &g).unwrap();
            assert_eq!(b.degree(), 2);
            assert!(b.is_cocycle());
            nonzero |= !b.is_zero();
        }
    }
    assert!(nonzero);
}

#[test]
fn center_action_examples() {
    let m = regular(dual_numbers(q()));
    let d = euler(&m);
    let x = center_action(&d, &vecf(q(), &[0, 1])).unwrap();
    assert_eq!(x.degree(), 0);
    assert_eq!(x.evaluate(&[]), vecf(q(), &[0, 1]));
    assert!(center_action(&d, &vecf(q(), &[1, 0])).unwrap().is_zero());
    let v = Cochain::from_element(m.clone(), &vecf(q(), &[3, 1])).unwrap();
    let e = center_action(&v, &vecf(q(), &[0, 1])).unwrap();
    assert_eq!(e.degree(), -1);
    assert!(e.is_zero());

    let tw = sign_twisted(q());
    assert!(matches!(center_action(&sampling::cochain(&tw, 1, &mut sampling::rng(0)), &vecf(q(), &[0, 1])), Err(Error::Precondition(_))));
    let ut = regular(upper_triangular(q()));
    assert!(center_action(&sampling::cochain(&ut, 1, &mut sampling::rng(0)), &vecf(q(), &[0, 1, 0])).is_err());
}

#[test]
fn center_action_preserves_cocycles_and_coboundaries() {
    let budget = Budget::default();
    let mut rng = sampling::rng(2);
    for field in [q(), f2()] {
        let m = regular(dual_numbers(field));
        let centre = m.relative_center();
        for n in 1..=3 {
            let h = cohomology(&m, n, &budget).unwrap();
            let below = cohomology(&m, n - 1, &budget).unwrap();
            for z in centre.basis_vectors() {
                let f = sampling::cocycle(&h, &mut rng);
                assert!(center_action(&f, &z).unwrap().is_cocycle());
                let b = sampling::cochain(&m, n - 1, &mut rng).differential();
                assert!(below.is_coboundary(&center_action(&b, &z).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn formula_with_degree_zero_first_argument() {
    let m = sign_twisted(q());
    let reg = regular(dual_numbers(q()));
    let mut rng = sampling::rng(17);
    let f = sampling::cochain(&m, 0, &mut rng);
    for n in 0..=2 {
        let g = sampling::cochain(&reg, n, &mut rng);
        assert!(fundamental_formula_residual(&f, &g).unwrap().is_zero());
    }
}

fn residual_vanishes(field: Field, seed: u64, twisted: bool, dm: usize, dn: usize) -> bool {
    let reg = regular(dual_numbers(field));
    let m = if twisted { sign_twisted(field) } else { reg.clone() };
    let mut rng = sampling::rng(seed);
    let f = sampling::cochain(&m, dm, &mut rng);
    let g = sampling::cochain(&reg, dn, &mut rng);
    fundamental_formula_residual(&f, &g).unwrap().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fundamental_formula_over_f3(seed in any::<u64>(), twisted in any::<bool>(), dm in 0usize..=2, dn in 0usize..=2) {
        prop_assert!(residual_vanishes(f3(), seed, twisted, dm, dn));
    }

    #[test]
    fn fundamental_formula_over_rationals(seed in any::<u64>(), twisted in any::<bool>(), dm in 0usize..=2, dn in 0usize..=2) {
        prop_assert!(residual_vanishes(q(), seed, twisted, dm, dn));
    }

    #[test]
    fn fundamental_formula_noncommutative(seed in any::<u64>(), dm in 0usize..=2, dn in 0usize..=1) {
        let m = regular(upper_triangular(f3()));
        let mut rng = sampling::rng(seed);
        let f = sampling::cochain(&m, dm, &mut rng);
        let g = sampling::cochain(&m, dn, &mut rng);
        prop_assert!(fundamental_formula_residual(&f, &g).unwrap().is_zero());
    }
}
