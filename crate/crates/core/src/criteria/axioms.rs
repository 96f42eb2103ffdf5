use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::budget::Budget;
use crate::cochain::{center_action, gerstenhaber_bracket, left_cup_action, right_cup_action, Cochain};
use crate::error::Result;
use crate::extension::ext_bracket;
use crate::field::{Field, Scalar};
use crate::linalg::PivotOrder;
use crate::resolution::{chi, BarResolution};

use super::{CohomologyCache, CriterionReport, Witness};

fn sign(f: Field, exponent: i64) -> Scalar {
    Scalar::sign(f, exponent.rem_euclid(2) as usize)
}

fn deg(c: &Cochain) -> i64 {
    c.degree() as i64
}

/// Tally of one identity over many instances, keeping the first failure.
struct Tally {
    label: &'static str,
    checked: usize,
    failure: Option<Vec<Witness>>,
}

impl Tally {
    fn new(label: &'static str) -> Tally {
        Tally { label, checked: 0, failure: None }
    }

    fn record(
        &mut self,
        cache: &mut CohomologyCache<'_>,
        defect: &Cochain,
        inputs: impl FnOnce() -> Vec<Witness>,
    ) -> Result<()> {
        self.checked += 1;
        if self.failure.is_none() && !cache.is_coboundary(defect)? {
            let mut w = inputs();
            w.push(Witness::cochain("defect (not a coboundary)", defect));
            self.failure = Some(w);
        }
        Ok(())
    }

    fn finish(self, report: &mut CriterionReport) {
        match self.failure {
            Some(w) => report.push(self.label, false, w),
            None => report.push(self.label, true, vec![Witness::count("instances with coboundary defect", self.checked)]),
        }
    }
}

/// Defects of (G1)–(G6) on `HH^*(A)` for the basis representatives in
/// degrees `0..=max_total`.
///
/// An instance is a choice of generators whose degrees sum to at most
/// `max_total`: pairs for (G1), (G2); a single generator for (G3), (G4);
/// triples for (G5), (G6). Products are cup products through the unit
/// isomorphism and brackets are Gerstenhaber brackets.
pub fn gerstenhaber_axioms(a: &Arc<Algebra>, max_total: usize, budget: &Budget) -> Result<CriterionReport> {
    let regular = Arc::new(Bimodule::regular(a));
    let f = a.field();
    let mut cache = CohomologyCache::new(regular.clone(), budget);
    let mut gens: Vec<Cochain> = Vec::new();
    for n in 0..=max_total {
        gens.extend(cache.get(n)?.representatives());
    }
    let total = max_total as i64;
    let bracket = gerstenhaber_bracket;
    let product = left_cup_action;
    let pair = |x: &Cochain, y: &Cochain| vec![Witness::cochain("a", x), Witness::cochain("b", y)];

    let mut g1 = Tally::new("G1_graded_commutative");
    let mut g2 = Tally::new("G2_antisymmetric");
    for x in &gens {
        for y in &gens {
            if deg(x) + deg(y) > total {
                continue;
            }
            let defect = product(x, y)?.checked_sub(&product(y, x)?.scale(&sign(f, deg(x) * deg(y))))?;
            g1.record(&mut cache, &defect, || pair(x, y))?;
            let defect = bracket(x, y)?.checked_add(&bracket(y, x)?.scale(&sign(f, (deg(x) - 1) * (deg(y) - 1))))?;
            g2.record(&mut cache, &defect, || pair(x, y))?;
        }
    }

    let mut g3 = Tally::new("G3_odd_square");
    let mut g4 = Tally::new("G4_even_cube");
    for x in &gens {
        if deg(x) % 2 == 1 {
            g3.record(&mut cache, &bracket(x, x)?, || vec![Witness::cochain("a", x)])?;
        } else if deg(x) == 0 {
            // {a,a} has degree -1, so the cube vanishes
            g4.checked += 1;
        } else {
            let cube = bracket(&bracket(x, x)?, x)?;
            g4.record(&mut cache, &cube, || vec![Witness::cochain("a", x)])?;
        }
    }

    let mut g5 = Tally::new("G5_jacobi");
    let mut g6 = Tally::new("G6_poisson");
    for x in &gens {
        for y in &gens {
            for z in &gens {
                if deg(x) + deg(y) + deg(z) > total {
                    continue;
                }
                let triple = || vec![Witness::cochain("a", x), Witness::cochain("b", y), Witness::cochain("c", z)];
                let inner = bracket(y, z)?;
                if inner.degree() >= 0 && deg(x) + deg(y) + deg(z) >= 2 {
                    let lhs = bracket(x, &inner)?;
                    let ab = bracket(x, y)?;
                    let ac = bracket(x, z)?;
                    let first = if ab.degree() >= 0 { bracket(&ab, z)? } else { Cochain::zero_of_degree(regular.clone(), lhs.degree()) };
                    let second = if ac.degree() >= 0 { bracket(y, &ac)? } else { Cochain::zero_of_degree(regular.clone(), lhs.degree()) };
                    let defect = lhs
                        .checked_sub(&first)?
                        .checked_sub(&second.scale(&sign(f, (deg(x) - 1) * (deg(y) - 1))))?;
                    g5.record(&mut cache, &defect, triple)?;
                } else {
                    g5.checked += 1;
                }
                let lhs = bracket(x, &product(y, z)?)?;
                if lhs.degree() >= 0 {
                    let zero = || Cochain::zero_of_degree(regular.clone(), lhs.degree());
                    let ab = bracket(x, y)?;
                    let ac = bracket(x, z)?;
                    let first = if ab.degree() >= 0 { product(&ab, z)? } else { zero() };
                    let second = if ac.degree() >= 0 { product(y, &ac)? } else { zero() };
                    let defect = lhs
                        .checked_sub(&first)?
                        .checked_sub(&second.scale(&sign(f, (deg(x) - 1) * deg(y))))?;
                    g6.record(&mut cache, &defect, triple)?;
                } else {
                    g6.checked += 1;
                }
            }
        }
    }

    let mut report = CriterionReport::new("gerstenhaber_axioms");
    for t in [g1, g2, g3, g4, g5, g6] {
        t.finish(&mut report);
    }
    Ok(report)
}

/// Right-module identities for `HH^*(A, M)` over `Z_M(A)`, for basis classes
/// in degrees `0..=max_degree` and all ordered pairs of basis elements of
/// `Z_M(A)`:
///
/// * `[[α, z], z'] + [[α, z'], z]` is a coboundary,
/// * `[α, z z'] − [α, z] z' − z [α, z']` is a coboundary.
pub fn module_axioms(m: &Arc<Bimodule>, max_degree: usize, budget: &Budget) -> Result<CriterionReport> {
    let a = m.algebra();
    let regular = Arc::new(Bimodule::regular(a));
    let zs = m.relative_center().basis_vectors();
    let mut cache = CohomologyCache::new(m.clone(), budget);
    let mut anti = Tally::new("twice_bracketed_symmetric_sum");
    let mut derivation = Tally::new("bracket_is_derivation");
    for n in 0..=max_degree {
        for alpha in cache.get(n)?.representatives() {
            for z in &zs {
                for w in &zs {
                    let inputs =
                        || vec![Witness::cochain("α", &alpha), Witness::element("z", z), Witness::element("z'", w)];
                    let az = center_action(&alpha, z)?;
                    let aw = center_action(&alpha, w)?;
                    if n >= 2 {
                        let defect = center_action(&az, w)?.checked_add(&center_action(&aw, z)?)?;
                        anti.record(&mut cache, &defect, inputs)?;
                    } else {
                        anti.checked += 1;
                    }
                    if n >= 1 {
                        let zc = Cochain::from_element(regular.clone(), z)?;
                        let wc = Cochain::from_element(regular.clone(), w)?;
                        let defect = center_action(&alpha, &a.mul(z, w))?
                            .checked_sub(&right_cup_action(&az, &wc)?)?
                            .checked_sub(&left_cup_action(&zc, &aw)?)?;
                        derivation.record(&mut cache, &defect, inputs)?;
                    } else {
                        derivation.checked += 1;
                    }
                }
            }
        }
    }
    let mut report = CriterionReport::new("module_axioms");
    anti.finish(&mut report);
    derivation.finish(&mut report);
    Ok(report)
}

/// The same two identities for the bracket computed on extensions: `α` is
/// realized as `chi(α)` and each bracket is read off `ext_bracket`.
///
/// Whether these hold in general is open, so the report is evidence rather
/// than a verified property.
pub fn extension_module_axioms(m: &Arc<Bimodule>, max_degree: usize, budget: &Budget) -> Result<CriterionReport> {
    let a = m.algebra();
    let regular = Arc::new(Bimodule::regular(a));
    let zs = m.relative_center().basis_vectors();
    let bar = BarResolution::new(a, max_degree.max(1), budget)?;
    let order = PivotOrder::Natural;
    let bracket = |alpha: &Cochain, z: &[Scalar]| -> Result<Cochain> {
        Ok(ext_bracket(&chi(&bar, alpha)?, z, &order)?.value)
    };
    let mut cache = CohomologyCache::new(m.clone(), budget);
    let mut anti = Tally::new("twice_bracketed_symmetric_sum");
    let mut derivation = Tally::new("bracket_is_derivation");
    for n in 1..=max_degree {
        for alpha in cache.get(n)?.representatives() {
            for z in &zs {
                for w in &zs {
                    let inputs =
                        || vec![Witness::cochain("α", &alpha), Witness::element("z", z), Witness::element("z'", w)];
                    let az = bracket(&alpha, z)?;
                    let aw = bracket(&alpha, w)?;
                    if n >= 2 {
                        let defect = bracket(&az, w)?.checked_add(&bracket(&aw, z)?)?;
                        anti.record(&mut cache, &defect, inputs)?;
                    } else {
                        anti.checked += 1;
                    }
                    let zc = Cochain::from_element(regular.clone(), z)?;
                    let wc = Cochain::from_element(regular.clone(), w)?;
                    let defect = bracket(&alpha, &a.mul(z, w))?
                        .checked_sub(&right_cup_action(&az, &wc)?)?
                        .checked_sub(&left_cup_action(&zc, &aw)?)?;
                    derivation.record(&mut cache, &defect, inputs)?;
                }
            }
        }
    }
    let mut report = CriterionReport::new("extension_module_axioms");
    anti.finish(&mut report);
    derivation.finish(&mut report);
    Ok(report)
}
