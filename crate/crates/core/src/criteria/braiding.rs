use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

use super::{center_algebra, CriterionReport, Witness};

/// Default number of coefficient patterns tried by [`find_braiding`].
pub const DEFAULT_PATTERN_BUDGET: usize = 4096;

/// Whether the multiplication `Z(A) ⊗ Z(A) → Z(A)` is bijective.
pub fn check_ring_epi_criterion(a: &Algebra) -> Result<CriterionReport> {
    let (z, inclusion) = center_algebra(a)?;
    let mult = z.multiplication_matrix();
    let c = z.dim();
    let bijective = mult.rows() == mult.cols() && mult.rank() == c;
    let mut report = CriterionReport::new("ring_epi");
    let mut witnesses = vec![Witness::matrix("multiplication Z(A) ⊗ Z(A) → Z(A) in a center basis", &mult)];
    if !bijective {
        // some basis z is not a multiple of 1, so z⊗1 − 1⊗z is nonzero
        let unit = z.unit().to_vec();
        let (index, diff) = (0..c)
            .map(|i| {
                let e = Matrix::column_vector(z.field(), &z.basis_vector(i));
                let u = Matrix::column_vector(z.field(), &unit);
                (i, (&e.kron(&u) - &u.kron(&e)).column(0))
            })
            .find(|(_, v)| v.iter().any(|s| !s.is_zero()))
            .ok_or_else(|| Error::Internal("non-bijective multiplication on a one-dimensional center".into()))?;
        witnesses.push(Witness::element("z in A", &inclusion.column(index)));
        witnesses.push(Witness::element("z⊗1 − 1⊗z in Z(A) ⊗ Z(A)", &diff));
    }
    report.push("multiplication_bijective", bijective, witnesses);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidingTarget {
    Algebra,
    Center,
}

#[derive(Clone, Debug)]
pub struct BraidingSearch {
    /// The algebra the equations were solved over (`A` or `Z(A)`).
    pub algebra: Algebra,
    /// Dimension of the affine solution space, `None` when inconsistent.
    pub solution_dim: Option<usize>,
    /// An invertible solution `r ∈ T^{⊗3}` in lexicographic tensor coordinates.
    pub element: Option<Vec<Scalar>>,
    pub patterns_tried: usize,
    /// Every solution was tried (only possible over a finite field).
    pub exhaustive: bool,
}

impl BraidingSearch {
    pub fn report(&self) -> CriterionReport {
        let mut report = CriterionReport::new("braiding");
        let witness = match (&self.element, self.solution_dim) {
            (Some(r), _) => Witness::element("invertible r in T⊗T⊗T", r),
            (None, None) => Witness::note("the linear equations for r are inconsistent"),
            (None, Some(_)) if self.exhaustive => {
                Witness::note(format!("all {} solutions tried, none is invertible", self.patterns_tried))
            }
            (None, Some(_)) => Witness::note(format!(
                "none found under a search budget of {} patterns (not a proof of nonexistence)",
                self.patterns_tried
            )),
        };
        report.push("invertible_solution_found", self.element.is_some(), vec![witness]);
        report
    }
}

/// Linear conditions on `r = r1⊗r2⊗r3` for all `a`:
/// `r1 ⊗ a r2 ⊗ r3 = r1 ⊗ r2 ⊗ r3 a`, `r1 r2 ⊗ r3 = 1⊗1`, `r2 ⊗ r3 r1 = 1⊗1`.
fn braiding_equations(t: &Algebra) -> (Matrix, Vec<Scalar>) {
    let f = t.field();
    let d = t.dim();
    let id = Matrix::identity(f, d);
    let mut blocks = Vec::new();
    for i in 0..d {
        let middle = id.kron(&t.left_mult_basis(i)).kron(&id);
        let last = id.kron(&id).kron(&t.right_mult_basis(i));
        blocks.push(&middle - &last);
    }
    blocks.push(t.multiplication_matrix().kron(&id));
    let mut rotated = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for (l, c) in t.product_of_basis(k, i) {
                    rotated.push((j * d + l, (i * d + j) * d + k, c.clone()));
                }
            }
        }
    }
    blocks.push(Matrix::from_triplets(f, d * d, d * d * d, rotated));
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(f, d * d * d, &refs);
    let unit = Matrix::column_vector(f, t.unit());
    let one_one = unit.kron(&unit).column(0);
    let mut rhs = vec![f.zero(); d * d * d * d];
    rhs.extend(one_one.iter().cloned());
    rhs.extend(one_one);
    (system, rhs)
}

fn is_invertible(t: &Algebra, r: &[Scalar]) -> bool {
    let f = t.field();
    let d = t.dim();
    let lefts: Vec<Matrix> = (0..d).map(|i| t.left_mult_basis(i)).collect();
    let mut op = Matrix::zeros(f, d * d * d, d * d * d);
    for (idx, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j, k) = (idx / (d * d), (idx / d) % d, idx % d);
        op = &op + &lefts[i].kron(&lefts[j]).kron(&lefts[k]).scale(c);
    }
    op.rank() == d * d * d
}

fn coefficient_set(f: Field) -> Vec<Scalar> {
    match f {
        Field::Prime(p) if p <= 7 => (0..p as i64).map(|x| f.from_i64(x)).collect(),
        _ => vec![f.zero(), f.one(), f.from_i64(-1)],
    }
}

/// Solves the braiding equations and scans the affine solution space for an
/// invertible element, trying `1⊗1⊗1` first.
///
/// This is a semidecision: absence of a hit is only conclusive when
/// `exhaustive` is set.
pub fn find_braiding(a: &Algebra, target: BraidingTarget, max_patterns: usize) -> Result<BraidingSearch> {
    let t = match target {
        BraidingTarget::Algebra => a.clone(),
        BraidingTarget::Center => center_algebra(a)?.0,
    };
    let f = t.field();
    let (system, rhs) = braiding_equations(&t);
    let unit = Matrix::column_vector(f, t.unit());
    let trivial = unit.kron(&unit).kron(&unit).column(0);
    let Some(particular) = system.solve(&rhs)? else {
        return Ok(BraidingSearch { algebra: t, solution_dim: None, element: None, patterns_tried: 0, exhaustive: true });
    };
    let kernel = system.kernel().basis_vectors();
    let solution_dim = Some(kernel.len());
    if system.mul_vec(&trivial) == rhs {
        return Ok(BraidingSearch { algebra: t, solution_dim, element: Some(trivial), patterns_tried: 1, exhaustive: false });
    }
    let coeffs = coefficient_set(f);
    let total = (coeffs.len() as u128).checked_pow(kernel.len() as u32);
    let exhaustive_possible = matches!(f, Field::Prime(p) if p as usize == coeffs.len());
    let mut digits = vec![0usize; kernel.len()];
    let mut tried = 0;
    loop {
        if tried >= max_patterns {
            break;
        }
        let mut r = particular.clone();
        for (basis, &digit) in kernel.iter().zip(&digits) {
            if digit != 0 {
                for (x, y) in r.iter_mut().zip(basis) {
                    *x = &*x + &(&coeffs[digit] * y);
                }
            }
        }
        tried += 1;
        if is_invertible(&t, &r) {
            return Ok(BraidingSearch { algebra: t, solution_dim, element: Some(r), patterns_tried: tried, exhaustive: false });
        }
        // next pattern in mixed radix
        let mut pos = 0;
        while pos < digits.len() {
            digits[pos] += 1;
            if digits[pos] < coeffs.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == digits.len() {
            break;
        }
    }
    let exhaustive = exhaustive_possible && total.is_some_and(|n| tried as u128 == n);
    Ok(BraidingSearch { algebra: t, solution_dim, element: None, patterns_tried: tried, exhaustive })
}
