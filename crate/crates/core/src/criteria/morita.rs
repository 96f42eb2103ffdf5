//! Morita transport along `P = A^k`.
//!
//! `P` is the row module `A^k` (left `A`-action, right action of `M_k(A)`),
//! `P^* = Hom_A(P, A)` the column module `A^k`, and `P^ev = P ⊗ P^*` as an
//! `A`-bimodule. The coefficient module `N = Hom_{A^ev}(P^ev, M)` is the
//! solution space of the intertwining equations. `B = M_k(A)` acts on the
//! left through the right action on `P` and on the right through the left
//! action on `P^*`:
//!
//! `(b·f·b')(p ⊗ g) = f(p b ⊗ b' g)`.
//!
//! Index conventions: `P` and `P^*` use `slot · dim A + basis`, `P^ev` uses
//! `P-index · dim P^* + P^*-index`, and `M_k(A)` uses `(p k + q) dim A + i`
//! for `E_pq ⊗ e_i`.

use std::sync::Arc;

use crate::algebra::constructions::matrix_algebra_over;
use crate::algebra::{Algebra, Bimodule};
use crate::budget::Budget;
use crate::cochain::{center_action, Cochain};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

use super::{CohomologyCache, CriterionReport, Witness};

fn unit_matrix(f: Field, k: usize, row: usize, col: usize) -> Matrix {
    Matrix::from_triplets(f, k, k, vec![(row, col, f.one())])
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().concat()
}

/// `B = M_k(A)`, the transported module `N` and the comparison maps.
#[derive(Clone, Debug)]
pub struct MoritaData {
    pub source: Arc<Bimodule>,
    pub size: usize,
    pub matrix_algebra: Arc<Algebra>,
    pub transported: Arc<Bimodule>,
    /// `dim N` columns, each a flattened `dim M × dim P^ev` homomorphism.
    hom_basis: Matrix,
    pev_dim: usize,
}

impl MoritaData {
    pub fn new(m: &Arc<Bimodule>, k: usize, budget: &Budget) -> Result<MoritaData> {
        if k == 0 {
            return Err(Error::Precondition("matrix size must be positive".into()));
        }
        let a = m.algebra();
        let f = a.field();
        let d = a.dim();
        let pdim = k * d;
        let pev_dim = pdim * pdim;
        let unknowns = (m.dim() * pev_dim) as u128;
        budget.check(0, unknowns * unknowns)?;

        let ik = Matrix::identity(f, k);
        let ip = Matrix::identity(f, pdim);
        let left: Vec<Matrix> = (0..d).map(|j| ik.kron(&a.left_mult_basis(j)).kron(&ip)).collect();
        let right: Vec<Matrix> = (0..d).map(|j| ip.kron(&ik.kron(&a.right_mult_basis(j)))).collect();
        let pev = Bimodule::new(a.clone(), pev_dim, left, right)?;
        let homs = Bimodule::hom_basis(&pev, m)?;
        let columns: Vec<Vec<Scalar>> = homs.iter().map(flatten).collect();
        let hom_basis = Matrix::from_columns(f, m.dim() * pev_dim, &columns)?;

        let b = Arc::new(matrix_algebra_over(a, k));
        let mut b_left = Vec::with_capacity(b.dim());
        let mut b_right = Vec::with_capacity(b.dim());
        for p in 0..k {
            for q in 0..k {
                for i in 0..d {
                    let on_p = unit_matrix(f, k, q, p).kron(&a.right_mult_basis(i)).kron(&ip);
                    let on_dual = ip.kron(&unit_matrix(f, k, p, q).kron(&a.left_mult_basis(i)));
                    b_left.push(action_matrix(&homs, &hom_basis, &on_p)?);
                    b_right.push(action_matrix(&homs, &hom_basis, &on_dual)?);
                }
            }
        }
        let n = Bimodule::checked(b.clone(), homs.len(), b_left, b_right)?;
        Ok(MoritaData { source: m.clone(), size: k, matrix_algebra: b, transported: Arc::new(n), hom_basis, pev_dim })
    }

    fn coordinates(&self, hom: &Matrix) -> Result<Vec<Scalar>> {
        self.hom_basis
            .solve(&flatten(hom))?
            .ok_or_else(|| Error::Internal("map is not a bimodule homomorphism out of P^ev".into()))
    }

    /// `p ⊗ g ↦ Σ_{r,s} p_r X_rs g_s` for a `k × k` matrix `X` over `M`
    /// (given as a function of the entry position).
    fn pairing(&self, entry: impl Fn(usize, usize) -> Vec<Scalar>) -> Result<Vec<Scalar>> {
        let m = &self.source;
        let a = m.algebra();
        let (k, d) = (self.size, a.dim());
        let pdim = k * d;
        let mut columns = Vec::with_capacity(self.pev_dim);
        let entries: Vec<Vec<Vec<Scalar>>> = (0..k).map(|r| (0..k).map(|s| entry(r, s)).collect()).collect();
        for r in 0..k {
            for i in 0..d {
                for s in 0..k {
                    for j in 0..d {
                        let x = &entries[r][s];
                        let v = m.left(i).mul_vec(&m.right(j).mul_vec(x));
                        columns.push(((r * d + i) * pdim + s * d + j, v));
                    }
                }
            }
        }
        columns.sort_by_key(|(idx, _)| *idx);
        let cols: Vec<Vec<Scalar>> = columns.into_iter().map(|(_, v)| v).collect();
        self.coordinates(&Matrix::from_columns(m.field(), m.dim(), &cols)?)
    }

    /// `m ↦ (p ⊗ g ↦ Σ_r p_r m g_r)`, an isomorphism `M^A → N^B`.
    pub fn transport_invariant(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let zero = vec![self.source.field().zero(); self.source.dim()];
        self.pairing(|r, s| if r == s { v.to_vec() } else { zero.clone() })
    }

    /// `D ↦ (b ↦ pairing of the entrywise matrix D(b_rs))`.
    pub fn transport_derivation(&self, derivation: &Cochain) -> Result<Cochain> {
        if derivation.module() != &self.source || derivation.degree() != 1 {
            return Err(Error::Precondition("expected a degree-1 cochain over the source module".into()));
        }
        let (k, d) = (self.size, self.source.algebra().dim());
        let zero = vec![self.source.field().zero(); self.source.dim()];
        let mut columns = Vec::with_capacity(self.matrix_algebra.dim());
        for p in 0..k {
            for q in 0..k {
                for i in 0..d {
                    let value = derivation.evaluate(&[i]);
                    columns.push(self.pairing(|r, s| if (r, s) == (p, q) { value.clone() } else { zero.clone() })?);
                }
            }
        }
        let values = Matrix::from_columns(self.source.field(), self.transported.dim(), &columns)?;
        Cochain::new(self.transported.clone(), 1, values)
    }

    /// `z ↦ Σ_p E_pp ⊗ z`.
    pub fn transport_central(&self, z: &[Scalar]) -> Vec<Scalar> {
        let (k, d) = (self.size, self.source.algebra().dim());
        let mut out = vec![self.source.field().zero(); self.matrix_algebra.dim()];
        for p in 0..k {
            for (i, c) in z.iter().enumerate() {
                out[(p * k + p) * d + i] = c.clone();
            }
        }
        out
    }
}

/// Matrix of `f ↦ f ∘ op` on `N` in the hom basis.
fn action_matrix(homs: &[Matrix], hom_basis: &Matrix, op: &Matrix) -> Result<Matrix> {
    let f = hom_basis.field();
    let images: Vec<Vec<Scalar>> = homs.iter().map(|h| flatten(&(h * op))).collect();
    let rhs = Matrix::from_columns(f, hom_basis.rows(), &images)?;
    hom_basis
        .solve_matrix(&rhs)?
        .ok_or_else(|| Error::Internal("endomorphism of P^ev does not preserve A^ev-linearity".into()))
}

/// Compares `HH^n(A, M)` with `HH^n(M_k(A), N)` for `n ≤ max_degree`, the
/// relative centers, and the `(1, 0)` bracket under the explicit transport.
pub fn morita_transport(m: &Arc<Bimodule>, k: usize, max_degree: usize, budget: &Budget) -> Result<CriterionReport> {
    let data = MoritaData::new(m, k, budget)?;
    let n = &data.transported;
    let mut report = CriterionReport::new("morita_transport");
    let mut source = CohomologyCache::new(m.clone(), budget);
    let mut target = CohomologyCache::new(n.clone(), budget);

    for deg in 0..=max_degree {
        let (ds, dt) = (source.get(deg)?.dim(), target.get(deg)?.dim());
        report.push(
            format!("hh{deg}_dims_agree"),
            ds == dt,
            vec![Witness::count(format!("dim HH^{deg}(A, M)"), ds), Witness::count(format!("dim HH^{deg}(M_k(A), N)"), dt)],
        );
    }

    let rel_a = m.relative_center();
    let rel_b = n.relative_center();
    let images: Vec<Vec<Scalar>> = rel_a.basis_vectors().iter().map(|z| data.transport_central(z)).collect();
    let image = Subspace::span(m.field(), data.matrix_algebra.dim(), &images)?;
    report.push(
        "relative_centers_agree",
        rel_a.dim() == rel_b.dim() && image == rel_b,
        vec![Witness::subspace("Z_M(A)", &rel_a), Witness::subspace("Z_N(M_k(A))", &rel_b)],
    );

    let invariants = m.invariants();
    let moved: Vec<Vec<Scalar>> =
        invariants.basis_vectors().iter().map(|v| data.transport_invariant(v)).collect::<Result<_>>()?;
    let moved_span = Subspace::span(m.field(), n.dim(), &moved)?;
    report.push(
        "degree_zero_transport",
        moved_span == n.invariants(),
        vec![Witness::subspace("image of M^A in N", &moved_span), Witness::subspace("N^B", &n.invariants())],
    );

    let reps = source.get(1)?.representatives();
    let transported: Vec<Cochain> = reps.iter().map(|d| data.transport_derivation(d)).collect::<Result<_>>()?;
    let h1 = target.get(1)?;
    let mut classes = Vec::with_capacity(transported.len());
    let mut cocycles = true;
    for t in &transported {
        if t.is_cocycle() {
            classes.push(h1.class_of(t)?);
        } else {
            cocycles = false;
        }
    }
    let independent = cocycles && Matrix::from_columns(m.field(), h1.dim(), &classes)?.rank() == reps.len();
    report.push(
        "degree_one_transport",
        independent && reps.len() == h1.dim(),
        vec![Witness::count("transported classes", reps.len()), Witness::count("dim HH^1(M_k(A), N)", h1.dim())],
    );

    let mut checked = 0;
    let mut failure = None;
    'pairs: for (d, t) in reps.iter().zip(&transported) {
        for z in rel_a.basis_vectors() {
            let lhs = center_action(t, &data.transport_central(&z))?;
            let rhs = data.transport_invariant(&center_action(d, &z)?.evaluate(&[]))?;
            checked += 1;
            if lhs.evaluate(&[]) != rhs {
                failure = Some(vec![
                    Witness::cochain("derivation", d),
                    Witness::element("z", &z),
                    Witness::element("[T(D), T(z)]", &lhs.evaluate(&[])),
                    Witness::element("T([D, z])", &rhs),
                ]);
                break 'pairs;
            }
        }
    }
    match failure {
        Some(w) => report.push("bracket_transport", false, w),
        None => report.push("bracket_transport", true, vec![Witness::count("derivation/element pairs compared", checked)]),
    }
    Ok(report)
}
