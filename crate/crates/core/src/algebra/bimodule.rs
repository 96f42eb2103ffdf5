use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{LinearSystem, Matrix, QuotientSpace, Subspace, Term};

use super::{combine, Algebra};

/// A finite-dimensional bimodule given by action matrices per basis element.
///
/// `left[i]` is `v ↦ e_i v`, `right[i]` is `v ↦ v e_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

/// A failed bimodule axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleViolation {
    LeftAction { i: usize, j: usize },
    RightAction { i: usize, j: usize },
    Commutation { i: usize, j: usize },
    LeftUnit,
    RightUnit,
}

impl fmt::Display for BimoduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleViolation::LeftAction { i, j } => write!(f, "L_{i} L_{j} differs from L(e_{i} e_{j})"),
            BimoduleViolation::RightAction { i, j } => write!(f, "R_{j} R_{i} differs from R(e_{i} e_{j})"),
            BimoduleViolation::Commutation { i, j } => write!(f, "L_{i} and R_{j} do not commute"),
            BimoduleViolation::LeftUnit => write!(f, "the unit does not act as the identity on the left"),
            BimoduleViolation::RightUnit => write!(f, "the unit does not act as the identity on the right"),
        }
    }
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule(dim {}) over {:?}", self.dim, self.algebra)
    }
}

/// `M ⊗_A N` with the canonical projection from `M ⊗_K N`.
#[derive(Clone, Debug)]
pub struct TensorOverA {
    pub module: Bimodule,
    /// `dim T × (dim M · dim N)`, source index `v · dim N + w`.
    pub projection: Matrix,
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Bimodule,
    pub injections: Vec<Matrix>,
    pub projections: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let d = algebra.dim();
        if left.len() != d || right.len() != d {
            return Err(Error::InvalidBimodule(format!(
                "expected {d} left and right action matrices, got {} and {}",
                left.len(),
                right.len()
            )));
        }
        for (side, mats) in [("left", &left), ("right", &right)] {
            for (i, m) in mats.iter().enumerate() {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::InvalidBimodule(format!(
                        "{side} action of e_{i} is {}x{}, expected {dim}x{dim}",
                        m.rows(),
                        m.cols()
                    )));
                }
                if m.field() != algebra.field() {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        Ok(Bimodule { algebra, dim, left, right })
    }

    /// [`Bimodule::new`] followed by a full axiom check.
    pub fn checked(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let m = Bimodule::new(algebra, dim, left, right)?;
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidBimodule(list.join("; ")))
        }
    }

    pub fn validate(&self) -> Vec<BimoduleViolation> {
        let a = &self.algebra;
        let d = a.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod: Vec<Scalar> = {
                    let mut v = a.zero_vector();
                    for (k, c) in a.product_of_basis(i, j) {
                        v[*k] = c.clone();
                    }
                    v
                };
                if &self.left[i] * &self.left[j] != self.left_action(&prod) {
                    out.push(BimoduleViolation::LeftAction { i, j });
                }
                if &self.right[j] * &self.right[i] != self.right_action(&prod) {
                    out.push(BimoduleViolation::RightAction { i, j });
                }
                if &self.left[i] * &self.right[j] != &self.right[j] * &self.left[i] {
                    out.push(BimoduleViolation::Commutation { i, j });
                }
            }
        }
        let id = Matrix::identity(a.field(), self.dim);
        if self.left_action(a.unit()) != id {
            out.push(BimoduleViolation::LeftUnit);
        }
        if self.right_action(a.unit()) != id {
            out.push(BimoduleViolation::RightUnit);
        }
        out
    }

    pub fn regular(algebra: &Arc<Algebra>) -> Bimodule {
        let d = algebra.dim();
        Bimodule {
            algebra: algebra.clone(),
            dim: d,
            left: (0..d).map(|i| algebra.left_mult_basis(i)).collect(),
            right: (0..d).map(|i| algebra.right_mult_basis(i)).collect(),
        }
    }

    /// `A ⊗ A` with `a (x ⊗ y) b = a x ⊗ y b`; index `i d + j`.
    pub fn outer_tensor(algebra: &Arc<Algebra>) -> Bimodule {
        let reg = Bimodule::regular(algebra);
        Bimodule::outer_product(&reg, &reg)
    }

    /// `M ⊗_K N` with left action on `M` and right action on `N`.
    pub fn outer_product(m: &Bimodule, n: &Bimodule) -> Bimodule {
        let f = m.field();
        let im = Matrix::identity(f, m.dim);
        let in_ = Matrix::identity(f, n.dim);
        Bimodule {
            algebra: m.algebra.clone(),
            dim: m.dim * n.dim,
            left: m.left.iter().map(|l| l.kron(&in_)).collect(),
            right: n.right.iter().map(|r| im.kron(r)).collect(),
        }
    }

    /// `A` with right action composed with the endomorphism `sigma`
    /// (columns = images of basis vectors): `v · a = v σ(a)`.
    pub fn twisted(algebra: &Arc<Algebra>, sigma: &Matrix) -> Result<Bimodule> {
        if !algebra.is_endomorphism(sigma) {
            return Err(Error::InvalidBimodule("twist is not a unital algebra endomorphism".into()));
        }
        let reg = Bimodule::regular(algebra);
        let right = (0..algebra.dim()).map(|i| reg.right_action(&sigma.column(i))).collect();
        Ok(Bimodule { right, ..reg })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Bimodule {
        let z = Matrix::zeros(algebra.field(), 0, 0);
        Bimodule {
            algebra: algebra.clone(),
            dim: 0,
            left: vec![z.clone(); algebra.dim()],
            right: vec![z; algebra.dim()],
        }
    }

    pub fn direct_sum(parts: &[&Bimodule]) -> Result<DirectSum> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        let algebra = first.algebra.clone();
        if parts.iter().any(|p| p.algebra != algebra) {
            return Err(Error::Precondition("direct summands over different algebras".into()));
        }
        let f = algebra.field();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let d = algebra.dim();
        let left = (0..d)
            .map(|i| Matrix::block_diag(f, &parts.iter().map(|p| &p.left[i]).collect::<Vec<_>>()))
            .collect();
        let right = (0..d)
            .map(|i| Matrix::block_diag(f, &parts.iter().map(|p| &p.right[i]).collect::<Vec<_>>()))
            .collect();
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for p in parts {
            let inj = Matrix::from_triplets(f, dim, p.dim, (0..p.dim).map(|k| (offset + k, k, f.one())));
            projections.push(inj.transpose());
            injections.push(inj);
            offset += p.dim;
        }
        Ok(DirectSum { module: Bimodule { algebra, dim, left, right }, injections, projections })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_matrices(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_action(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, a, |i| self.left[i].clone())
    }

    pub fn right_action(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, a, |i| self.right[i].clone())
    }

    pub fn is_regular(&self) -> bool {
        *self == Bimodule::regular(&self.algebra)
    }

    /// `M^A = {v : a v = v a}`.
    pub fn invariants(&self) -> Subspace {
        let d = self.algebra.dim();
        let blocks: Vec<Matrix> = (0..d).map(|i| &self.left[i] - &self.right[i]).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(self.field(), self.dim, &refs).kernel()
    }

    /// `Z_M(A) = {z ∈ Z(A) : L(z) = R(z) on M}`.
    pub fn relative_center(&self) -> Subspace {
        let d = self.algebra.dim();
        let n = self.dim;
        let f = self.field();
        let mut entries = Vec::new();
        for i in 0..d {
            let diff = &self.left[i] - &self.right[i];
            for r in 0..n {
                for (c, s) in diff.row(r) {
                    entries.push((r * n + c, i, s.clone()));
                }
            }
        }
        let acting_equally = Matrix::from_triplets(f, n * n, d, entries).kernel();
        self.algebra
            .center()
            .intersection(&acting_equally)
            .expect("subspaces of the same algebra")
    }

    pub fn is_relative_central(&self, z: &[Scalar]) -> bool {
        self.algebra.is_central(z) && self.left_action(z) == self.right_action(z)
    }

    /// `L(z) − R(z)` for central `z`.
    pub fn defect(&self, z: &[Scalar]) -> Result<Matrix> {
        if z.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch("element length differs from algebra dimension".into()));
        }
        if !self.algebra.is_central(z) {
            return Err(Error::Precondition("element is not central".into()));
        }
        Ok(&self.left_action(z) - &self.right_action(z))
    }

    /// True when `map: self → target` commutes with both actions.
    pub fn is_morphism_to(&self, target: &Bimodule, map: &Matrix) -> bool {
        map.rows() == target.dim
            && map.cols() == self.dim
            && self.algebra == target.algebra
            && (0..self.algebra.dim()).all(|i| {
                map * &self.left[i] == &target.left[i] * map && map * &self.right[i] == &target.right[i] * map
            })
    }

    /// The sub-bimodule on `sub` with the inclusion `dim M × dim sub`.
    pub fn submodule(&self, sub: &Subspace) -> Result<(Bimodule, Matrix)> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("subspace ambient differs from module dimension".into()));
        }
        let incl = sub.basis_matrix();
        let f = self.field();
        let restrict = |m: &Matrix, side: &str, i: usize| -> Result<Matrix> {
            let moved = m * &incl;
            let mut cols = Vec::with_capacity(sub.dim());
            for v in moved.to_columns() {
                cols.push(sub.coordinates(&v)?.ok_or_else(|| {
                    Error::InvalidBimodule(format!("subspace is not stable under the {side} action of e_{i}"))
                })?);
            }
            Matrix::from_columns(f, sub.dim(), &cols)
        };
        let d = self.algebra.dim();
        let left = (0..d).map(|i| restrict(&self.left[i], "left", i)).collect::<Result<Vec<_>>>()?;
        let right = (0..d).map(|i| restrict(&self.right[i], "right", i)).collect::<Result<Vec<_>>>()?;
        Ok((Bimodule { algebra: self.algebra.clone(), dim: sub.dim(), left, right }, incl))
    }

    /// The quotient bimodule by a sub-bimodule, with its canonical presentation.
    pub fn quotient(&self, relations: &Subspace) -> Result<(Bimodule, QuotientSpace)> {
        if relations.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("relation ambient differs from module dimension".into()));
        }
        let d = self.algebra.dim();
        for r in relations.basis_vectors() {
            for i in 0..d {
                if !relations.contains(&self.left[i].mul_vec(&r))? || !relations.contains(&self.right[i].mul_vec(&r))? {
                    return Err(Error::InvalidBimodule(format!(
                        "relations are not a sub-bimodule (not stable under e_{i})"
                    )));
                }
            }
        }
        let q = QuotientSpace::new(relations.clone());
        let induce = |m: &Matrix| &(q.projection() * m) * q.section();
        let left = self.left.iter().map(induce).collect();
        let right = self.right.iter().map(induce).collect();
        Ok((Bimodule { algebra: self.algebra.clone(), dim: q.dim(), left, right }, q))
    }

    /// `M ⊗_A N`.
    pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorOverA> {
        if m.algebra != n.algebra {
            return Err(Error::Precondition("tensor factors over different algebras".into()));
        }
        let f = m.field();
        let outer = Bimodule::outer_product(m, n);
        let im = Matrix::identity(f, m.dim);
        let in_ = Matrix::identity(f, n.dim);
        let gens: Vec<Matrix> = (0..m.algebra.dim())
            .map(|i| &m.right[i].kron(&in_) - &im.kron(&n.left[i]))
            .collect();
        let refs: Vec<&Matrix> = gens.iter().collect();
        let relations = Subspace::from_matrix_columns(&Matrix::hstack(f, outer.dim, &refs));
        let (module, q) = outer.quotient(&relations)?;
        Ok(TensorOverA { module, projection: q.projection().clone() })
    }

    /// `A ⊗_A M` and the isomorphism `λ: A ⊗_A M → M`, `a ⊗ v ↦ a v`.
    pub fn left_unitor(&self) -> Result<(TensorOverA, Matrix)> {
        let reg = Bimodule::regular(&self.algebra);
        let t = Bimodule::tensor_over(&reg, self)?;
        let (d, n) = (self.algebra.dim(), self.dim);
        let act = Matrix::from_triplets(
            self.field(),
            n,
            d * n,
            (0..d).flat_map(|i| (0..n).flat_map(move |v| self.left[i].column(v).into_iter().enumerate().map(move |(r, s)| (r, i * n + v, s)))),
        );
        let lambda = &act * &section_of(&t.projection)?;
        Ok((t, lambda))
    }

    /// `M ⊗_A A` and the isomorphism `ρ: M ⊗_A A → M`, `v ⊗ a ↦ v a`.
    pub fn right_unitor(&self) -> Result<(TensorOverA, Matrix)> {
        let reg = Bimodule::regular(&self.algebra);
        let t = Bimodule::tensor_over(self, &reg)?;
        let (d, n) = (self.algebra.dim(), self.dim);
        let act = Matrix::from_triplets(
            self.field(),
            n,
            n * d,
            (0..n).flat_map(|v| (0..d).flat_map(move |i| self.right[i].column(v).into_iter().enumerate().map(move |(r, s)| (r, v * d + i, s)))),
        );
        let rho = &act * &section_of(&t.projection)?;
        Ok((t, rho))
    }

    /// Basis of `Hom_{A^ev}(src, tgt)` as `dim tgt × dim src` matrices.
    pub fn hom_basis(src: &Bimodule, tgt: &Bimodule) -> Result<Vec<Matrix>> {
        if src.algebra != tgt.algebra {
            return Err(Error::Precondition("modules over different algebras".into()));
        }
        let f = src.field();
        let mut sys = LinearSystem::new(f);
        let x = sys.add_unknown(tgt.dim, src.dim);
        let neg = f.from_i64(-1);
        for i in 0..src.algebra.dim() {
            for (s, t) in [(&src.left[i], &tgt.left[i]), (&src.right[i], &tgt.right[i])] {
                sys.add_equation(
                    tgt.dim,
                    src.dim,
                    &[Term::new(x, None, Some(s), f.one()), Term::new(x, Some(t), None, neg.clone())],
                    None,
                )?;
            }
        }
        Ok(sys
            .homogeneous_solutions()
            .basis_vectors()
            .iter()
            .map(|v| sys.unpack(v).remove(0))
            .collect())
    }
}

/// A right inverse of a surjective matrix.
pub(crate) fn section_of(p: &Matrix) -> Result<Matrix> {
    p.solve_matrix(&Matrix::identity(p.field(), p.rows()))?
        .ok_or_else(|| Error::Internal("projection is not surjective".into()))
}

/// An A^ev-linear map with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Result<BimoduleMap> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if !source.is_morphism_to(&target, &matrix) {
            return Err(Error::NotBimoduleMap("matrix does not commute with the actions".into()));
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    pub fn identity(m: &Arc<Bimodule>) -> BimoduleMap {
        BimoduleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.field(), m.dim()) }
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BimoduleMap) -> Result<BimoduleMap> {
        if *first.target != *self.source {
            return Err(Error::Precondition("maps are not composable".into()));
        }
        Ok(BimoduleMap { source: first.source.clone(), target: self.target.clone(), matrix: &self.matrix * &first.matrix })
    }
}
