use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::{Matrix, PivotOrder, Subspace};

/// Linear equations in several matrix-valued unknowns.
///
/// Each equation has the form `Σ coeff · P · X_b · Q = C`, where `P` or `Q`
/// may be omitted for the identity. Unknown `X_b` of shape `r × c` occupies
/// variables `offset + i * c + j`.
pub struct LinearSystem {
    field: Field,
    blocks: Vec<(usize, usize, usize)>,
    vars: usize,
    entries: Vec<(usize, usize, Scalar)>,
    rhs: Vec<Scalar>,
}

/// One summand `coeff · left · X_block · right`.
pub struct Term<'a> {
    pub block: usize,
    pub left: Option<&'a Matrix>,
    pub right: Option<&'a Matrix>,
    pub coeff: Scalar,
}

impl<'a> Term<'a> {
    pub fn new(block: usize, left: Option<&'a Matrix>, right: Option<&'a Matrix>, coeff: Scalar) -> Self {
        Term { block, left, right, coeff }
    }
}

impl LinearSystem {
    pub fn new(field: Field) -> Self {
        LinearSystem { field, blocks: Vec::new(), vars: 0, entries: Vec::new(), rhs: Vec::new() }
    }

    pub fn add_unknown(&mut self, rows: usize, cols: usize) -> usize {
        self.blocks.push((rows, cols, self.vars));
        self.vars += rows * cols;
        self.blocks.len() - 1
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn equation_count(&self) -> usize {
        self.rhs.len()
    }

    /// Adds the equation `Σ terms = rhs` (or `= 0` when `rhs` is `None`),
    /// with result shape `out_rows × out_cols`.
    pub fn add_equation(&mut self, out_rows: usize, out_cols: usize, terms: &[Term<'_>], rhs: Option<&Matrix>) -> Result<()> {
        let base = self.rhs.len();
        for t in terms {
            let (r, c, off) = *self
                .blocks
                .get(t.block)
                .ok_or_else(|| Error::Internal(format!("unknown block {}", t.block)))?;
            let left_rows = t.left.map_or(r, Matrix::rows);
            let right_cols = t.right.map_or(c, Matrix::cols);
            if t.left.is_some_and(|p| p.cols() != r)
                || t.right.is_some_and(|q| q.rows() != c)
                || left_rows != out_rows
                || right_cols != out_cols
            {
                return Err(Error::DimensionMismatch(format!(
                    "term on unknown {} ({}x{}) does not produce a {}x{} result",
                    t.block, r, c, out_rows, out_cols
                )));
            }
            let left: Vec<(usize, usize, Scalar)> = match t.left {
                Some(p) => (0..p.rows()).flat_map(|a| p.row(a).map(move |(i, s)| (a, i, s.clone()))).collect(),
                None => (0..r).map(|i| (i, i, self.field.one())).collect(),
            };
            let right: Vec<(usize, usize, Scalar)> = match t.right {
                Some(q) => (0..q.rows()).flat_map(|j| q.row(j).map(move |(b, s)| (j, b, s.clone()))).collect(),
                None => (0..c).map(|j| (j, j, self.field.one())).collect(),
            };
            for (a, i, p) in &left {
                let pc = p * &t.coeff;
                for (j, b, q) in &right {
                    self.entries.push((base + a * out_cols + b, off + i * c + j, &pc * q));
                }
            }
        }
        match rhs {
            Some(m) => {
                if m.rows() != out_rows || m.cols() != out_cols {
                    return Err(Error::DimensionMismatch("equation right-hand side shape".into()));
                }
                for row in m.to_rows() {
                    self.rhs.extend(row);
                }
            }
            None => self.rhs.extend(std::iter::repeat_n(self.field.zero(), out_rows * out_cols)),
        }
        Ok(())
    }

    fn coefficient_matrix(&self) -> Matrix {
        Matrix::from_triplets(self.field, self.rhs.len(), self.vars, self.entries.iter().cloned())
    }

    pub fn unpack(&self, x: &[Scalar]) -> Vec<Matrix> {
        self.blocks
            .iter()
            .map(|&(r, c, off)| {
                Matrix::from_triplets(
                    self.field,
                    r,
                    c,
                    (0..r * c).map(|k| (k / c, k % c, x[off + k].clone())),
                )
            })
            .collect()
    }

    pub fn solve(&self) -> Result<Option<Vec<Matrix>>> {
        self.solve_with(&PivotOrder::Natural)
    }

    pub fn solve_with(&self, order: &PivotOrder) -> Result<Option<Vec<Matrix>>> {
        let a = self.coefficient_matrix();
        let b = Matrix::column_vector(self.field, &self.rhs);
        let sol = a.solve_columns_with(&b, order)?.pop().flatten();
        Ok(sol.map(|x| self.unpack(&x)))
    }

    /// Solution space of the homogeneous system, in variable coordinates.
    pub fn homogeneous_solutions(&self) -> Subspace {
        self.coefficient_matrix().kernel()
    }
}
