use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// A nonzero `x` with `x² = 0` spanning `A` together with `1`, when `A ≅ K[x]/(x²)`.
pub fn dual_numbers_generator(a: &Algebra) -> Result<Vec<Scalar>> {
    let unsupported = || Error::Unsupported("algebra is not isomorphic to K[x]/(x²)".into());
    if a.dim() != 2 {
        return Err(unsupported());
    }
    let f = a.field();
    let unit = a.unit().to_vec();
    let y = (0..2)
        .map(|i| a.basis_vector(i))
        .find(|e| Matrix::from_columns(f, 2, &[unit.clone(), e.clone()]).map(|m| m.rank() == 2).unwrap_or(false))
        .ok_or_else(unsupported)?;
    let basis = Matrix::from_columns(f, 2, &[unit.clone(), y.clone()])?;
    // y² = β·1 + α·y
    let coords = basis.solve(&a.mul(&y, &y))?.ok_or_else(unsupported)?;
    let (beta, alpha) = (&coords[0], &coords[1]);
    let shift = match f {
        Field::Prime(2) => {
            if !alpha.is_zero() {
                return Err(unsupported());
            }
            beta.clone()
        }
        _ => {
            let half = f.from_i64(2).inv().expect("characteristic is not 2");
            -&(alpha * &half)
        }
    };
    let x: Vec<Scalar> = y.iter().zip(&unit).map(|(yi, ui)| yi + &(&shift * ui)).collect();
    if !a.mul(&x, &x).iter().all(Scalar::is_zero) {
        return Err(unsupported());
    }
    Ok(x)
}

/// The 2-periodic resolution `⋯ → A⊗A → A⊗A → A` of `A = K[x]/(x²)`, with
/// `P_k → P_{k-1}` right multiplication in `A^ev` by `x⊗1 − 1⊗x` (k odd) or `x⊗1 + 1⊗x` (k even).
#[derive(Clone, Debug)]
pub struct PeriodicResolution {
    algebra: Arc<Algebra>,
    generator: Vec<Scalar>,
    term: Arc<Bimodule>,
    /// `maps[0] = μ`, `maps[k] : P_k → P_{k-1}`.
    maps: Vec<Matrix>,
}

impl PeriodicResolution {
    /// Builds `P_0..P_{N+1}` and verifies exactness.
    pub fn new(a: &Arc<Algebra>, max_degree: usize) -> Result<PeriodicResolution> {
        let x = dual_numbers_generator(a)?;
        let f = a.field();
        let id = Matrix::identity(f, 2);
        let right_x = a.right_mult(&x).kron(&id);
        let left_x = id.kron(&a.left_mult(&x));
        let odd = &right_x - &left_x;
        let even = &right_x + &left_x;
        let mut maps = vec![a.multiplication_matrix()];
        maps.extend((1..=max_degree + 1).map(|k| if k % 2 == 1 { odd.clone() } else { even.clone() }));
        let res = PeriodicResolution { algebra: a.clone(), generator: x, term: Arc::new(Bimodule::outer_tensor(a)), maps };
        res.verify()?;
        Ok(res)
    }

    fn verify(&self) -> Result<()> {
        for (k, m) in self.maps.iter().enumerate().skip(1) {
            if !self.term.is_morphism_to(&self.term, m) {
                return Err(Error::Internal(format!("P_{k} → P_{} is not A^ev-linear", k - 1)));
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        if ranks[0] != self.algebra.dim() {
            return Err(Error::Internal("augmentation is not surjective".into()));
        }
        for k in 0..self.maps.len() - 1 {
            if !(&self.maps[k] * &self.maps[k + 1]).is_zero() || ranks[k] + ranks[k + 1] != self.term.dim() {
                return Err(Error::Internal(format!("periodic resolution is not exact at degree {k}")));
            }
        }
        Ok(())
    }

    pub fn generator(&self) -> &[Scalar] {
        &self.generator
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `dim Ext^n_{A^ev}(A, M)` for `0 ≤ n ≤ N`, via `Hom(A⊗A, M) ≅ M`.
    pub fn ext_dims(&self, m: &Bimodule) -> Result<Vec<usize>> {
        if m.algebra() != &self.algebra {
            return Err(Error::Precondition("module over a different algebra".into()));
        }
        let lx = m.left_action(&self.generator);
        let rx = m.right_action(&self.generator);
        let odd = &lx - &rx;
        let even = &lx + &rx;
        // δ^k : Hom(P_{k-1}, M) → Hom(P_k, M), with δ^0 = 0.
        let rank = |k: usize| if k == 0 { 0 } else if k % 2 == 1 { odd.rank() } else { even.rank() };
        let top = self.maps.len() - 2;
        Ok((0..=top).map(|n| m.dim() - rank(n + 1) - rank(n)).collect())
    }
}
