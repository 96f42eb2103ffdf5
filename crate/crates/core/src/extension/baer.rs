use std::sync::Arc;

use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

use super::NExtension;

/// Degreewise direct sum, pulled back along the diagonal of `A` and pushed
/// out along the codiagonal of `M`.
pub fn baer_sum(s: &NExtension, t: &NExtension) -> Result<NExtension> {
    let n = s.length();
    if t.length() != n {
        return Err(Error::Precondition("Baer sum needs extensions of equal length".into()));
    }
    if s.coefficients() != t.coefficients() {
        return Err(Error::Precondition("Baer sum needs extensions with equal ends".into()));
    }
    let f = s.field();
    let m = s.coefficients();
    let mut terms: Vec<Bimodule> =
        (0..n).map(|k| Ok(Bimodule::direct_sum(&[s.term(k), t.term(k)])?.module)).collect::<Result<_>>()?;
    let mut maps: Vec<Matrix> = (0..=n).map(|k| Matrix::block_diag(f, &[s.map(k), t.map(k)])).collect();

    let negated = -t.map(0);
    let diagonal = Matrix::hstack(f, s.base().dim(), &[s.map(0), &negated]);
    let (pulled, inclusion) = terms[0].submodule(&diagonal.kernel())?;
    let first = Matrix::hstack(f, s.base().dim(), &[s.map(0), &Matrix::zeros(f, s.base().dim(), t.term(0).dim())]);
    maps[0] = &first * &inclusion;
    maps[1] = inclusion
        .solve_matrix(&maps[1])?
        .ok_or_else(|| Error::Internal("image of d_1 leaves the pullback".into()))?;
    terms[0] = pulled;

    let id = Matrix::identity(f, m.dim());
    let anti = Matrix::vstack(f, m.dim(), &[&id, &-&id]);
    let first_copy = Matrix::vstack(f, m.dim(), &[&id, &Matrix::zeros(f, m.dim(), m.dim())]);
    let relations = Subspace::from_matrix_columns(&(&maps[n] * &anti));
    let (pushed, q) = terms[n - 1].quotient(&relations)?;
    maps[n] = &(q.projection() * &maps[n]) * &first_copy;
    maps[n - 1] = &maps[n - 1] * q.section();
    terms[n - 1] = pushed;

    NExtension::checked(m.clone(), terms.into_iter().map(Arc::new).collect(), maps)
}
