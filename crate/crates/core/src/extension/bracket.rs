use crate::algebra::BimoduleMap;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::PivotOrder;
use crate::resolution::{lift_identity, null_homotopy, ChainMap, Homotopy};

use super::{loop_pair, LoopPair, NExtension};

/// The extension-side bracket `⟨[S], z⟩` with the intermediate objects.
#[derive(Clone, Debug)]
pub struct ExtBracket {
    /// A degree-`(n-1)` cocycle with coefficients in `M`.
    pub value: Cochain,
    pub loop_pair: LoopPair,
    /// Lift of `id_A` into `S#f`.
    pub lift: ChainMap,
    /// Null-homotopy of `(F_λ − F_ρ) ∘ Φ` in `f#S`.
    pub homotopy: Homotopy,
}

/// Lifts `id_A` into `S#f`, applies `F_λ − F_ρ`, and reads off `s_{n-1}(1 ⊗ − ⊗ 1)`
/// from a null-homotopy in `f#S`.
pub fn ext_bracket(s: &NExtension, z: &[Scalar], order: &PivotOrder) -> Result<ExtBracket> {
    let pair = loop_pair(s, z)?;
    let lift = lift_identity(&pair.source, order)?;
    bracket_with(s, pair, lift, order)
}

/// Same as [`ext_bracket`] but with a caller-supplied lift of `id_A` into `S#f`.
pub fn ext_bracket_from_lift(s: &NExtension, z: &[Scalar], lift: ChainMap, order: &PivotOrder) -> Result<ExtBracket> {
    let pair = loop_pair(s, z)?;
    if !lift.base.is_one() || !lift.is_chain_map_into(&pair.source) {
        return Err(Error::Precondition("supplied map does not lift the identity into S#f".into()));
    }
    bracket_with(s, pair, lift, order)
}

/// The spliced extension `S#f` whose identity lifts feed the bracket.
pub fn bracket_source(s: &NExtension, z: &[Scalar]) -> Result<NExtension> {
    Ok(loop_pair(s, z)?.source)
}

fn bracket_with(s: &NExtension, pair: LoopPair, lift: ChainMap, order: &PivotOrder) -> Result<ExtBracket> {
    let n = s.length();
    let mut components = Vec::with_capacity(n + 1);
    for k in 0..n {
        let delta = &pair.lambda.components[k] - &pair.rho.components[k];
        components.push(lift.components[k].map_coefficients(pair.target.term(k), &delta)?);
    }
    components.push(Cochain::zero(s.coefficients().clone(), n));
    let difference = ChainMap { base: s.field().zero(), components };
    let homotopy = null_homotopy(&difference, &pair.target, order)
        .map_err(|e| Error::Internal(format!("loop difference is not null-homotopic: {e}")))?;
    let value = homotopy.top().clone();
    Ok(ExtBracket { value, loop_pair: pair, lift, homotopy })
}

/// Degree 0: a "0-extension" is a morphism `A → M`; the bracket lands in `HH^{-1} = 0`.
pub fn ext_bracket_on_morphism(map: &BimoduleMap, z: &[Scalar]) -> Result<Cochain> {
    if !map.target().is_relative_central(z) {
        return Err(Error::Precondition("element is not in Z_M(A)".into()));
    }
    Ok(Cochain::empty(map.target().clone()))
}
