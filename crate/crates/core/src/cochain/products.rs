use std::sync::Arc;

use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;

use super::{decode_tensor, encode_tensor, tensor_count, Cochain};

fn parity_sign(f: crate::field::Field, exponent: i64) -> Scalar {
    Scalar::sign(f, exponent.rem_euclid(2) as usize)
}

fn require_nonnegative(c: &Cochain, what: &str) -> Result<usize> {
    c.arity().ok_or_else(|| Error::Precondition(format!("{what} has degree -1")))
}

fn require_regular(g: &Cochain, f: &Cochain) -> Result<()> {
    if g.algebra() != f.algebra() {
        return Err(Error::Precondition("cochains over different algebras".into()));
    }
    if !g.module().is_regular() {
        return Err(Error::Precondition("substituted cochain must have coefficients in A".into()));
    }
    Ok(())
}

/// `f •_slot g`: substitute `g` into argument `slot` (1-based) of `f`.
pub fn bullet_slot(f: &Cochain, g: &Cochain, slot: usize) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")?;
    let n = require_nonnegative(g, "g")?;
    require_regular(g, f)?;
    if slot == 0 || slot > m {
        return Err(Error::Precondition(format!("slot {slot} outside 1..={m}")));
    }
    let d = f.algebra().dim();
    let field = f.field();
    let dm = f.module().dim();
    let fcols = f.values().to_columns();
    let gcols = g.values().to_columns();
    let out_deg = m + n - 1;
    let start = slot - 1;
    let cols: Vec<Vec<Scalar>> = (0..tensor_count(d, out_deg))
        .map(|t| {
            let digits = decode_tensor(t, d, out_deg);
            let inner = &gcols[encode_tensor(&digits[start..start + n], d)];
            let mut acc = vec![field.zero(); dm];
            let mut outer = digits[..start].to_vec();
            outer.push(0);
            outer.extend_from_slice(&digits[start + n..]);
            for (k, u) in inner.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                outer[start] = k;
                for (slot, v) in acc.iter_mut().zip(&fcols[encode_tensor(&outer, d)]) {
                    *slot = &*slot + &(u * v);
                }
            }
            acc
        })
        .collect();
    Cochain::new(f.module().clone(), out_deg, Matrix::from_columns(field, dm, &cols)?)
}

/// `f • g = Σ_{i=1}^{m} (-1)^{(i-1)(n-1)} f •_i g`; zero of degree `n-1` when `m = 0`.
pub fn bullet(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")?;
    let n = require_nonnegative(g, "g")?;
    require_regular(g, f)?;
    let mut acc = Cochain::zero_of_degree(f.module().clone(), m as i32 + n as i32 - 1);
    for i in 1..=m {
        let sign = parity_sign(f.field(), (i as i64 - 1) * (n as i64 - 1));
        acc = acc.checked_add(&bullet_slot(f, g, i)?.scale(&sign))?;
    }
    Ok(acc)
}

/// `{f, g} = f • g − (-1)^{(m-1)(n-1)} g • f` for cochains with coefficients in `A`.
pub fn gerstenhaber_bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if !f.module().is_regular() {
        return Err(Error::Precondition("bracket needs coefficients in A".into()));
    }
    let m = require_nonnegative(f, "f")? as i64;
    let n = require_nonnegative(g, "g")? as i64;
    let sign = parity_sign(f.field(), (m - 1) * (n - 1));
    bullet(f, g)?.checked_sub(&bullet(g, f)?.scale(&sign))
}

/// `f • z` for `z ∈ Z_M(A)`; the empty cochain when `f` has degree 0.
pub fn center_action(f: &Cochain, z: &[Scalar]) -> Result<Cochain> {
    let m = f.module();
    if z.len() != m.algebra().dim() {
        return Err(Error::DimensionMismatch("center element has the wrong length".into()));
    }
    if !m.is_relative_central(z) {
        return Err(Error::Precondition("element is not in the relative center Z_M(A)".into()));
    }
    let reg = Arc::new(Bimodule::regular(m.algebra()));
    bullet(f, &Cochain::from_element(reg, z)?)
}

/// `(f ⌣ g)(a_1..a_{m+n}) = π(f(a_1..a_m) ⊗ g(a_{m+1}..))` in `M ⊗_A N`.
pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")?;
    let n = require_nonnegative(g, "g")?;
    let t = Bimodule::tensor_over(f.module(), g.module())?;
    let values = t.projection.checked_mul(&f.values().kron(g.values()))?;
    Cochain::new(Arc::new(t.module), m + n, values)
}

/// `λ(g ⌣ f)` for `g` with coefficients in `A`, landing in `f`'s module.
pub fn left_cup_action(g: &Cochain, f: &Cochain) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")?;
    let n = require_nonnegative(g, "g")?;
    require_regular(g, f)?;
    let (t, lambda) = f.module().left_unitor()?;
    let values = (&lambda * &t.projection).checked_mul(&g.values().kron(f.values()))?;
    Cochain::new(f.module().clone(), m + n, values)
}

/// `ρ(f ⌣ g)` for `g` with coefficients in `A`, landing in `f`'s module.
pub fn right_cup_action(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")?;
    let n = require_nonnegative(g, "g")?;
    require_regular(g, f)?;
    let (t, rho) = f.module().right_unitor()?;
    let values = (&rho * &t.projection).checked_mul(&f.values().kron(g.values()))?;
    Cochain::new(f.module().clone(), m + n, values)
}

/// `∂(f•g) + (-1)^n ∂f•g − f•∂g − (-1)^n [g⌣f − (-1)^{mn} f⌣g]`, which vanishes
/// identically for every `f ∈ C^m(A,M)` and `g ∈ C^n(A,A)`.
pub fn fundamental_formula_residual(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let m = require_nonnegative(f, "f")? as i64;
    let n = require_nonnegative(g, "g")? as i64;
    let field = f.field();
    let sn = parity_sign(field, n);
    let t1 = bullet(f, g)?.differential();
    let t2 = bullet(&f.differential(), g)?.scale(&sn);
    let t3 = bullet(f, &g.differential())?;
    let gf = left_cup_action(g, f)?;
    let fg = right_cup_action(f, g)?;
    let t4 = gf.checked_sub(&fg.scale(&parity_sign(field, m * n)))?.scale(&sn);
    t1.checked_add(&t2)?.checked_sub(&t3)?.checked_sub(&t4)
}
