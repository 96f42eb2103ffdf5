//! Seeded random scalars, cochains and cocycles.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Bimodule;
use crate::cochain::{tensor_count, Cochain, Cohomology};
use crate::field::{Field, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform residue over `F_p`; an integer in `[-3, 3]` over ℚ.
pub fn scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn vector(field: Field, len: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..len).map(|_| scalar(field, rng)).collect()
}

pub fn cochain(module: &Arc<Bimodule>, degree: usize, rng: &mut impl Rng) -> Cochain {
    let len = module.dim() * tensor_count(module.algebra().dim(), degree);
    Cochain::from_vector(module.clone(), degree, &vector(module.field(), len, rng)).expect("length matches")
}

/// A random combination of the canonical cocycle basis.
pub fn cocycle(space: &Cohomology, rng: &mut impl Rng) -> Cochain {
    let coords = vector(space.module().field(), space.cocycles().dim(), rng);
    space.cocycle_from_coordinates(&coords).expect("length matches")
}
