//! Incremental sparse row reduction, generic over a concrete field kernel.
//!
//! Public matrices hold [`Scalar`]s; elimination converts once to a native
//! representation (`u64` residues or `BigRational`) and back.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Scalar;

pub(crate) type SparseRow<E> = Vec<(usize, E)>;

pub(crate) trait Arith: Copy {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    /// `a + c * b`
    fn add_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;
}

#[derive(Clone, Copy)]
pub(crate) struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0 as u128;
        let prod = (*c as u128 * *b as u128) % p;
        ((*a as u128 + p - prod) % p) as u64
    }
    fn add_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0 as u128;
        ((*a as u128 + (*c as u128 * *b as u128) % p) % p) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        match (Scalar::Residue { value: *a, modulus: self.0 }).inv() {
            Some(Scalar::Residue { value, .. }) => value,
            _ => panic!("inverting zero residue"),
        }
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Residue { value, modulus } if *modulus == self.0 => *value,
            _ => panic!("scalar outside the active prime field"),
        }
    }
    fn lower(&self, e: &u64) -> Scalar {
        Scalar::Residue { value: *e, modulus: self.0 }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        if c.is_one() {
            a - b
        } else {
            a - c * b
        }
    }
    fn add_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a + c * b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(r) => r.clone(),
            _ => panic!("scalar outside the rationals"),
        }
    }
    fn lower(&self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }
}

/// Runs `$body` with `$ar` bound to the native kernel for `$field`.
macro_rules! dispatch {
    ($field:expr, $ar:ident => $body:expr) => {
        match $field {
            $crate::field::Field::Rational => {
                let $ar = $crate::linalg::echelon::Rat;
                $body
            }
            $crate::field::Field::Prime(p) => {
                let $ar = $crate::linalg::echelon::ModP(p);
                $body
            }
        }
    };
}
pub(crate) use dispatch;

/// Row echelon form built one row at a time.
///
/// Stored rows have leading entry 1 at their pivot column and nothing to the
/// left of it. Columns at or beyond `pivot_limit` never become pivots; rows
/// whose part left of the limit reduces to zero are kept as `leftover` when
/// they still have entries beyond it.
pub(crate) struct Echelon<A: Arith> {
    ar: A,
    cols: usize,
    pivot_limit: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseRow<A::E>>,
    leftover: Vec<SparseRow<A::E>>,
    work: Vec<A::E>,
}

impl<A: Arith> Echelon<A> {
    pub fn new(ar: A, cols: usize, pivot_limit: usize) -> Self {
        Echelon {
            ar,
            cols,
            pivot_limit,
            pivot_row: vec![None; pivot_limit],
            rows: Vec::new(),
            leftover: Vec::new(),
            work: vec![ar.zero(); cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` into the scratch buffer and returns the first column
    /// that may still hold a nonzero entry.
    fn reduce_into_work(&mut self, row: &[(usize, A::E)]) -> usize {
        let ar = self.ar;
        let mut start = self.cols;
        for (c, v) in row {
            if !ar.is_zero(v) {
                self.work[*c] = v.clone();
                start = start.min(*c);
            }
        }
        for c in start..self.pivot_limit {
            if ar.is_zero(&self.work[c]) {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let factor = self.work[c].clone();
                for (j, v) in &self.rows[r] {
                    self.work[*j] = ar.sub_mul(&self.work[*j], &factor, v);
                }
            }
        }
        start
    }

    fn drain_work(&mut self, from: usize) -> SparseRow<A::E> {
        let ar = self.ar;
        let mut out = Vec::new();
        for c in from..self.cols {
            if !ar.is_zero(&self.work[c]) {
                out.push((c, std::mem::replace(&mut self.work[c], ar.zero())));
            }
        }
        out
    }

    /// Inserts a row; returns its pivot column if the rank grew.
    pub fn insert(&mut self, row: &[(usize, A::E)]) -> Option<usize> {
        let start = self.reduce_into_work(row);
        if start >= self.cols {
            return None;
        }
        let ar = self.ar;
        let lead = (start..self.pivot_limit).find(|&c| !ar.is_zero(&self.work[c]));
        match lead {
            Some(c) => {
                let scale = ar.inv(&self.work[c]);
                let mut new_row = self.drain_work(c);
                for (_, v) in new_row.iter_mut() {
                    *v = ar.mul(v, &scale);
                }
                self.pivot_row[c] = Some(self.rows.len());
                self.rows.push(new_row);
                Some(c)
            }
            None => {
                let rest = self.drain_work(start);
                if !rest.is_empty() {
                    self.leftover.push(rest);
                }
                None
            }
        }
    }

    pub fn leftover(&self) -> &[SparseRow<A::E>] {
        &self.leftover
    }

    /// Back-substitutes and returns the reduced rows sorted by pivot.
    pub fn into_rref(mut self) -> (Vec<SparseRow<A::E>>, Vec<usize>) {
        let ar = self.ar;
        let mut order: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        order.sort_unstable();
        let mut reduced: Vec<Option<SparseRow<A::E>>> = vec![None; self.rows.len()];
        for &(c, r) in order.iter().rev() {
            let row = std::mem::take(&mut self.rows[r]);
            let targets: Vec<(usize, usize)> = row
                .iter()
                .filter(|(j, _)| *j > c && *j < self.pivot_limit)
                .filter_map(|(j, _)| self.pivot_row[*j].map(|pr| (*j, pr)))
                .collect();
            if targets.is_empty() {
                reduced[r] = Some(row);
                continue;
            }
            for (j, v) in &row {
                self.work[*j] = v.clone();
            }
            for (j, pr) in targets {
                let factor = self.work[j].clone();
                if ar.is_zero(&factor) {
                    continue;
                }
                let other = reduced[pr].as_ref().expect("later pivots reduced first");
                for (k, v) in other {
                    self.work[*k] = ar.sub_mul(&self.work[*k], &factor, v);
                }
            }
            reduced[r] = Some(self.drain_work(c));
        }
        let pivots = order.iter().map(|&(c, _)| c).collect();
        let rows = order
            .iter()
            .map(|&(_, r)| reduced[r].take().expect("row present"))
            .collect();
        (rows, pivots)
    }
}

pub(crate) fn lift_row<A: Arith>(ar: A, row: &[(usize, Scalar)], offset: usize) -> SparseRow<A::E> {
    row.iter().map(|(c, s)| (c + offset, ar.lift(s))).collect()
}

pub(crate) fn lower_row<A: Arith>(ar: A, row: &[(usize, A::E)]) -> Vec<(usize, Scalar)> {
    row.iter().map(|(c, e)| (*c, ar.lower(e))).collect()
}
