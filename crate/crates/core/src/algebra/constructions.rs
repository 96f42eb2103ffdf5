//! Standard algebras and twists used as fixtures.

use crate::field::Field;
use crate::linalg::Matrix;

use super::Algebra;

fn build(field: Field, names: &[&str], unit: &[i64], table: &[(usize, usize, usize, i64)]) -> Algebra {
    Algebra::checked(
        field,
        names.iter().map(|s| s.to_string()).collect(),
        unit.iter().map(|&u| field.from_i64(u)).collect(),
        table.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))),
    )
    .expect("built-in algebra is valid")
}

/// `K` as a one-dimensional algebra.
pub fn ground_field(field: Field) -> Algebra {
    build(field, &["1"], &[1], &[(0, 0, 0, 1)])
}

/// `K[x]/(x²)` with basis `1, x`.
pub fn dual_numbers(field: Field) -> Algebra {
    build(field, &["1", "x"], &[1, 0], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

/// `K × K` with orthogonal idempotents `e1, e2`.
pub fn product_of_fields(field: Field) -> Algebra {
    build(field, &["e1", "e2"], &[1, 1], &[(0, 0, 0, 1), (1, 1, 1, 1)])
}

/// Upper-triangular 2×2 matrices with basis `E11, E12, E22`.
pub fn upper_triangular(field: Field) -> Algebra {
    build(
        field,
        &["E11", "E12", "E22"],
        &[1, 0, 1],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
    )
}

/// `M_k(A)` with basis `E_pq ⊗ e_i` at index `(p k + q) d + i`.
pub fn matrix_algebra_over(a: &Algebra, k: usize) -> Algebra {
    let d = a.dim();
    let f = a.field();
    let idx = |p: usize, q: usize, i: usize| (p * k + q) * d + i;
    let mut names = Vec::with_capacity(k * k * d);
    for p in 0..k {
        for q in 0..k {
            for name in a.basis_names() {
                names.push(if d == 1 { format!("E{}{}", p + 1, q + 1) } else { format!("E{}{}*{}", p + 1, q + 1, name) });
            }
        }
    }
    let mut unit = vec![f.zero(); k * k * d];
    for p in 0..k {
        for (i, u) in a.unit().iter().enumerate() {
            unit[idx(p, p, i)] = u.clone();
        }
    }
    let mut table = Vec::new();
    for p in 0..k {
        for q in 0..k {
            for s in 0..k {
                for i in 0..d {
                    for j in 0..d {
                        for (t, c) in a.product_of_basis(i, j) {
                            table.push((idx(p, q, i), idx(q, s, j), idx(p, s, *t), c.clone()));
                        }
                    }
                }
            }
        }
    }
    Algebra::checked(f, names, unit, table).expect("matrix algebra over a valid algebra is valid")
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i dim(B) + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Algebra {
    assert_eq!(a.field(), b.field(), "tensor factors share a field");
    let f = a.field();
    let db = b.dim();
    let mut names = Vec::with_capacity(a.dim() * db);
    for x in a.basis_names() {
        for y in b.basis_names() {
            names.push(if x == "1" && y == "1" { "1".to_string() } else { format!("{x}⊗{y}") });
        }
    }
    let mut unit = Vec::with_capacity(a.dim() * db);
    for u in a.unit() {
        for v in b.unit() {
            unit.push(u * v);
        }
    }
    let mut table = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for k in 0..db {
                for l in 0..db {
                    for (s, c) in a.product_of_basis(i, j) {
                        for (t, e) in b.product_of_basis(k, l) {
                            table.push((i * db + k, j * db + l, s * db + t, c * e));
                        }
                    }
                }
            }
        }
    }
    Algebra::checked(f, names, unit, table).expect("tensor product of valid algebras is valid")
}

/// `M_k(K)`.
pub fn full_matrix_algebra(field: Field, k: usize) -> Algebra {
    matrix_algebra_over(&ground_field(field), k)
}

/// Group algebra of `Z/n_1 × ⋯ × Z/n_r`, basis in mixed-radix order.
pub fn abelian_group_algebra(field: Field, orders: &[usize]) -> Algebra {
    let n: usize = orders.iter().product();
    let digits = |mut g: usize| -> Vec<usize> {
        let mut out = vec![0; orders.len()];
        for (slot, &o) in orders.iter().enumerate().rev() {
            out[slot] = g % o;
            g /= o;
        }
        out
    };
    let index = |ds: &[usize]| ds.iter().zip(orders).fold(0, |acc, (x, o)| acc * o + x);
    let names = (0..n)
        .map(|g| {
            let ds = digits(g);
            if ds.iter().all(|&x| x == 0) {
                "1".to_string()
            } else {
                let parts: Vec<String> = ds.iter().map(ToString::to_string).collect();
                format!("g({})", parts.join(","))
            }
        })
        .collect();
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let mut table = Vec::new();
    for g in 0..n {
        for h in 0..n {
            let sum: Vec<usize> = digits(g).iter().zip(digits(h)).zip(orders).map(|((a, b), o)| (a + b) % o).collect();
            table.push((g, h, index(&sum), field.one()));
        }
    }
    Algebra::checked(field, names, unit, table).expect("group algebra is valid")
}

/// The automorphism `x ↦ −x` of the dual numbers.
pub fn dual_numbers_sign_twist(field: Field) -> Matrix {
    Matrix::from_rows(field, vec![vec![field.one(), field.zero()], vec![field.zero(), field.from_i64(-1)]])
        .expect("2x2")
}

/// The endomorphism `x ↦ 0` of the dual numbers.
pub fn dual_numbers_nil_twist(field: Field) -> Matrix {
    Matrix::from_rows(field, vec![vec![field.one(), field.zero()], vec![field.zero(), field.zero()]]).expect("2x2")
}
