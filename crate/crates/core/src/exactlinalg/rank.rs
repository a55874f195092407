//! Structured sparse Gaussian elimination.
//!
//! The matrix is oriented so that the smaller side supplies the vectors,
//! vectors are processed sparsest first, and each incoming vector is reduced
//! against the pivots found so far. Pivot vectors are normalized to a
//! leading one. Prime fields run on raw `u64` residues; the rationals run on
//! reduced `BigRational`s.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactlinalg::field::{inv_mod, mul_mod, FieldElement, FieldKind};
use crate::exactlinalg::matrix::SparseMatrix;

trait Scalars {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
}

struct ModP(u64);

impl Scalars for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0;
        (a + p - mul_mod(*c, *b, p)) % p
    }
}

struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
}

type SparseVec<E> = Vec<(u32, E)>;

/// `target - c * pivot`, both sorted by column.
fn axpy<K: Scalars>(k: &K, target: &SparseVec<K::E>, c: &K::E, pivot: &SparseVec<K::E>) -> SparseVec<K::E> {
    let zero = k.zero();
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    loop {
        match (target.get(i), pivot.get(j)) {
            (None, None) => break,
            (Some(t), Some(p)) if t.0 == p.0 => {
                let v = k.sub_mul(&t.1, c, &p.1);
                if !k.is_zero(&v) {
                    out.push((t.0, v));
                }
                i += 1;
                j += 1;
            }
            (Some(t), p) if p.is_none_or(|p| t.0 < p.0) => {
                out.push(t.clone());
                i += 1;
            }
            (_, Some(p)) => {
                let v = k.sub_mul(&zero, c, &p.1);
                if !k.is_zero(&v) {
                    out.push((p.0, v));
                }
                j += 1;
            }
            (Some(_), None) => unreachable!(),
        }
    }
    out
}

fn eliminate<K: Scalars>(k: &K, mut vectors: Vec<SparseVec<K::E>>) -> usize {
    vectors.retain(|v| !v.is_empty());
    vectors.sort_by_key(|v| v.len());
    let mut pivots: Vec<SparseVec<K::E>> = Vec::new();
    let mut pivot_of_col: HashMap<u32, usize> = HashMap::new();
    for mut v in vectors {
        while let Some((lead, coeff)) = v.first().cloned() {
            match pivot_of_col.get(&lead) {
                Some(&pi) => {
                    v = axpy(k, &v, &coeff, &pivots[pi]);
                }
                None => {
                    let inv = k.inv(&coeff);
                    let normalized: SparseVec<K::E> = v.iter().map(|(c, x)| (*c, k.mul(x, &inv))).collect();
                    pivot_of_col.insert(lead, pivots.len());
                    pivots.push(normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Exact rank of `m`. Deterministic for a given matrix.
pub(crate) fn rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let oriented = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    let rows = oriented.row_vectors();
    match oriented.field().kind() {
        FieldKind::Prime(p) => {
            let vectors = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| match v {
                            FieldElement::Mod(x) => (c, x),
                            FieldElement::Rat(_) => unreachable!("validated prime-field entry"),
                        })
                        .collect()
                })
                .collect();
            eliminate(&ModP(p), vectors)
        }
        FieldKind::Rationals => {
            let vectors = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| match v {
                            FieldElement::Rat(x) => (c, x),
                            FieldElement::Mod(_) => unreachable!("validated rational entry"),
                        })
                        .collect()
                })
                .collect();
            eliminate(&Rationals, vectors)
        }
    }
}
