//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{FieldScalar, PrimeField, MAX_PRIME};
pub use matrix::{kernel, rref, rref_with_pivots, solve, FieldMatrix};
pub use subspace::Subspace;

/// `p^k`, saturating at `u64::MAX`.
pub fn checked_count(p: u32, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(p as u64);
    }
    acc
}

/// Iterates over every vector of GF(p)^len, first coordinate varying fastest.
pub fn all_vectors(field: PrimeField, len: usize) -> AllVectors {
    AllVectors {
        p: field.p(),
        current: Some(vec![0; len]),
    }
}

pub struct AllVectors {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for AllVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for slot in next.iter_mut() {
            *slot += 1;
            if *slot < self.p {
                self.current = Some(next);
                return Some(out);
            }
            *slot = 0;
        }
        Some(out)
    }
}

/// Nonzero vectors whose first nonzero coordinate is 1: one per line.
pub fn projective_points(field: PrimeField, len: usize) -> impl Iterator<Item = Vec<u32>> {
    all_vectors(field, len).filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
}

pub fn vec_add(field: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn vec_scale(field: PrimeField, s: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| field.mul(s, x)).collect()
}

pub fn is_zero_vec(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
