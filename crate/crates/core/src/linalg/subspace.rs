use std::fmt;

use super::field::PrimeField;
use super::matrix::{kernel, rref_with_pivots, FieldMatrix};
use super::{all_vectors, checked_count};
use crate::error::{Error, Result};

/// A subspace of GF(p)^n stored by its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their basis
/// matrices are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I, V>(field: PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let rows: Vec<V> = vectors.into_iter().collect();
        let m = FieldMatrix::from_rows(field, ambient, &rows);
        Self::from_matrix_rows(&m)
    }

    /// Row space of `m`.
    pub fn from_matrix_rows(m: &FieldMatrix) -> Self {
        let (r, pivots) = rref_with_pivots(m);
        let rows: Vec<Vec<u32>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self {
            ambient: m.cols(),
            basis: FieldMatrix::from_rows(m.field(), m.cols(), &rows),
            pivots,
        }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: FieldMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: FieldMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl DoubleEndedIterator<Item = &[u32]> + ExactSizeIterator {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates in ascending order; the standard basis vectors at
    /// these positions span a complement.
    pub fn transversal(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// The residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// The vector with the given coefficients in the canonical basis.
    pub fn combination(&self, coeffs: &[u32]) -> Vec<u32> {
        assert_eq!(coeffs.len(), self.dim());
        let f = self.field();
        let mut out = vec![0; self.ambient];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.add(*o, f.mul(c, b));
            }
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient, relative to the
    /// transversal basis.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.transversal().into_iter().map(|c| r[c]).collect()
    }

    /// Matrix of the quotient map onto the transversal coordinates.
    pub fn projection_matrix(&self) -> FieldMatrix {
        let f = self.field();
        let cols: Vec<Vec<u32>> = (0..self.ambient)
            .map(|j| {
                let mut e = vec![0; self.ambient];
                e[j] = 1;
                self.project(&e)
            })
            .collect();
        FieldMatrix::from_columns(f, self.codim(), &cols)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        Subspace::span(
            self.field(),
            self.ambient,
            self.basis_vectors().chain(other.basis_vectors()),
        )
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        kernel(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Every subspace `U` with `U + self = ambient` and `U ∩ self = 0`, in
    /// ascending canonical order.
    pub fn complements(&self, budget: u64) -> Result<Vec<Subspace>> {
        let f = self.field();
        let transversal = self.transversal();
        let k = self.dim();
        let total = checked_count(f.p(), transversal.len() * k);
        if total > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut out: Vec<Subspace> = all_vectors(f, transversal.len() * k)
            .map(|coeffs| {
                let rows: Vec<Vec<u32>> = transversal
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| {
                        let mut v = self.combination(&coeffs[t * k..(t + 1) * k]);
                        v[c] = f.add(v[c], 1);
                        v
                    })
                    .collect();
                Subspace::span(f, self.ambient, rows)
            })
            .collect();
        out.sort_by(|a, b| a.basis.as_flat().cmp(b.basis.as_flat()));
        Ok(out)
    }

    /// All subspaces of GF(p)^ambient of the given dimension, in ascending
    /// canonical order.
    pub fn enumerate(
        field: PrimeField,
        ambient: usize,
        dim: usize,
        budget: u64,
    ) -> Result<Vec<Subspace>> {
        if dim > ambient {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut spent = 0u64;
        for pivots in combinations(ambient, dim) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..ambient)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            spent = spent.saturating_add(checked_count(field.p(), free.len()));
            if spent > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            for fill in all_vectors(field, free.len()) {
                let mut m = FieldMatrix::zeros(field, dim, ambient);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&fill) {
                    m.set(r, c, v);
                }
                out.push(Subspace {
                    ambient,
                    basis: m,
                    pivots: pivots.clone(),
                });
            }
        }
        out.sort_by(|a, b| a.basis.as_flat().cmp(b.basis.as_flat()));
        Ok(out)
    }

    /// All subspaces of every dimension, smallest dimension first.
    pub fn enumerate_all(field: PrimeField, ambient: usize, budget: u64) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for d in 0..=ambient {
            out.extend(Self::enumerate(field, ambient, d, budget)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("basis", &self.basis.to_rows())
            .finish()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
