//! Restricted Lie algebras given by structure constants and a p-map table.

mod document;

use std::fmt;

pub use document::{AlgebraDocument, BracketEntry};

use crate::error::{Error, Result};
use crate::linalg::{
    is_zero_vec, unit_vector, vec_add, vec_scale, FieldMatrix, PrimeField, Subspace,
};
use crate::structure;

/// A finite-dimensional restricted Lie algebra over GF(p).
///
/// The bracket is stored as `c[i][j][k]` with `[x_i, x_j] = Σ_k c[i][j][k] x_k`
/// and the p-map by the images `x_i^[p]` of the basis vectors. Construction
/// validates antisymmetry, the Jacobi identity on basis triples and
/// `ad(x_i^[p]) = (ad x_i)^p` for every basis element, which pins down a
/// unique p-map on the whole algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RestrictedLieAlgebra {
    field: PrimeField,
    dim: usize,
    sc: Vec<u32>,
    pmap: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
    ad_basis: Vec<FieldMatrix>,
}

impl RestrictedLieAlgebra {
    /// Builds and validates an algebra from the full bracket table
    /// (`sc[(i * dim + j) * dim + k]`) and the basis p-map images.
    pub fn from_tables(p: u32, dim: usize, sc: Vec<u32>, pmap: Vec<Vec<u32>>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if sc.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: sc.len(),
            });
        }
        if pmap.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: pmap.len(),
            });
        }
        if let Some(bad) = pmap.iter().find(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let sc: Vec<u32> = sc.into_iter().map(|v| v % p).collect();
        let pmap: Vec<Vec<u32>> = pmap
            .into_iter()
            .map(|row| row.into_iter().map(|v| v % p).collect())
            .collect();
        let ad_basis = (0..dim)
            .map(|i| {
                let mut m = FieldMatrix::zeros(field, dim, dim);
                for j in 0..dim {
                    for k in 0..dim {
                        m.set(k, j, sc[(i * dim + j) * dim + k]);
                    }
                }
                m
            })
            .collect();
        let algebra = Self {
            field,
            dim,
            sc,
            pmap,
            labels: None,
            ad_basis,
        };
        algebra.validate()?;
        Ok(algebra)
    }

    pub fn builder(p: u32, dim: usize) -> AlgebraBuilder {
        AlgebraBuilder {
            p,
            dim,
            sc: vec![0; dim * dim * dim],
            pmap: vec![vec![0; dim]; dim],
            labels: None,
            errors: Vec::new(),
        }
    }

    /// The zero-dimensional algebra.
    pub fn zero(p: u32) -> Result<Self> {
        Self::from_tables(p, 0, Vec::new(), Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        let f = self.field;
        for i in 0..n {
            if !is_zero_vec(self.structure_constants(i, i)) {
                return Err(Error::Antisymmetry { i, j: i });
            }
            for j in i + 1..n {
                let a = self.structure_constants(i, j);
                let b = self.structure_constants(j, i);
                if a.iter().zip(b).any(|(&x, &y)| f.add(x, y) != 0) {
                    return Err(Error::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.ad_basis[i].mul_vec(self.structure_constants(j, k));
                    let t2 = self.ad_basis[j].mul_vec(self.structure_constants(k, i));
                    let t3 = self.ad_basis[k].mul_vec(self.structure_constants(i, j));
                    if !is_zero_vec(&vec_add(f, &vec_add(f, &t1, &t2), &t3)) {
                        return Err(Error::Jacobi { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            if self.ad(&self.pmap[i]) != self.ad_basis[i].pow(f.p() as u64) {
                return Err(Error::PCompatibility { i });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("x{i}"),
        }
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[u32] {
        let n = self.dim;
        &self.sc[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Coordinates of `x_i^[p]`.
    pub fn pmap_image(&self, i: usize) -> &[u32] {
        &self.pmap[i]
    }

    pub fn pmap_table(&self) -> &[Vec<u32>] {
        &self.pmap
    }

    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        unit_vector(self.dim, i)
    }

    pub fn zero_element(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span<I, V>(&self, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        Subspace::span(self.field, self.dim, vectors)
    }

    pub fn is_abelian(&self) -> bool {
        is_zero_vec(&self.sc)
    }

    /// Matrix of `ad(x_i)`: column `j` is `[x_i, x_j]`.
    pub fn ad_basis(&self, i: usize) -> &FieldMatrix {
        &self.ad_basis[i]
    }

    /// Matrix of `v ↦ [a, v]`.
    pub fn ad(&self, a: &[u32]) -> FieldMatrix {
        self.check_len(a);
        let mut m = FieldMatrix::zeros(self.field, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.ad_basis[i].scale(c));
            }
        }
        m
    }

    pub fn bracket(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.check_len(a);
        self.check_len(b);
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0u32; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 || i == j {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, &s) in out.iter_mut().zip(self.structure_constants(i, j)) {
                    *o = f.add(*o, f.mul(c, s));
                }
            }
        }
        out
    }

    /// The p-power of an arbitrary element.
    ///
    /// Components are folded in ascending basis order using
    /// `(u+v)^[p] = u^[p] + v^[p] + Σ_k s_k(u, v)` and `(λu)^[p] = λu^[p]`
    /// (the latter because `λ^p = λ` in a prime field).
    pub fn ppow(&self, a: &[u32]) -> Vec<u32> {
        self.check_len(a);
        let f = self.field;
        let mut acc: Option<(Vec<u32>, Vec<u32>)> = None;
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = vec_scale(f, c, &self.basis_element(i));
            let v_p = vec_scale(f, c, &self.pmap[i]);
            acc = Some(match acc {
                None => (v, v_p),
                Some((u, u_p)) => {
                    let corr = self.jacobson_correction(&u, &v);
                    let pp = vec_add(f, &vec_add(f, &u_p, &v_p), &corr);
                    (vec_add(f, &u, &v), pp)
                }
            });
        }
        acc.map(|(_, pp)| pp).unwrap_or_else(|| self.zero_element())
    }

    /// `Σ_{k=1}^{p-1} s_k(u, v)` where `k·s_k(u, v)` is the coefficient of
    /// `t^{k-1}` in `ad(t·u + v)^{p-1}(u)`.
    pub fn jacobson_correction(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let p = f.p() as usize;
        // every term of the expansion starts with [v, u]
        if is_zero_vec(&self.bracket(v, u)) {
            return self.zero_element();
        }
        let ad_u = self.ad(u);
        let ad_v = self.ad(v);
        // coefficient vectors of t^0 .. t^{p-1}
        let mut poly: Vec<Vec<u32>> = vec![self.zero_element(); p];
        poly[0] = u.to_vec();
        for step in 0..p - 1 {
            let mut next = vec![self.zero_element(); p];
            for d in 0..=step {
                if is_zero_vec(&poly[d]) {
                    continue;
                }
                next[d] = vec_add(f, &next[d], &ad_v.mul_vec(&poly[d]));
                next[d + 1] = vec_add(f, &next[d + 1], &ad_u.mul_vec(&poly[d]));
            }
            poly = next;
        }
        let mut out = self.zero_element();
        for k in 1..p {
            let coeff = &poly[k - 1];
            out = vec_add(f, &out, &vec_scale(f, f.inv(k as u32), coeff));
        }
        out
    }

    /// Iterated p-power `a^{[p]^k}`.
    pub fn ppow_iter(&self, a: &[u32], k: usize) -> Vec<u32> {
        (0..k).fold(a.to_vec(), |x, _| self.ppow(&x))
    }

    /// `L/I` on the transversal basis of `I`, with the projection `L → L/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(RestrictedLieAlgebra, FieldMatrix)> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: ideal.ambient_dim(),
            });
        }
        if !structure::is_p_ideal(self, ideal) {
            return Err(Error::NotPIdeal);
        }
        let transversal = ideal.transversal();
        let d = transversal.len();
        let mut sc = vec![0u32; d * d * d];
        for (a, &ta) in transversal.iter().enumerate() {
            for (b, &tb) in transversal.iter().enumerate() {
                let img = ideal.project(self.structure_constants(ta, tb));
                sc[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&img);
            }
        }
        let pmap = transversal
            .iter()
            .map(|&t| ideal.project(&self.pmap[t]))
            .collect();
        let mut q = Self::from_tables(self.p(), d, sc, pmap)?;
        if let Some(labels) = &self.labels {
            q.labels = Some(transversal.iter().map(|&t| labels[t].clone()).collect());
        }
        Ok((q, ideal.projection_matrix()))
    }

    /// Block-diagonal direct product.
    pub fn direct_product(&self, other: &RestrictedLieAlgebra) -> Result<RestrictedLieAlgebra> {
        if self.p() != other.p() {
            return Err(Error::ModulusMismatch {
                left: self.p(),
                right: other.p(),
            });
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut sc = vec![0u32; n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    sc[(i * n + j) * n + k] = self.structure_constants(i, j)[k];
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    sc[((n1 + i) * n + n1 + j) * n + n1 + k] = other.structure_constants(i, j)[k];
                }
            }
        }
        let pmap = self
            .pmap
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .chain(std::iter::repeat_n(0, n2))
                    .collect()
            })
            .chain(other.pmap.iter().map(|r| {
                std::iter::repeat_n(0, n1)
                    .chain(r.iter().copied())
                    .collect()
            }))
            .collect();
        let mut out = Self::from_tables(self.p(), n, sc, pmap)?;
        if self.labels.is_some() || other.labels.is_some() {
            out.labels = Some(
                (0..n1)
                    .map(|i| self.label(i))
                    .chain((0..n2).map(|i| other.label(i)))
                    .collect(),
            );
        }
        Ok(out)
    }

    /// The same Lie algebra with the p-map modified to vanish on the canonical
    /// basis of the abelian p-ideal `a` and to agree with the original p-map on
    /// the transversal basis vectors.
    ///
    /// The two p-maps differ by a p-semilinear map into the center, so the new
    /// table is `x_i^[p] - δ(x_i)` where `δ(a_k) = a_k^[p]` on the basis of `a`
    /// and `δ` vanishes on the transversal.
    pub fn twist_pmap(&self, a: &Subspace) -> Result<RestrictedLieAlgebra> {
        if !structure::is_abelian_subspace(self, a) {
            return Err(Error::NotAbelian);
        }
        if !structure::is_p_ideal(self, a) {
            return Err(Error::NotPIdeal);
        }
        let f = self.field;
        let mut pmap = self.pmap.clone();
        for (row, &pc) in a.basis_vectors().zip(a.pivots()) {
            let delta = self.ppow(row);
            pmap[pc] = crate::linalg::vec_sub(f, &pmap[pc], &delta);
        }
        let mut out = Self::from_tables(self.p(), self.dim, self.sc.clone(), pmap)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Same bracket table, new p-map table (validated).
    pub fn with_pmap(&self, pmap: Vec<Vec<u32>>) -> Result<RestrictedLieAlgebra> {
        let mut out = Self::from_tables(self.p(), self.dim, self.sc.clone(), pmap)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Raw bracket table, `(i * dim + j) * dim + k` indexing.
    pub fn bracket_table(&self) -> &[u32] {
        &self.sc
    }

    fn check_len(&self, a: &[u32]) {
        assert_eq!(a.len(), self.dim, "element has wrong number of coordinates");
    }

    /// Renders a vector as a linear combination of basis labels.
    pub fn format_element(&self, a: &[u32]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.label(i)
                } else {
                    format!("{c}*{}", self.label(i))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for RestrictedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RestrictedLieAlgebra(p={}, dim={}", self.p(), self.dim)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let c = self.structure_constants(i, j);
                if !is_zero_vec(c) {
                    write!(
                        f,
                        ", [{},{}]={}",
                        self.label(i),
                        self.label(j),
                        self.format_element(c)
                    )?;
                }
            }
        }
        for i in 0..self.dim {
            write!(
                f,
                ", {}^[p]={}",
                self.label(i),
                self.format_element(&self.pmap[i])
            )?;
        }
        write!(f, ")")
    }
}

/// Incremental construction from individual brackets `[x_i, x_j]`, `i < j`.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    p: u32,
    dim: usize,
    sc: Vec<u32>,
    pmap: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
    errors: Vec<Error>,
}

impl AlgebraBuilder {
    /// Sets `[x_i, x_j] = v` and `[x_j, x_i] = -v`.
    pub fn bracket(mut self, i: usize, j: usize, v: &[i64]) -> Self {
        let n = self.dim;
        if i >= n || j >= n || v.len() != n {
            self.errors.push(Error::Malformed(format!(
                "bracket entry ({i}, {j}) out of range"
            )));
            return self;
        }
        if i == j {
            self.errors.push(Error::Antisymmetry { i, j });
            return self;
        }
        let p = self.p as i64;
        for (k, &c) in v.iter().enumerate() {
            self.sc[(i * n + j) * n + k] = c.rem_euclid(p) as u32;
            self.sc[(j * n + i) * n + k] = (-c).rem_euclid(p) as u32;
        }
        self
    }

    pub fn pmap(mut self, i: usize, v: &[i64]) -> Self {
        if i >= self.dim || v.len() != self.dim {
            self.errors
                .push(Error::Malformed(format!("p-map entry {i} out of range")));
            return self;
        }
        let p = self.p as i64;
        self.pmap[i] = v.iter().map(|c| c.rem_euclid(p) as u32).collect();
        self
    }

    pub fn labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        self
    }

    pub fn build(self) -> Result<RestrictedLieAlgebra> {
        if let Some(e) = self.errors.into_iter().next() {
            return Err(e);
        }
        if self.p < 2 {
            return Err(Error::UnsupportedModulus(self.p));
        }
        let algebra = RestrictedLieAlgebra::from_tables(self.p, self.dim, self.sc, self.pmap)?;
        match self.labels {
            Some(l) => algebra.with_labels(l),
            None => Ok(algebra),
        }
    }
}

#[cfg(test)]
mod tests;
