//! Derivations, restricted derivations and the search for outer ones.
//!
//! A linear map `D: L → L` is stored as an `n × n` matrix whose column `j` is
//! `D(x_j)`. The spaces `Der(L)`, `Der_p(L)` and `ad(L)` live in the
//! `n²`-dimensional space of such matrices, flattened row-major.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::RestrictedLieAlgebra;
use crate::cohomology;
use crate::error::{Error, Result};
use crate::linalg::{
    all_vectors, is_zero_vec, kernel, projective_points, solve, vec_add, vec_sub, FieldMatrix,
    Subspace,
};
use crate::structure;

/// Default cap on the number of candidate matrices visited by exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A linear endomorphism of `L` with lazily computed classification flags.
pub struct Derivation<'a> {
    algebra: &'a RestrictedLieAlgebra,
    matrix: FieldMatrix,
    derivation: OnceLock<bool>,
    restricted: OnceLock<bool>,
    inner: OnceLock<Option<Vec<u32>>>,
    nilpotent: OnceLock<bool>,
}

impl<'a> Derivation<'a> {
    pub fn new(algebra: &'a RestrictedLieAlgebra, matrix: FieldMatrix) -> Self {
        assert_eq!(
            (matrix.rows(), matrix.cols()),
            (algebra.dim(), algebra.dim())
        );
        Self {
            algebra,
            matrix,
            derivation: OnceLock::new(),
            restricted: OnceLock::new(),
            inner: OnceLock::new(),
            nilpotent: OnceLock::new(),
        }
    }

    /// Rebuilds a derivation from its flattened (row-major) matrix.
    pub fn from_flat(algebra: &'a RestrictedLieAlgebra, flat: &[u32]) -> Self {
        let n = algebra.dim();
        Self::new(
            algebra,
            FieldMatrix::from_flat(algebra.field(), n, n, flat.to_vec()),
        )
    }

    pub fn algebra(&self) -> &'a RestrictedLieAlgebra {
        self.algebra
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FieldMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }

    pub fn is_derivation(&self) -> bool {
        *self
            .derivation
            .get_or_init(|| is_derivation(self.algebra, &self.matrix))
    }

    /// Derivation satisfying `D(x_i^[p]) = (ad x_i)^{p-1} D(x_i)` on the basis.
    pub fn is_restricted(&self) -> bool {
        *self.restricted.get_or_init(|| {
            self.is_derivation() && is_restricted_on_basis(self.algebra, &self.matrix)
        })
    }

    /// Some `a` with `D = ad(a)`, if one exists.
    pub fn inner_witness(&self) -> Option<&[u32]> {
        self.inner
            .get_or_init(|| inner_witness(self.algebra, &self.matrix))
            .as_deref()
    }

    pub fn is_inner(&self) -> bool {
        self.inner_witness().is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        *self
            .nilpotent
            .get_or_init(|| self.matrix.pow(self.algebra.dim() as u64).is_zero())
    }

    pub fn is_square_zero(&self) -> bool {
        self.matrix.mul(&self.matrix).is_zero()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.matrix.transpose())
    }
}

impl Clone for Derivation<'_> {
    fn clone(&self) -> Self {
        Self::new(self.algebra, self.matrix.clone())
    }
}

impl std::fmt::Debug for Derivation<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Derivation")
            .field("matrix", &self.matrix.to_rows())
            .finish()
    }
}

pub fn flatten(m: &FieldMatrix) -> Vec<u32> {
    m.as_flat().to_vec()
}

pub fn unflatten(l: &RestrictedLieAlgebra, v: &[u32]) -> FieldMatrix {
    FieldMatrix::from_flat(l.field(), l.dim(), l.dim(), v.to_vec())
}

/// Checks the Leibniz rule on all basis pairs by direct evaluation.
pub fn is_derivation(l: &RestrictedLieAlgebra, m: &FieldMatrix) -> bool {
    let f = l.field();
    let n = l.dim();
    let images: Vec<Vec<u32>> = (0..n).map(|j| m.column(j)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = m.mul_vec(l.structure_constants(i, j));
            let rhs = vec_add(
                f,
                &l.bracket(&images[i], &l.basis_element(j)),
                &l.bracket(&l.basis_element(i), &images[j]),
            );
            lhs == rhs
        })
    })
}

fn restricted_defect_basis(l: &RestrictedLieAlgebra, m: &FieldMatrix, i: usize) -> Vec<u32> {
    let lhs = m.mul_vec(l.pmap_image(i));
    let rhs = l.ad_basis(i).pow(l.p() as u64 - 1).mul_vec(&m.column(i));
    vec_sub(l.field(), &lhs, &rhs)
}

pub fn is_restricted_on_basis(l: &RestrictedLieAlgebra, m: &FieldMatrix) -> bool {
    (0..l.dim()).all(|i| is_zero_vec(&restricted_defect_basis(l, m, i)))
}

/// `D(a^[p]) = (ad a)^{p-1} D(a)` for one arbitrary element `a`.
pub fn is_restricted_at(l: &RestrictedLieAlgebra, m: &FieldMatrix, a: &[u32]) -> bool {
    let lhs = m.mul_vec(&l.ppow(a));
    let rhs = l.ad(a).pow(l.p() as u64 - 1).mul_vec(&m.mul_vec(a));
    lhs == rhs
}

/// Linear system (in the `n²` unknown matrix entries) cutting out `Der(L)`.
fn leibniz_system(l: &RestrictedLieAlgebra) -> FieldMatrix {
    let f = l.field();
    let n = l.dim();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = l.structure_constants(i, j);
            for r in 0..n {
                // Σ_k D[r][k] c_ij[k] - Σ_m D[m][i] c[m][j][r] - Σ_m D[m][j] c[i][m][r] = 0
                let mut row = vec![0u32; n * n];
                for k in 0..n {
                    row[r * n + k] = f.add(row[r * n + k], cij[k]);
                }
                for m in 0..n {
                    let a = l.structure_constants(m, j)[r];
                    row[m * n + i] = f.sub(row[m * n + i], a);
                    let b = l.structure_constants(i, m)[r];
                    row[m * n + j] = f.sub(row[m * n + j], b);
                }
                rows.push(row);
            }
        }
    }
    FieldMatrix::from_rows(f, n * n, &rows)
}

/// Restrictedness imposed on basis elements only: the defect
/// `x ↦ D(x^[p]) - (ad x)^{p-1} D(x)` of a derivation is additive and
/// p-semilinear, so over a prime field it vanishes once it vanishes on a basis.
fn restrictedness_system(l: &RestrictedLieAlgebra) -> FieldMatrix {
    let f = l.field();
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        let pm = l.pmap_image(i);
        let ad_pow = l.ad_basis(i).pow(l.p() as u64 - 1);
        for r in 0..n {
            let mut row = vec![0u32; n * n];
            for k in 0..n {
                row[r * n + k] = f.add(row[r * n + k], pm[k]);
            }
            for m in 0..n {
                row[m * n + i] = f.sub(row[m * n + i], ad_pow.get(r, m));
            }
            rows.push(row);
        }
    }
    FieldMatrix::from_rows(f, n * n, &rows)
}

pub fn der(l: &RestrictedLieAlgebra) -> Subspace {
    kernel(&leibniz_system(l))
}

pub fn der_p(l: &RestrictedLieAlgebra) -> Subspace {
    let n = l.dim();
    let a = leibniz_system(l);
    let b = restrictedness_system(l);
    kernel(&FieldMatrix::vstack(l.field(), n * n, &[&a, &b]))
}

/// `ad(L)` inside the space of flattened matrices.
pub fn inner(l: &RestrictedLieAlgebra) -> Subspace {
    let n = l.dim();
    Subspace::span(l.field(), n * n, (0..n).map(|i| flatten(l.ad_basis(i))))
}

/// Deterministic `a` with `ad(a) = m` (free coordinates zero).
pub fn inner_witness(l: &RestrictedLieAlgebra, m: &FieldMatrix) -> Option<Vec<u32>> {
    let n = l.dim();
    let cols: Vec<Vec<u32>> = (0..n).map(|i| flatten(l.ad_basis(i))).collect();
    let system = FieldMatrix::from_columns(l.field(), n * n, &cols);
    solve(&system, m.as_flat())
}

/// `dim Der_p(L) - dim ad(L)`, the dimension of the space of outer restricted
/// derivations.
pub fn h1_adjoint_dim(l: &RestrictedLieAlgebra) -> usize {
    let dp = der_p(l);
    let inn = inner(l);
    assert!(
        dp.contains_subspace(&inn),
        "inner derivations must be restricted"
    );
    dp.dim() - inn.dim()
}

/// Basis of a complement of `ad(L)` inside `Der_p(L)`, chosen greedily from
/// the canonical basis of `Der_p(L)`.
pub fn outer_complement_basis(l: &RestrictedLieAlgebra) -> Vec<Vec<u32>> {
    let mut running = inner(l);
    let mut out = Vec::new();
    for v in der_p(l).basis_vectors() {
        if !running.contains(v) {
            out.push(v.to_vec());
            running = running.sum(&Subspace::span(l.field(), running.ambient_dim(), [v]));
        }
    }
    out
}

/// Some outer restricted derivation, if `H¹(L, L) ≠ 0`.
pub fn find_outer(l: &RestrictedLieAlgebra) -> Option<Derivation<'_>> {
    outer_complement_basis(l)
        .first()
        .map(|v| Derivation::from_flat(l, v))
}

/// Sufficient test for `D` to be outer: with `I ⊆ ker D` and
/// `im D ⊆ Cent_L(I)`, the map is not inner as soon as its image leaves
/// `[L, Cent_L(I)]`. `false` means inconclusive.
pub fn outer_by_centralizer_criterion(
    l: &RestrictedLieAlgebra,
    ideal: &Subspace,
    d: &Derivation<'_>,
) -> Result<bool> {
    if !structure::is_p_ideal(l, ideal) {
        return Err(Error::Precondition("I is not a p-ideal".into()));
    }
    if !d.kernel().contains_subspace(ideal) {
        return Err(Error::Precondition("I is not contained in ker D".into()));
    }
    let cent = structure::centralizer(l, ideal);
    let image = d.image();
    if !cent.contains_subspace(&image) {
        return Err(Error::Precondition(
            "im D is not contained in Cent_L(I)".into(),
        ));
    }
    let commutator = structure::bracket_space(l, &l.full_space(), &cent);
    Ok(!commutator.contains_subspace(&image))
}

/// The map vanishing on the codimension-one p-ideal `I` and sending `x ∉ I`
/// to `z ∈ Zen(I)`, validated as a restricted derivation.
pub fn construct_case_derivation<'a>(
    l: &'a RestrictedLieAlgebra,
    ideal: &Subspace,
    x: &[u32],
    z: &[u32],
) -> Result<Derivation<'a>> {
    let f = l.field();
    if ideal.codim() != 1 || !structure::is_p_ideal(l, ideal) {
        return Err(Error::Precondition(
            "I must be a p-ideal of codimension one".into(),
        ));
    }
    if ideal.contains(x) {
        return Err(Error::Precondition("x must lie outside I".into()));
    }
    let zen_i = structure::centralizer(l, ideal).intersection(ideal);
    if !zen_i.contains(z) {
        return Err(Error::Precondition("z must lie in Zen(I)".into()));
    }
    let ann = ideal.annihilator();
    let w = ann.basis().row(0);
    let wx = w
        .iter()
        .zip(x)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
    let scale = f.inv(wx);
    let mut m = FieldMatrix::zeros(f, l.dim(), l.dim());
    for (r, &zr) in z.iter().enumerate() {
        for (c, &wc) in w.iter().enumerate() {
            m.set(r, c, f.mul(zr, f.mul(scale, wc)));
        }
    }
    let d = Derivation::new(l, m);
    if !d.is_derivation() {
        return Err(Error::Certification(
            "constructed map violates the Leibniz rule".into(),
        ));
    }
    if !d.is_restricted() {
        return Err(Error::Certification(
            "constructed map is not restricted".into(),
        ));
    }
    Ok(d)
}

/// How a square-zero outer restricted derivation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareZeroRoute {
    /// Hyperplane p-ideal missing part of the center; `D(x) = z` with `x` central.
    CentralHyperplane,
    /// Hyperplane p-ideal whose centralizer is the center; `D(x) = z` with `z` central.
    CentralizerHyperplane,
    /// Cocycle on `L/A` with values in `A` for a maximal abelian p-ideal `A`.
    IdealPair,
    /// Complete scan over the cosets of `ad(L)` in `Der_p(L)`.
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct SquareZeroWitness<'a> {
    pub derivation: Derivation<'a>,
    pub route: SquareZeroRoute,
}

/// Re-verifies everything a square-zero outer witness must satisfy.
pub fn certify_square_zero_outer(l: &RestrictedLieAlgebra, m: &FieldMatrix) -> Result<()> {
    if !is_derivation(l, m) {
        return Err(Error::Certification(
            "witness violates the Leibniz rule".into(),
        ));
    }
    if !is_restricted_on_basis(l, m) {
        return Err(Error::Certification("witness is not restricted".into()));
    }
    if !m.mul(m).is_zero() {
        return Err(Error::Certification(
            "witness does not square to zero".into(),
        ));
    }
    if inner_witness(l, m).is_some() {
        return Err(Error::Certification("witness is inner".into()));
    }
    Ok(())
}

/// Looks for an outer restricted derivation `D` with `D² = 0`.
///
/// Structured constructions are tried first (hyperplane p-ideals, then a
/// cocycle on `L/A` for a maximal abelian p-ideal `A`); if they produce
/// nothing, every coset of `ad(L)` in `Der_p(L)` is scanned. `Ok(None)` is a
/// complete refutation; running out of budget is an error.
pub fn find_square_zero_outer(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<Option<SquareZeroWitness<'_>>> {
    if !structure::is_nilpotent(l) {
        return Err(Error::NotNilpotent);
    }
    if let Some(w) = square_zero_by_hyperplanes(l)? {
        return Ok(Some(w));
    }
    if let Some(w) = square_zero_by_ideal_pair(l)? {
        return Ok(Some(w));
    }
    square_zero_exhaustive(l, budget)
}

fn square_zero_by_hyperplanes(l: &RestrictedLieAlgebra) -> Result<Option<SquareZeroWitness<'_>>> {
    if structure::is_torus(l) {
        return Ok(None);
    }
    let zen = structure::center(l);
    for ideal in structure::codim1_max_p_ideals(l)? {
        let cent = structure::centralizer(l, &ideal);
        let zen_i = cent.intersection(&ideal);
        if let Some(x) = zen.basis_vectors().find(|v| !ideal.contains(v)) {
            for z in zen_i.basis_vectors() {
                if let Some(d) = accept_hyperplane_candidate(l, &ideal, x, z) {
                    return Ok(Some(SquareZeroWitness {
                        derivation: d,
                        route: SquareZeroRoute::CentralHyperplane,
                    }));
                }
            }
        }
        if cent == zen {
            let t = ideal.transversal()[0];
            let x = l.basis_element(t);
            for z in zen.basis_vectors() {
                if let Some(d) = accept_hyperplane_candidate(l, &ideal, &x, z) {
                    return Ok(Some(SquareZeroWitness {
                        derivation: d,
                        route: SquareZeroRoute::CentralizerHyperplane,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn accept_hyperplane_candidate<'a>(
    l: &'a RestrictedLieAlgebra,
    ideal: &Subspace,
    x: &[u32],
    z: &[u32],
) -> Option<Derivation<'a>> {
    let d = construct_case_derivation(l, ideal, x, z).ok()?;
    (d.is_square_zero() && !d.is_inner()).then_some(d)
}

fn square_zero_by_ideal_pair(l: &RestrictedLieAlgebra) -> Result<Option<SquareZeroWitness<'_>>> {
    if l.is_abelian() {
        return Ok(None);
    }
    let a = structure::maximal_abelian_p_ideal(l)?;
    let Some(cochain) = cohomology::gamma_nontrivial(l, &a, &a)? else {
        return Ok(None);
    };
    let d = cohomology::lift_cocycle(l, &a, &a, &cochain)?;
    if d.is_inner() {
        return Ok(None);
    }
    Ok(Some(SquareZeroWitness {
        derivation: d,
        route: SquareZeroRoute::IdealPair,
    }))
}

/// Visits `D₀ + ad(a)` for every nonzero outer coset representative `D₀`
/// (one per line, since the predicates involved are homogeneous) and every
/// inner derivation, stopping at the first hit.
fn scan_outer_cosets<'a>(
    l: &'a RestrictedLieAlgebra,
    budget: u64,
    accept: impl Fn(&FieldMatrix) -> bool,
) -> Result<Option<Derivation<'a>>> {
    let f = l.field();
    let complement = outer_complement_basis(l);
    let inn = inner(l);
    let inner_basis: Vec<&[u32]> = inn.basis_vectors().collect();
    let mut spent = 0u64;
    for c in projective_points(f, complement.len()) {
        let mut base = vec![0u32; l.dim() * l.dim()];
        for (coef, v) in c.iter().zip(&complement) {
            if *coef != 0 {
                base = vec_add(f, &base, &crate::linalg::vec_scale(f, *coef, v));
            }
        }
        for a in all_vectors(f, inner_basis.len()) {
            spent += 1;
            if spent > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let mut flat = base.clone();
            for (coef, v) in a.iter().zip(&inner_basis) {
                if *coef != 0 {
                    flat = vec_add(f, &flat, &crate::linalg::vec_scale(f, *coef, v));
                }
            }
            let m = unflatten(l, &flat);
            if accept(&m) {
                return Ok(Some(Derivation::new(l, m)));
            }
        }
    }
    Ok(None)
}

fn square_zero_exhaustive(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<Option<SquareZeroWitness<'_>>> {
    let found = scan_outer_cosets(l, budget, |m| m.mul(m).is_zero())?;
    Ok(found.map(|derivation| SquareZeroWitness {
        derivation,
        route: SquareZeroRoute::Exhaustive,
    }))
}

/// Exhaustive search for a nilpotent restricted derivation that is not inner.
pub fn find_nilpotent_outer(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<Option<Derivation<'_>>> {
    let n = l.dim() as u64;
    scan_outer_cosets(l, budget, |m| m.pow(n).is_zero())
}

pub fn nilpotent_outer_exists(l: &RestrictedLieAlgebra, budget: u64) -> Result<bool> {
    Ok(find_nilpotent_outer(l, budget)?.is_some())
}

/// Every element of `Der_p(L)`, for small spaces.
pub fn enumerate_der_p(l: &RestrictedLieAlgebra, budget: u64) -> Result<Vec<FieldMatrix>> {
    let dp = der_p(l);
    if crate::linalg::checked_count(l.p(), dp.dim()) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(all_vectors(l.field(), dp.dim())
        .map(|c| unflatten(l, &dp.combination(&c)))
        .collect())
}

/// For a three-dimensional non-abelian nilpotent algebra in characteristic 2
/// with central p-map: the map that is zero on the center and the identity
/// on the transversal basis vectors. It is restricted and outer but not
/// nilpotent.
pub fn explicit_h1_char2_outer(l: &RestrictedLieAlgebra) -> Result<Derivation<'_>> {
    if l.p() != 2 || l.dim() != 3 || l.is_abelian() || !structure::is_nilpotent(l) {
        return Err(Error::Precondition(
            "requires a three-dimensional non-abelian nilpotent algebra over GF(2)".into(),
        ));
    }
    let zen = structure::center(l);
    if (0..3).any(|i| !zen.contains(l.pmap_image(i))) {
        return Err(Error::Precondition("p-map must be central-valued".into()));
    }

    // Identity on the transversal unit vectors, zero on the center basis.
    let basis: Vec<Vec<u32>> = zen
        .basis_vectors()
        .map(<[u32]>::to_vec)
        .chain(zen.transversal().into_iter().map(|t| l.basis_element(t)))
        .collect();
    let change = FieldMatrix::from_columns(l.field(), 3, &basis);
    let mut diag = FieldMatrix::zeros(l.field(), 3, 3);
    for k in zen.dim()..3 {
        diag.set(k, k, 1);
    }
    let inv = change
        .inverse()
        .expect("center plus transversal is a basis");
    let m = change.mul(&diag).mul(&inv);
    let d = Derivation::new(l, m);
    if !d.kernel().contains_subspace(&zen) {
        return Err(Error::Certification(
            "explicit map does not vanish on the center".into(),
        ));
    }
    if !d.is_restricted() {
        return Err(Error::Certification(
            "explicit map is not a restricted derivation".into(),
        ));
    }
    if d.is_inner() {
        return Err(Error::Certification("explicit map is inner".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests;
