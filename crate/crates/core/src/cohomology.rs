//! Restricted modules and restricted first cohomology.
//!
//! A 1-cochain `L → M` is an `m × n` matrix whose column `j` is the image of
//! `x_j`; cochain spaces are subspaces of the `m·n`-dimensional space of such
//! matrices, flattened row-major.

use crate::algebra::RestrictedLieAlgebra;
use crate::derivations::{self, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{kernel, FieldMatrix, Subspace};
use crate::structure;

/// A representation `ρ` of `L` with `ρ(x_i^[p]) = ρ(x_i)^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedModule {
    algebra: RestrictedLieAlgebra,
    mdim: usize,
    rho: Vec<FieldMatrix>,
}

fn combine(l: &RestrictedLieAlgebra, rho: &[FieldMatrix], mdim: usize, v: &[u32]) -> FieldMatrix {
    let mut out = FieldMatrix::zeros(l.field(), mdim, mdim);
    for (m, &c) in rho.iter().zip(v) {
        if c != 0 {
            out = out.add(&m.scale(c));
        }
    }
    out
}

impl RestrictedModule {
    /// Validates the representation and restrictedness conditions on the basis.
    pub fn new(algebra: RestrictedLieAlgebra, mdim: usize, rho: Vec<FieldMatrix>) -> Result<Self> {
        let n = algebra.dim();
        if rho.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rho.len(),
            });
        }
        if let Some(bad) = rho.iter().find(|m| m.rows() != mdim || m.cols() != mdim) {
            return Err(Error::DimensionMismatch {
                expected: mdim,
                found: bad.rows().max(bad.cols()),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = combine(&algebra, &rho, mdim, algebra.structure_constants(i, j));
                let rhs = rho[i].mul(&rho[j]).sub(&rho[j].mul(&rho[i]));
                if lhs != rhs {
                    return Err(Error::Representation { i, j });
                }
            }
        }
        for i in 0..n {
            let lhs = combine(&algebra, &rho, mdim, algebra.pmap_image(i));
            if lhs != rho[i].pow(algebra.p() as u64) {
                return Err(Error::ModuleRestrictedness { i });
            }
        }
        Ok(Self { algebra, mdim, rho })
    }

    /// `L` acting on itself by `ad`.
    pub fn adjoint(l: &RestrictedLieAlgebra) -> Self {
        let rho = (0..l.dim()).map(|i| l.ad_basis(i).clone()).collect();
        Self {
            algebra: l.clone(),
            mdim: l.dim(),
            rho,
        }
    }

    /// `m`-dimensional module with every element acting as zero.
    pub fn trivial(l: &RestrictedLieAlgebra, m: usize) -> Self {
        let rho = vec![FieldMatrix::zeros(l.field(), m, m); l.dim()];
        Self {
            algebra: l.clone(),
            mdim: m,
            rho,
        }
    }

    /// `L/I` acting by `ad` on an `L`-stable subspace `S` with `[I, S] = 0`,
    /// in the canonical coordinates of `S`. `quotient` must be `L/I` as
    /// produced by [`RestrictedLieAlgebra::quotient`].
    pub fn induced(
        l: &RestrictedLieAlgebra,
        ideal: &Subspace,
        quotient: &RestrictedLieAlgebra,
        s: &Subspace,
    ) -> Result<Self> {
        if !structure::bracket_space(l, ideal, s).is_zero() {
            return Err(Error::Precondition(
                "I does not act trivially on the module".into(),
            ));
        }
        let transversal = ideal.transversal();
        let mut rho = Vec::with_capacity(transversal.len());
        for &t in &transversal {
            let x = l.basis_element(t);
            let cols = s
                .basis_vectors()
                .map(|v| {
                    s.coordinates(&l.bracket(&x, v)).ok_or_else(|| {
                        Error::Precondition("module subspace is not L-stable".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rho.push(FieldMatrix::from_columns(l.field(), s.dim(), &cols));
        }
        if s.dim() == 0 {
            rho = vec![FieldMatrix::zeros(l.field(), 0, 0); transversal.len()];
        }
        Self::new(quotient.clone(), s.dim(), rho)
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.mdim
    }

    pub fn action(&self, i: usize) -> &FieldMatrix {
        &self.rho[i]
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act(&self, v: &[u32]) -> FieldMatrix {
        combine(&self.algebra, &self.rho, self.mdim, v)
    }
}

/// Restricted 1-cocycles: `D[x_i, x_j] = x_i·D(x_j) - x_j·D(x_i)` and
/// `D(x_i^[p]) = x_i^{p-1}·D(x_i)` on basis elements.
pub fn z1(module: &RestrictedModule) -> Subspace {
    let l = module.algebra();
    let f = l.field();
    let n = l.dim();
    let m = module.dim();
    let unknowns = m * n;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = l.structure_constants(i, j);
            let (ri, rj) = (module.action(i), module.action(j));
            for r in 0..m {
                let mut row = vec![0u32; unknowns];
                for k in 0..n {
                    row[r * n + k] = f.add(row[r * n + k], cij[k]);
                }
                for s in 0..m {
                    row[s * n + j] = f.sub(row[s * n + j], ri.get(r, s));
                    row[s * n + i] = f.add(row[s * n + i], rj.get(r, s));
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        let pm = l.pmap_image(i);
        let pw = module.action(i).pow(l.p() as u64 - 1);
        for r in 0..m {
            let mut row = vec![0u32; unknowns];
            for k in 0..n {
                row[r * n + k] = f.add(row[r * n + k], pm[k]);
            }
            for s in 0..m {
                row[s * n + i] = f.sub(row[s * n + i], pw.get(r, s));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Subspace::full(f, unknowns);
    }
    kernel(&FieldMatrix::from_rows(f, unknowns, &rows))
}

/// Coboundaries `x ↦ x·v`, spanned over the basis vectors `v` of `M`.
pub fn b1(module: &RestrictedModule) -> Subspace {
    let l = module.algebra();
    let n = l.dim();
    let m = module.dim();
    let gens = (0..m).map(|k| {
        let mut flat = vec![0u32; m * n];
        for j in 0..n {
            for r in 0..m {
                flat[r * n + j] = module.action(j).get(r, k);
            }
        }
        flat
    });
    Subspace::span(l.field(), m * n, gens)
}

pub fn h1_dim(module: &RestrictedModule) -> usize {
    let z = z1(module);
    let b = b1(module);
    assert!(z.contains_subspace(&b), "coboundaries must be cocycles");
    z.dim() - b.dim()
}

/// `M^L`, the joint kernel of the action.
pub fn invariants(module: &RestrictedModule) -> Subspace {
    let l = module.algebra();
    let m = module.dim();
    if l.dim() == 0 {
        return Subspace::full(l.field(), m);
    }
    let blocks: Vec<&FieldMatrix> = module.rho.iter().collect();
    kernel(&FieldMatrix::vstack(l.field(), m, &blocks))
}

fn require_unipotent(l: &RestrictedLieAlgebra) -> Result<()> {
    if structure::is_p_unipotent(l)? {
        Ok(())
    } else {
        Err(Error::NotUnipotent)
    }
}

/// The socle of a module over a p-unipotent algebra, where the trivial
/// module is the only simple one and the socle equals the invariants.
pub fn socle_unipotent(module: &RestrictedModule) -> Result<Subspace> {
    require_unipotent(module.algebra())?;
    Ok(invariants(module))
}

/// `span{x_i·v}`, the radical of `M` over the local algebra `u(N)`.
pub fn radical(module: &RestrictedModule) -> Subspace {
    let cols = module
        .rho
        .iter()
        .flat_map(|r| (0..module.dim()).map(move |k| r.column(k)));
    Subspace::span(module.algebra().field(), module.dim(), cols)
}

/// Freeness over `u(N)` for p-unipotent `N`: `u(N)` is local of dimension
/// `p^{dim N}`, so `M` is free exactly when `dim M = rank · p^{dim N}` with
/// `rank = dim M/rad M` the minimal number of generators.
pub fn is_free_over_unipotent(module: &RestrictedModule) -> Result<(bool, usize)> {
    let n = module.algebra();
    require_unipotent(n)?;
    let rank = module.dim() - radical(module).dim();
    let u_dim = crate::linalg::checked_count(n.p(), n.dim());
    let free = (module.dim() as u64) == (rank as u64).saturating_mul(u_dim);
    if free {
        assert_eq!(
            invariants(module).dim(),
            rank,
            "free module socle must have dimension rank"
        );
    }
    Ok((free, rank))
}

fn check_ideal_pair(l: &RestrictedLieAlgebra, ideal: &Subspace, j: &Subspace) -> Result<Subspace> {
    if !structure::is_p_ideal(l, ideal) {
        return Err(Error::Precondition("I is not a p-ideal".into()));
    }
    if !structure::is_p_ideal(l, j) {
        return Err(Error::Precondition("J is not a p-ideal".into()));
    }
    let cent = structure::centralizer(l, ideal);
    if !cent.intersection(ideal).contains_subspace(j) {
        return Err(Error::Precondition("J is not contained in Zen(I)".into()));
    }
    Ok(cent)
}

/// A restricted cocycle of `L/I` with values in `J` whose image in
/// `H¹(L/I, Cent_L(I))` is non-zero, returned as an `n × codim I` matrix of
/// values in `L`-coordinates (column `a` is the value on the `a`-th
/// transversal basis vector).
pub fn gamma_nontrivial(
    l: &RestrictedLieAlgebra,
    ideal: &Subspace,
    j: &Subspace,
) -> Result<Option<FieldMatrix>> {
    let cent = check_ideal_pair(l, ideal, j)?;
    if j.is_zero() {
        return Ok(None);
    }
    let (q, _) = l.quotient(ideal)?;
    let mj = RestrictedModule::induced(l, ideal, &q, j)?;
    let mc = RestrictedModule::induced(l, ideal, &q, &cent)?;
    let d = q.dim();
    let coboundaries = b1(&mc);
    let jb = j.basis().transpose();
    for cocycle in z1(&mj).basis_vectors() {
        let local = FieldMatrix::from_flat(l.field(), j.dim(), d, cocycle.to_vec());
        let ambient = jb.mul(&local);
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|a| {
                cent.coordinates(&ambient.column(a))
                    .expect("J lies in the centralizer of I")
            })
            .collect();
        let in_c = FieldMatrix::from_columns(l.field(), cent.dim(), &cols);
        if !coboundaries.contains(in_c.as_flat()) {
            return Ok(Some(ambient));
        }
    }
    Ok(None)
}

/// The composite `L → L/I → J ⊆ L` of a cochain given by its values on the
/// transversal basis, certified to be a restricted derivation with
/// `I ⊆ ker D`, `im D ⊆ J` and `D² = 0`.
pub fn lift_cocycle<'a>(
    l: &'a RestrictedLieAlgebra,
    ideal: &Subspace,
    j: &Subspace,
    values: &FieldMatrix,
) -> Result<Derivation<'a>> {
    check_ideal_pair(l, ideal, j)?;
    if values.rows() != l.dim() || values.cols() != ideal.codim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim() * ideal.codim(),
            found: values.rows() * values.cols(),
        });
    }
    if (0..values.cols()).any(|a| !j.contains(&values.column(a))) {
        return Err(Error::Precondition("cochain takes values outside J".into()));
    }
    let matrix = if ideal.codim() == 0 {
        FieldMatrix::zeros(l.field(), l.dim(), l.dim())
    } else {
        values.mul(&ideal.projection_matrix())
    };
    let d = Derivation::new(l, matrix);
    if !d.is_restricted() {
        return Err(Error::Certification(
            "lifted cochain is not a restricted derivation".into(),
        ));
    }
    if !d.kernel().contains_subspace(ideal) || !j.contains_subspace(&d.image()) {
        return Err(Error::Certification(
            "lifted cochain does not map L/I into J".into(),
        ));
    }
    if !d.is_square_zero() {
        return Err(Error::Certification(
            "lifted cochain does not square to zero".into(),
        ));
    }
    Ok(d)
}

/// A p-subalgebra `H` with `L = A + H` and `A ∩ H = Zen(L)`.
///
/// Complements `C` of `A` are tried first in the form `H = Zen(L) + C`, then
/// every subspace of the right dimension in canonical order. `Ok(None)` means
/// the search completed without a hit.
pub fn find_p_complement(
    l: &RestrictedLieAlgebra,
    a: &Subspace,
    budget: u64,
) -> Result<Option<Subspace>> {
    if !structure::is_abelian_subspace(l, a) {
        return Err(Error::NotAbelian);
    }
    if !structure::is_p_ideal(l, a) {
        return Err(Error::NotPIdeal);
    }
    let zen = structure::center(l);
    if !a.contains_subspace(&zen) {
        return Err(Error::Precondition("A must contain the center".into()));
    }
    let accept = |h: &Subspace| {
        a.sum(h).is_full() && a.intersection(h) == zen && structure::is_p_subalgebra(l, h)
    };
    for c in a.complements(budget)? {
        let h = zen.sum(&c);
        if accept(&h) {
            return Ok(Some(h));
        }
    }
    let target = l.dim() - a.dim() + zen.dim();
    for h in Subspace::enumerate(l.field(), l.dim(), target, budget)? {
        if accept(&h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// `z1` and `b1` of the adjoint module must agree with `Der_p` and `ad(L)`.
pub fn adjoint_consistent(l: &RestrictedLieAlgebra) -> bool {
    let m = RestrictedModule::adjoint(l);
    z1(&m) == derivations::der_p(l) && b1(&m) == derivations::inner(l)
}

#[cfg(test)]
mod tests;
