//! Structural invariants and distinguished subspaces of a restricted Lie algebra.

use crate::algebra::RestrictedLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel, projective_points, FieldMatrix, Subspace};

fn stacked_kernel(l: &RestrictedLieAlgebra, blocks: &[FieldMatrix]) -> Subspace {
    let refs: Vec<&FieldMatrix> = blocks.iter().collect();
    kernel(&FieldMatrix::vstack(l.field(), l.dim(), &refs))
}

/// `Zen(L)`: joint kernel of all `ad(x_i)`.
pub fn center(l: &RestrictedLieAlgebra) -> Subspace {
    let blocks: Vec<FieldMatrix> = (0..l.dim()).map(|i| l.ad_basis(i).clone()).collect();
    stacked_kernel(l, &blocks)
}

/// `Cent_L(S) = {a : [a, S] = 0}`.
pub fn centralizer(l: &RestrictedLieAlgebra, s: &Subspace) -> Subspace {
    let blocks: Vec<FieldMatrix> = s.basis_vectors().map(|v| l.ad(v)).collect();
    stacked_kernel(l, &blocks)
}

/// `N_L(S) = {a : [a, S] ⊆ S}`.
pub fn normalizer(l: &RestrictedLieAlgebra, s: &Subspace) -> Subspace {
    let ann = s.annihilator();
    let blocks: Vec<FieldMatrix> = s
        .basis_vectors()
        .map(|v| ann.basis().mul(&l.ad(v)))
        .collect();
    stacked_kernel(l, &blocks)
}

/// `span{[s, t] : s ∈ S, t ∈ T}`.
pub fn bracket_space(l: &RestrictedLieAlgebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for a in s.basis_vectors() {
        for b in t.basis_vectors() {
            vecs.push(l.bracket(a, b));
        }
    }
    l.span(vecs)
}

/// `L' = [L, L]`.
pub fn derived(l: &RestrictedLieAlgebra) -> Subspace {
    let n = l.dim();
    l.span(
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| l.structure_constants(i, j).to_vec()),
    )
}

/// `L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ …`, stopping at the first repeated term.
pub fn lower_central_series(l: &RestrictedLieAlgebra) -> Vec<Subspace> {
    let full = l.full_space();
    let mut series = vec![full.clone()];
    loop {
        let next = bracket_space(l, &full, series.last().unwrap());
        if &next == series.last().unwrap() {
            break;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            break;
        }
    }
    series
}

/// `L ⊇ L' ⊇ L'' ⊇ …` until stable.
pub fn derived_series(l: &RestrictedLieAlgebra) -> Vec<Subspace> {
    let mut series = vec![l.full_space()];
    loop {
        let last = series.last().unwrap();
        let next = bracket_space(l, last, last);
        if &next == last {
            break;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            break;
        }
    }
    series
}

pub fn is_nilpotent(l: &RestrictedLieAlgebra) -> bool {
    lower_central_series(l)
        .last()
        .is_some_and(Subspace::is_zero)
}

/// Length of the lower central series, `None` when not nilpotent.
pub fn nilpotency_class(l: &RestrictedLieAlgebra) -> Option<usize> {
    let s = lower_central_series(l);
    s.last().unwrap().is_zero().then(|| s.len() - 1)
}

pub fn is_subalgebra(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    let b: Vec<&[u32]> = s.basis_vectors().collect();
    b.iter()
        .enumerate()
        .all(|(i, x)| b[i + 1..].iter().all(|y| s.contains(&l.bracket(x, y))))
}

pub fn is_ideal(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    s.basis_vectors()
        .all(|v| (0..l.dim()).all(|i| s.contains(l.ad_basis(i).mul_vec(v).as_slice())))
}

fn pclosed_basis(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    s.basis_vectors().all(|v| s.contains(&l.ppow(v)))
}

/// Closed under the bracket and the p-map. Checking p-powers of a basis is
/// enough because the correction terms of the sum rule are brackets.
pub fn is_p_subalgebra(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    is_subalgebra(l, s) && pclosed_basis(l, s)
}

pub fn is_p_ideal(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    is_ideal(l, s) && pclosed_basis(l, s)
}

pub fn is_abelian_subspace(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    let b: Vec<&[u32]> = s.basis_vectors().collect();
    b.iter().enumerate().all(|(i, x)| {
        b[i + 1..]
            .iter()
            .all(|y| l.bracket(x, y).iter().all(|&c| c == 0))
    })
}

/// `⟨S⟩_p`: the smallest p-subalgebra containing `s`.
pub fn p_closure(l: &RestrictedLieAlgebra, s: &Subspace) -> Subspace {
    let mut cur = s.clone();
    loop {
        let basis: Vec<Vec<u32>> = cur.basis_vectors().map(<[u32]>::to_vec).collect();
        let mut gens = basis.clone();
        for (i, a) in basis.iter().enumerate() {
            gens.push(l.ppow(a));
            for b in &basis[i + 1..] {
                gens.push(l.bracket(a, b));
            }
        }
        let next = l.span(gens);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn require_nilpotent(l: &RestrictedLieAlgebra) -> Result<()> {
    if is_nilpotent(l) {
        Ok(())
    } else {
        Err(Error::NotNilpotent)
    }
}

/// Matrix of the p-map on the center in center coordinates. On the center the
/// p-map is additive, and GF(p)-linear because `λ^p = λ`.
fn central_pmap_matrix(l: &RestrictedLieAlgebra, z: &Subspace) -> FieldMatrix {
    let cols: Vec<Vec<u32>> = z
        .basis_vectors()
        .map(|v| {
            z.coordinates(&l.ppow(v))
                .expect("p-powers of central elements are central")
        })
        .collect();
    FieldMatrix::from_columns(l.field(), z.dim(), &cols)
}

/// `T_p(L)`, the unique maximal torus of a nilpotent restricted Lie algebra:
/// the stable image of the p-map on the center.
pub fn maximal_torus(l: &RestrictedLieAlgebra) -> Result<Subspace> {
    require_nilpotent(l)?;
    let z = center(l);
    if z.is_zero() {
        return Ok(z);
    }
    let stable = central_pmap_matrix(l, &z).pow(z.dim() as u64);
    let image = Subspace::from_matrix_rows(&stable.transpose());
    Ok(l.span(image.basis_vectors().map(|c| z.combination(c))))
}

pub fn is_torus(l: &RestrictedLieAlgebra) -> bool {
    maximal_torus(l).is_ok_and(|t| t.is_full())
}

/// Every element is killed by an iterate of the p-map.
pub fn is_p_unipotent(l: &RestrictedLieAlgebra) -> Result<bool> {
    Ok(maximal_torus(l)?.is_zero())
}

/// A maximal abelian p-ideal, grown greedily from the center.
///
/// While `Cent_L(A)` is larger than `A`, the last canonical basis vector of
/// `{x ∈ Cent_L(A) : [x, L] ⊆ A}` outside `A` (the one reaching deepest into
/// the basis order) is adjoined together with its p-powers.
pub fn maximal_abelian_p_ideal(l: &RestrictedLieAlgebra) -> Result<Subspace> {
    require_nilpotent(l)?;
    let mut a = center(l);
    loop {
        let cent = centralizer(l, &a);
        if cent == a {
            return Ok(a);
        }
        let central_mod_a = central_modulo(l, &a);
        let candidates = cent.intersection(&central_mod_a);
        let x = candidates
            .basis_vectors()
            .rev()
            .find(|v| !a.contains(v))
            .ok_or_else(|| {
                Error::Certification(
                    "no central extension of a non-self-centralizing abelian p-ideal".into(),
                )
            })?
            .to_vec();
        a = p_closure(l, &a.sum(&l.span([x])));
    }
}

/// `{x : [x, L] ⊆ S}`, the preimage of the center of `L/S`.
pub fn central_modulo(l: &RestrictedLieAlgebra, s: &Subspace) -> Subspace {
    let ann = s.annihilator();
    let blocks: Vec<FieldMatrix> = (0..l.dim())
        .map(|i| ann.basis().mul(l.ad_basis(i)))
        .collect();
    stacked_kernel(l, &blocks)
}

/// Hyperplanes containing `L' + T_p(L) + span{x_i^[p]}`. These are exactly the
/// maximal p-ideals of a non-toral nilpotent algebra that contain its maximal
/// torus.
pub fn codim1_max_p_ideals(l: &RestrictedLieAlgebra) -> Result<Vec<Subspace>> {
    let torus = maximal_torus(l)?;
    if torus.is_full() {
        return Err(Error::Toral);
    }
    let pimages = l.span(l.pmap_table());
    let phi = derived(l).sum(&torus).sum(&pimages);
    if phi.is_full() {
        return Err(Error::Certification(
            "non-toral nilpotent algebra without a codimension-one p-ideal".into(),
        ));
    }
    let ann = phi.annihilator();
    let mut out: Vec<Subspace> = projective_points(l.field(), ann.dim())
        .map(|c| {
            let functional = ann.combination(&c);
            kernel(&FieldMatrix::from_rows(l.field(), l.dim(), &[functional]))
        })
        .collect();
    out.sort_by(|a, b| a.basis().as_flat().cmp(b.basis().as_flat()));
    Ok(out)
}

/// Every maximal abelian p-ideal, by scanning all subspaces.
pub fn all_maximal_abelian_p_ideals(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<Vec<Subspace>> {
    let all = Subspace::enumerate_all(l.field(), l.dim(), budget)?;
    let abelian: Vec<Subspace> = all
        .into_iter()
        .filter(|s| is_abelian_subspace(l, s) && is_p_ideal(l, s))
        .collect();
    Ok(maximal_elements(&abelian))
}

/// Maximal proper p-ideals, by scanning all subspaces.
pub fn all_maximal_p_ideals(l: &RestrictedLieAlgebra, budget: u64) -> Result<Vec<Subspace>> {
    let all = Subspace::enumerate_all(l.field(), l.dim(), budget)?;
    let proper: Vec<Subspace> = all
        .into_iter()
        .filter(|s| !s.is_full() && is_p_ideal(l, s))
        .collect();
    Ok(maximal_elements(&proper))
}

fn maximal_elements(family: &[Subspace]) -> Vec<Subspace> {
    family
        .iter()
        .filter(|s| {
            !family
                .iter()
                .any(|t| t.dim() > s.dim() && t.contains_subspace(s))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, one_dim_nil, torus, two_dim_nonabelian, HeisenbergPmap};

    fn h1(p: u32, variant: HeisenbergPmap) -> RestrictedLieAlgebra {
        heisenberg(p, variant).unwrap().algebra
    }

    #[test]
    fn centers() {
        let t = torus(3, 5).unwrap().algebra;
        assert!(center(&t).is_full());
        let h = h1(2, HeisenbergPmap::Unipotent);
        assert_eq!(center(&h), h.span([[0, 0, 1]]));
        // [e,f] = f: ad(e) has f-eigenvalue 1 and ad(f) sends e to -f
        let b = two_dim_nonabelian(3).unwrap().algebra;
        assert!(center(&b).is_zero());
    }

    #[test]
    fn centralizers_and_derived() {
        let h = h1(2, HeisenbergPmap::Unipotent);
        assert!(centralizer(&h, &h.zero_space()).is_full());
        let yz = h.span([[0, 1, 0], [0, 0, 1]]);
        assert_eq!(centralizer(&h, &yz), yz);
        assert_eq!(derived(&h), h.span([[0, 0, 1]]));
        assert_eq!(center(&h), centralizer(&h, &h.full_space()));
        // N(span x) = span(x, z)
        let x = h.span([[1, 0, 0]]);
        assert_eq!(normalizer(&h, &x), h.span([[1, 0, 0], [0, 0, 1]]));
    }

    #[test]
    fn central_series() {
        let t = torus(2, 3).unwrap().algebra;
        let s = lower_central_series(&t);
        assert_eq!(s.len(), 2);
        assert!(s[1].is_zero());
        assert_eq!(nilpotency_class(&t), Some(1));

        let h = h1(3, HeisenbergPmap::Unipotent);
        let s = lower_central_series(&h);
        assert_eq!(
            s.iter().map(Subspace::dim).collect::<Vec<_>>(),
            vec![3, 1, 0]
        );
        assert_eq!(nilpotency_class(&h), Some(2));

        let b = two_dim_nonabelian(2).unwrap().algebra;
        let s = lower_central_series(&b);
        assert_eq!(s.last().unwrap(), &b.span([[0, 1]]));
        assert!(!is_nilpotent(&b));
    }

    #[test]
    fn p_closures() {
        let h = h1(2, HeisenbergPmap::Unipotent);
        let x = h.span([[1, 0, 0]]);
        assert_eq!(p_closure(&h, &x), x);
        let ht = h1(2, HeisenbergPmap::ToralCenter);
        let z = center(&ht);
        assert_eq!(p_closure(&ht, &z), z);

        // every element of a torus lies in the p-closure of its p-power
        for p in [2, 3] {
            for n in 1..=2 {
                let t = torus(n, p).unwrap().algebra;
                assert!(p_closure(&t, &t.full_space()).is_full());
                for x in crate::linalg::all_vectors(t.field(), n) {
                    let closure = p_closure(&t, &t.span([t.ppow(&x)]));
                    assert!(closure.contains(&x), "{x:?} over GF({p})");
                }
            }
        }
    }

    #[test]
    fn ideal_predicates() {
        let h = h1(2, HeisenbergPmap::ToralCenter);
        assert!(is_p_ideal(&h, &h.zero_space()));
        assert!(is_p_ideal(&h, &h.full_space()));
        assert!(is_p_ideal(&h, &h.span([[0, 0, 1]])));
        assert!(!is_ideal(&h, &h.span([[1, 0, 0]])));
        assert!(is_p_subalgebra(&h, &h.span([[1, 0, 0]])));
        let bad = h
            .with_pmap(vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 1]])
            .unwrap();
        assert!(!is_p_subalgebra(&bad, &bad.span([[1, 0, 0]])));
    }

    #[test]
    fn tori_and_unipotence() {
        let t = torus(3, 2).unwrap().algebra;
        assert!(maximal_torus(&t).unwrap().is_full());
        assert!(!is_p_unipotent(&t).unwrap());
        let hu = h1(2, HeisenbergPmap::Unipotent);
        assert!(maximal_torus(&hu).unwrap().is_zero());
        assert!(is_p_unipotent(&hu).unwrap());
        let ht = h1(2, HeisenbergPmap::ToralCenter);
        assert_eq!(maximal_torus(&ht).unwrap(), ht.span([[0, 0, 1]]));
        assert!(!is_p_unipotent(&ht).unwrap());
        let e = one_dim_nil(3).unwrap().algebra;
        assert!(is_p_unipotent(&e).unwrap());
        let b = two_dim_nonabelian(2).unwrap().algebra;
        assert_eq!(maximal_torus(&b), Err(Error::NotNilpotent));
        assert_eq!(is_p_unipotent(&b), Err(Error::NotNilpotent));
    }

    #[test]
    fn maximal_abelian_in_heisenberg() {
        for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
            let h = h1(2, variant);
            let a = maximal_abelian_p_ideal(&h).unwrap();
            assert_eq!(a, h.span([[0, 1, 0], [0, 0, 1]]));
            assert_eq!(centralizer(&h, &a), a);
        }
        let t = torus(2, 3).unwrap().algebra;
        assert!(maximal_abelian_p_ideal(&t).unwrap().is_full());
    }

    #[test]
    fn codim_one_ideals() {
        let h = h1(2, HeisenbergPmap::Unipotent);
        let ideals = codim1_max_p_ideals(&h).unwrap();
        // hyperplanes of GF(2)^3 through a fixed line
        assert_eq!(ideals.len(), 3);
        for i in &ideals {
            assert!(i.contains(&[0, 0, 1]));
            assert!(is_p_ideal(&h, i));
        }
        let h3 = h1(3, HeisenbergPmap::Unipotent);
        assert_eq!(codim1_max_p_ideals(&h3).unwrap().len(), 4);

        let ab = torus(2, 2)
            .unwrap()
            .algebra
            .with_pmap(vec![vec![0, 0], vec![0, 0]])
            .unwrap();
        assert_eq!(codim1_max_p_ideals(&ab).unwrap().len(), 3);

        let t = torus(2, 2).unwrap().algebra;
        assert_eq!(codim1_max_p_ideals(&t), Err(Error::Toral));
        let b = crate::catalog::final_remark_algebra(2).unwrap().algebra;
        assert_eq!(codim1_max_p_ideals(&b), Err(Error::NotNilpotent));
    }

    #[test]
    fn scans_agree_with_constructions() {
        let h = h1(2, HeisenbergPmap::Unipotent);
        let mut scanned = all_maximal_p_ideals(&h, 1 << 20).unwrap();
        scanned.sort_by(|a, b| a.basis().as_flat().cmp(b.basis().as_flat()));
        assert_eq!(scanned, codim1_max_p_ideals(&h).unwrap());
        let abelian = all_maximal_abelian_p_ideals(&h, 1 << 20).unwrap();
        // span(x,z), span(y,z), span(x+y,z)
        assert_eq!(abelian.len(), 3);
    }
}
