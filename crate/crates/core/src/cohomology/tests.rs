use super::*;
use crate::catalog::{self, heisenberg, torus, HeisenbergPmap};
use crate::derivations::DEFAULT_BUDGET;
use crate::linalg::all_vectors;

fn h1(p: u32, variant: HeisenbergPmap) -> RestrictedLieAlgebra {
    heisenberg(p, variant).unwrap().algebra
}

fn zero_pmap_abelian(n: usize, p: u32) -> RestrictedLieAlgebra {
    RestrictedLieAlgebra::builder(p, n).build().unwrap()
}

/// Left regular representation of `u(h1)` (zero p-map) on the PBW monomials
/// `x^a y^b z^c`, `0 ≤ a, b, c < p`, using `y x^a = x^a y - a x^{a-1} z`.
fn regular_heisenberg_module(p: u32) -> RestrictedModule {
    let l = h1(p, HeisenbergPmap::Unipotent);
    let f = l.field();
    let pu = p as usize;
    let idx = |a: usize, b: usize, c: usize| (a * pu + b) * pu + c;
    let m = pu * pu * pu;
    let mut rx = FieldMatrix::zeros(f, m, m);
    let mut ry = FieldMatrix::zeros(f, m, m);
    let mut rz = FieldMatrix::zeros(f, m, m);
    for a in 0..pu {
        for b in 0..pu {
            for c in 0..pu {
                let src = idx(a, b, c);
                if a + 1 < pu {
                    rx.set(idx(a + 1, b, c), src, 1);
                }
                if c + 1 < pu {
                    rz.set(idx(a, b, c + 1), src, 1);
                }
                if b + 1 < pu {
                    ry.set(idx(a, b + 1, c), src, 1);
                }
                if a > 0 && c + 1 < pu {
                    let coeff = f.neg(f.reduce(a as i64));
                    ry.set(idx(a - 1, b, c + 1), src, coeff);
                }
            }
        }
    }
    RestrictedModule::new(l, m, vec![rx, ry, rz]).unwrap()
}

#[test]
fn trivial_and_adjoint_modules() {
    let ab = zero_pmap_abelian(2, 3);
    let triv = RestrictedModule::trivial(&ab, 2);
    assert!(z1(&triv).is_full());
    assert!(b1(&triv).is_zero());
    assert!(invariants(&triv).is_full());
    for l in [
        h1(2, HeisenbergPmap::ToralCenter),
        h1(3, HeisenbergPmap::Unipotent),
        torus(2, 2).unwrap().algebra,
        catalog::final_remark_algebra(3).unwrap().algebra,
    ] {
        assert!(adjoint_consistent(&l));
        let adj = RestrictedModule::adjoint(&l);
        assert_eq!(invariants(&adj), structure::center(&l));
        assert_eq!(h1_dim(&adj), derivations::h1_adjoint_dim(&l));
    }
    assert_eq!(
        h1_dim(&RestrictedModule::adjoint(
            &catalog::final_remark_algebra(2).unwrap().algebra
        )),
        0
    );
}

#[test]
fn module_validation() {
    let l = zero_pmap_abelian(1, 2);
    let f = l.field();
    // e acting as the identity is not restricted for e^[2] = 0
    let id = FieldMatrix::identity(f, 1);
    assert_eq!(
        RestrictedModule::new(l.clone(), 1, vec![id]).unwrap_err(),
        Error::ModuleRestrictedness { i: 0 }
    );
    let h = h1(2, HeisenbergPmap::Unipotent);
    let z = FieldMatrix::zeros(f, 2, 2);
    let e = FieldMatrix::from_rows(f, 2, &[[0, 1], [0, 0]]);
    // x, y commuting in the representation but [x, y] = z acting nontrivially
    assert_eq!(
        RestrictedModule::new(h, 2, vec![z.clone(), z, e]).unwrap_err(),
        Error::Representation { i: 0, j: 1 }
    );
}

#[test]
fn cocycles_on_regular_module_of_line() {
    // u(F e) with e^[2] = 0 acting on itself; e·1 = e, e·e = 0
    let l = zero_pmap_abelian(1, 2);
    let f = l.field();
    let rho = FieldMatrix::from_rows(f, 2, &[[0, 0], [1, 0]]);
    let m = RestrictedModule::new(l.clone(), 2, vec![rho.clone()]).unwrap();
    // oracle: a cochain is its value v = D(e); cocycle iff 0 = D(e^[2]) = e·v
    let oracle = all_vectors(f, 2)
        .filter(|v| rho.mul_vec(v).iter().all(|&c| c == 0))
        .count();
    assert_eq!(1usize << z1(&m).dim(), oracle);
    assert_eq!(z1(&m).dim(), 1);
    assert_eq!(b1(&m).dim(), 1);
    assert_eq!(h1_dim(&m), 0);
    assert_eq!(is_free_over_unipotent(&m).unwrap(), (true, 1));
}

#[test]
fn freeness_criterion_against_pbw_modules() {
    for p in [2, 3] {
        let m = regular_heisenberg_module(p);
        assert_eq!(is_free_over_unipotent(&m).unwrap(), (true, 1));
        assert_eq!(invariants(&m).dim(), 1);
        assert_eq!(socle_unipotent(&m).unwrap().dim(), 1);
    }
    // two copies of the regular module of a 2-dim abelian algebra vs. a proper quotient
    let n = zero_pmap_abelian(2, 2);
    let f = n.field();
    // monomials 1, x, y, xy
    let rx = FieldMatrix::from_rows(
        f,
        4,
        &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]],
    );
    let ry = FieldMatrix::from_rows(
        f,
        4,
        &[[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]],
    );
    let regular = RestrictedModule::new(n.clone(), 4, vec![rx.clone(), ry.clone()]).unwrap();
    assert_eq!(is_free_over_unipotent(&regular).unwrap(), (true, 1));
    let block = |a: &FieldMatrix| {
        let mut out = FieldMatrix::zeros(f, 8, 8);
        for r in 0..4 {
            for c in 0..4 {
                out.set(r, c, a.get(r, c));
                out.set(r + 4, c + 4, a.get(r, c));
            }
        }
        out
    };
    let double = RestrictedModule::new(n.clone(), 8, vec![block(&rx), block(&ry)]).unwrap();
    assert_eq!(is_free_over_unipotent(&double).unwrap(), (true, 2));
    // u(N)/(xy): 1, x, y
    let qx = FieldMatrix::from_rows(f, 3, &[[0, 0, 0], [1, 0, 0], [0, 0, 0]]);
    let qy = FieldMatrix::from_rows(f, 3, &[[0, 0, 0], [0, 0, 0], [1, 0, 0]]);
    let quotient = RestrictedModule::new(n, 3, vec![qx, qy]).unwrap();
    assert_eq!(is_free_over_unipotent(&quotient).unwrap(), (false, 1));
}

#[test]
fn heisenberg_modules_over_quotients() {
    // L/Z acting on L for the toral-center variant: dim 3 < 4 = dim u(L/Z)
    let h = h1(2, HeisenbergPmap::ToralCenter);
    let z = structure::center(&h);
    let (q, _) = h.quotient(&z).unwrap();
    let m = RestrictedModule::induced(&h, &z, &q, &h.full_space()).unwrap();
    let (free, _) = is_free_over_unipotent(&m).unwrap();
    assert!(!free);
    assert_eq!(crate::linalg::checked_count(2, q.dim()), 4);

    let h = h1(2, HeisenbergPmap::Unipotent);
    let a = h.span([[0, 1, 0], [0, 0, 1]]);
    let (q, _) = h.quotient(&a).unwrap();
    let m = RestrictedModule::induced(&h, &a, &q, &a).unwrap();
    assert_eq!(invariants(&m).dim(), 1);
    assert_eq!(a.combination(invariants(&m).basis().row(0)), vec![0, 0, 1]);
    assert_eq!(is_free_over_unipotent(&m).unwrap(), (true, 1));
    // 3 = 1 + 1 * 2^1
    assert_eq!(h.dim(), q.dim() + 2usize.pow(q.dim() as u32));

    let b = catalog::two_dim_nonabelian(2).unwrap().algebra;
    let adj = RestrictedModule::adjoint(&b);
    assert_eq!(socle_unipotent(&adj).unwrap_err(), Error::NotNilpotent);
    let t = torus(1, 2).unwrap().algebra;
    assert_eq!(
        is_free_over_unipotent(&RestrictedModule::trivial(&t, 1)).unwrap_err(),
        Error::NotUnipotent
    );
}

#[test]
fn gamma_and_lifting() {
    let h = h1(3, HeisenbergPmap::Unipotent);
    let a = structure::maximal_abelian_p_ideal(&h).unwrap();
    assert!(gamma_nontrivial(&h, &a, &h.zero_space()).unwrap().is_none());
    let cochain = gamma_nontrivial(&h, &a, &a).unwrap().unwrap();
    let d = lift_cocycle(&h, &a, &a, &cochain).unwrap();
    assert!(d.is_square_zero() && d.is_restricted() && !d.is_inner());

    let zero = FieldMatrix::zeros(h.field(), 3, 1);
    assert!(lift_cocycle(&h, &a, &a, &zero).unwrap().matrix().is_zero());
    let mut outside = zero.clone();
    outside.set(0, 0, 1);
    assert!(matches!(
        lift_cocycle(&h, &a, &a, &outside),
        Err(Error::Precondition(_))
    ));

    for n in 1..=2 {
        let t = torus(n, 3).unwrap().algebra;
        let full = t.full_space();
        assert!(gamma_nontrivial(&t, &full, &full).unwrap().is_none());
        assert!(gamma_nontrivial(&t, &t.zero_space(), &t.zero_space())
            .unwrap()
            .is_none());
    }
    assert!(matches!(
        gamma_nontrivial(&h, &h.zero_space(), &a),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn p_complements() {
    let ab = zero_pmap_abelian(2, 2);
    assert_eq!(
        find_p_complement(&ab, &ab.full_space(), DEFAULT_BUDGET).unwrap(),
        Some(ab.full_space())
    );

    let h = h1(2, HeisenbergPmap::Unipotent);
    let a = h.span([[0, 1, 0], [0, 0, 1]]);
    let zen = structure::center(&h);
    // oracle: first subspace (canonical order, any dimension) with the three properties
    let oracle = Subspace::enumerate_all(h.field(), 3, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|s| {
            a.sum(s).is_full() && a.intersection(s) == zen && structure::is_p_subalgebra(&h, s)
        })
        .collect::<Vec<_>>();
    let found = find_p_complement(&h, &a, DEFAULT_BUDGET).unwrap().unwrap();
    assert!(oracle.contains(&found));
    assert_eq!(found, h.span([[1, 0, 0], [0, 0, 1]]));

    let bad = h.span([[0, 1, 0]]);
    assert!(find_p_complement(&h, &bad, DEFAULT_BUDGET).is_err());
}
