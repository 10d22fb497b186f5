use proptest::prelude::*;

use super::*;
use crate::catalog::{self, heisenberg, one_dim_nil, torus, HeisenbergPmap};
use crate::linalg::PrimeField;

fn h1(p: u32, variant: HeisenbergPmap) -> RestrictedLieAlgebra {
    heisenberg(p, variant).unwrap().algebra
}

fn n4(p: u32) -> RestrictedLieAlgebra {
    RestrictedLieAlgebra::builder(p, 4)
        .bracket(0, 1, &[0, 0, 1, 0])
        .bracket(0, 2, &[0, 0, 0, 1])
        .build()
        .unwrap()
}

/// Brute-force count of linear maps satisfying the Leibniz rule on every pair
/// of elements and, optionally, restrictedness on every element.
fn brute_force_count(l: &RestrictedLieAlgebra, restricted: bool) -> usize {
    let f = l.field();
    let n = l.dim();
    let elements: Vec<Vec<u32>> = all_vectors(f, n).collect();
    all_vectors(f, n * n)
        .filter(|flat| {
            let m = FieldMatrix::from_flat(f, n, n, flat.clone());
            let leibniz = elements.iter().all(|a| {
                elements.iter().all(|b| {
                    m.mul_vec(&l.bracket(a, b))
                        == vec_add(
                            f,
                            &l.bracket(&m.mul_vec(a), b),
                            &l.bracket(a, &m.mul_vec(b)),
                        )
                })
            });
            leibniz && (!restricted || elements.iter().all(|a| is_restricted_at(l, &m, a)))
        })
        .count()
}

#[test]
fn derivation_spaces_small_cases() {
    let e = one_dim_nil(2).unwrap().algebra;
    assert_eq!(der(&e).dim(), 1);
    assert_eq!(der_p(&e).dim(), 1);
    let ab = torus(3, 3)
        .unwrap()
        .algebra
        .with_pmap(vec![vec![0; 3]; 3])
        .unwrap();
    assert_eq!(der(&ab).dim(), 9);
    for n in 1..=3 {
        for p in [2, 3, 5] {
            assert_eq!(der_p(&torus(n, p).unwrap().algebra).dim(), 0);
        }
    }
}

#[test]
fn heisenberg_derivations_match_brute_force() {
    for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
        let h = h1(2, variant);
        assert_eq!(1usize << der(&h).dim(), brute_force_count(&h, false));
        assert_eq!(der(&h).dim(), 6);
        assert_eq!(1usize << der_p(&h).dim(), brute_force_count(&h, true));
    }
    // values fixed by the brute-force oracle above
    assert_eq!(der_p(&h1(2, HeisenbergPmap::Unipotent)).dim(), 4);
    assert_eq!(der_p(&h1(2, HeisenbergPmap::ToralCenter)).dim(), 3);
}

#[test]
fn inner_derivations() {
    let ab = torus(2, 2).unwrap().algebra;
    assert!(inner(&ab).is_zero());
    let h = h1(2, HeisenbergPmap::Unipotent);
    assert_eq!(inner(&h).dim(), 2);
    let d = Derivation::new(&h, h.ad(&[1, 0, 0]));
    let w = d.inner_witness().unwrap().to_vec();
    assert!(structure::center(&h).contains(&vec_sub(h.field(), &w, &[1, 0, 0])));
    for l in [h.clone(), h1(3, HeisenbergPmap::ToralCenter), n4(3)] {
        let dp = der_p(&l);
        assert!(dp.contains_subspace(&inner(&l)));
        assert!(der(&l).contains_subspace(&dp));
    }
}

#[test]
fn outer_counts() {
    assert_eq!(h1_adjoint_dim(&torus(2, 3).unwrap().algebra), 0);
    assert_eq!(
        h1_adjoint_dim(&catalog::final_remark_algebra(2).unwrap().algebra),
        0
    );
    assert_eq!(h1_adjoint_dim(&h1(2, HeisenbergPmap::Unipotent)), 2);
    assert_eq!(h1_adjoint_dim(&h1(2, HeisenbergPmap::ToralCenter)), 1);
    assert_eq!(h1_adjoint_dim(&one_dim_nil(3).unwrap().algebra), 1);
}

#[test]
fn centralizer_criterion() {
    let h = h1(2, HeisenbergPmap::Unipotent);
    let yz = h.span([[0, 1, 0], [0, 0, 1]]);
    let zero = Derivation::new(&h, FieldMatrix::zeros(h.field(), 3, 3));
    assert!(!outer_by_centralizer_criterion(&h, &yz, &zero).unwrap());

    // D(x) = z, D(I) = 0 equals ad(y) over GF(2): inner, and the criterion stays silent
    let d = construct_case_derivation(&h, &yz, &[1, 0, 0], &[0, 0, 1]).unwrap();
    assert!(d.is_restricted() && d.is_square_zero());
    assert!(d.is_inner());
    assert!(!outer_by_centralizer_criterion(&h, &yz, &d).unwrap());

    // every inner derivation meeting the hypotheses is reported inconclusive
    for a in all_vectors(h.field(), 3) {
        let d = Derivation::new(&h, h.ad(&a));
        for ideal in structure::codim1_max_p_ideals(&h).unwrap() {
            let cent = structure::centralizer(&h, &ideal);
            if d.kernel().contains_subspace(&ideal) && cent.contains_subspace(&d.image()) {
                assert!(!outer_by_centralizer_criterion(&h, &ideal, &d).unwrap());
            }
        }
    }

    // filiform algebra over GF(3): I = span(x1, x3, x4) has centralizer Zen(L) = span(x4)
    let l = n4(3);
    let ideal = l.span([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    assert_eq!(structure::centralizer(&l, &ideal), structure::center(&l));
    let d = construct_case_derivation(&l, &ideal, &[0, 1, 0, 0], &[0, 0, 0, 1]).unwrap();
    assert!(outer_by_centralizer_criterion(&l, &ideal, &d).unwrap());
    assert!(!d.is_inner());

    let not_in_kernel = Derivation::new(&h, FieldMatrix::identity(h.field(), 3));
    assert!(matches!(
        outer_by_centralizer_criterion(&h, &yz, &not_in_kernel),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn case_construction_guards() {
    let h = h1(2, HeisenbergPmap::Unipotent);
    let yz = h.span([[0, 1, 0], [0, 0, 1]]);
    // y centralizes I, but D(x) = y breaks D(x^[2]) = ad(x)^{p-1} D(x)
    assert!(matches!(
        construct_case_derivation(&h, &yz, &[1, 0, 0], &[0, 1, 0]),
        Err(Error::Certification(_))
    ));
    assert!(matches!(
        construct_case_derivation(&h, &yz, &[0, 1, 0], &[0, 0, 1]),
        Err(Error::Precondition(_))
    ));
    let ab = torus(2, 2)
        .unwrap()
        .algebra
        .with_pmap(vec![vec![0, 0]; 2])
        .unwrap();
    let line = ab.span([[0, 1]]);
    let d = construct_case_derivation(&ab, &line, &[1, 0], &[0, 1]).unwrap();
    assert!(d.is_square_zero() && !d.is_inner());
}

#[test]
fn square_zero_search() {
    for n in 1..=3 {
        assert!(
            find_square_zero_outer(&torus(n, 2).unwrap().algebra, DEFAULT_BUDGET)
                .unwrap()
                .is_none()
        );
    }
    assert!(
        find_square_zero_outer(&one_dim_nil(3).unwrap().algebra, DEFAULT_BUDGET)
            .unwrap()
            .is_none()
    );
    for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
        let h = h1(2, variant);
        assert!(find_square_zero_outer(&h, DEFAULT_BUDGET)
            .unwrap()
            .is_none());
        assert_eq!(
            find_square_zero_outer(&h, 3).unwrap_err(),
            Error::BudgetExceeded { budget: 3 }
        );
    }
    for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
        let h = h1(3, variant);
        let w = find_square_zero_outer(&h, DEFAULT_BUDGET).unwrap().unwrap();
        certify_square_zero_outer(&h, w.derivation.matrix()).unwrap();
    }
    let l = n4(3);
    let w = find_square_zero_outer(&l, DEFAULT_BUDGET).unwrap().unwrap();
    certify_square_zero_outer(&l, w.derivation.matrix()).unwrap();
    let b = catalog::two_dim_nonabelian(2).unwrap().algebra;
    assert_eq!(
        find_square_zero_outer(&b, DEFAULT_BUDGET).unwrap_err(),
        Error::NotNilpotent
    );
}

#[test]
fn nilpotent_outer_search() {
    for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
        assert!(!nilpotent_outer_exists(&h1(2, variant), DEFAULT_BUDGET).unwrap());
    }
    assert!(!nilpotent_outer_exists(&one_dim_nil(2).unwrap().algebra, DEFAULT_BUDGET).unwrap());
    let h3 = h1(3, HeisenbergPmap::Unipotent);
    let d = find_nilpotent_outer(&h3, DEFAULT_BUDGET).unwrap().unwrap();
    assert!(d.is_nilpotent() && d.is_restricted() && !d.is_inner());
}

#[test]
fn explicit_char_two_outer() {
    for variant in [HeisenbergPmap::Unipotent, HeisenbergPmap::ToralCenter] {
        let h = h1(2, variant);
        let d = explicit_h1_char2_outer(&h).unwrap();
        assert_eq!(
            d.matrix().to_rows(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]
        );
        assert!(!d.is_nilpotent());
        assert_eq!(d.matrix().mul(d.matrix()), *d.matrix());
    }
    assert!(matches!(
        explicit_h1_char2_outer(&h1(3, HeisenbergPmap::Unipotent)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn exhaustive_der_p_listing() {
    let h = h1(2, HeisenbergPmap::ToralCenter);
    assert_eq!(enumerate_der_p(&h, 1 << 10).unwrap().len(), 8);
    assert!(enumerate_der_p(&h, 4).is_err());
}

fn enumerated() -> Vec<RestrictedLieAlgebra> {
    let opts = catalog::EnumerationOptions::default();
    [(2u32, 3usize), (3, 2)]
        .iter()
        .flat_map(|&(p, d)| catalog::enumerate_nilpotent(p, d, opts).unwrap())
        .map(|e| e.algebra)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_restrictedness_extends_to_all_elements(idx in 0usize..1000, coeffs in proptest::collection::vec(0u32..3, 16), a in proptest::collection::vec(0u32..3, 4)) {
        let all = enumerated();
        let l = &all[idx % all.len()];
        let f: PrimeField = l.field();
        let dp = der_p(l);
        let c: Vec<u32> = coeffs.iter().take(dp.dim()).map(|&v| v % f.p()).collect();
        let c: Vec<u32> = c.into_iter().chain(std::iter::repeat(0)).take(dp.dim()).collect();
        let m = unflatten(l, &dp.combination(&c));
        let x: Vec<u32> = a.iter().take(l.dim()).map(|&v| v % f.p()).collect();
        prop_assert!(is_restricted_at(l, &m, &x));
    }
}
