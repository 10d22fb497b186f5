use proptest::prelude::*;

use super::*;
use crate::catalog::{self, heisenberg, HeisenbergPmap};
use crate::linalg::all_vectors;

fn h1(p: u32, variant: HeisenbergPmap) -> RestrictedLieAlgebra {
    heisenberg(p, variant).unwrap().algebra
}

#[test]
fn construction_examples() {
    let t = RestrictedLieAlgebra::builder(2, 1)
        .pmap(0, &[1])
        .build()
        .unwrap();
    assert_eq!(t.dim(), 1);
    let h = RestrictedLieAlgebra::builder(2, 3)
        .bracket(0, 1, &[0, 0, 1])
        .build()
        .unwrap();
    assert_eq!(h.bracket(&[1, 0, 0], &[0, 1, 0]), vec![0, 0, 1]);
    let bad = RestrictedLieAlgebra::builder(2, 3)
        .bracket(0, 1, &[0, 0, 1])
        .pmap(0, &[1, 0, 0])
        .build();
    assert_eq!(bad.unwrap_err(), Error::PCompatibility { i: 0 });
}

#[test]
fn validation_errors_are_specific() {
    let mut sc = vec![0u32; 8];
    sc[3] = 1; // index (0*2 + 1)*2 + 1: [x0, x1] = x1 without the antisymmetric partner
    assert_eq!(
        RestrictedLieAlgebra::from_tables(3, 2, sc, vec![vec![0, 0]; 2]).unwrap_err(),
        Error::Antisymmetry { i: 0, j: 1 }
    );
    // [x0,x1]=x1, [x0,x2]=x2, [x1,x2]=x0 violates Jacobi
    let bad = RestrictedLieAlgebra::builder(5, 3)
        .bracket(0, 1, &[0, 1, 0])
        .bracket(0, 2, &[0, 0, 1])
        .bracket(1, 2, &[1, 0, 0])
        .build();
    assert_eq!(bad.unwrap_err(), Error::Jacobi { i: 0, j: 1, k: 2 });
    assert_eq!(
        RestrictedLieAlgebra::builder(4, 1).build().unwrap_err(),
        Error::UnsupportedModulus(4)
    );
}

#[test]
fn brackets_and_ad() {
    let h = h1(2, HeisenbergPmap::Unipotent);
    let x = h.basis_element(0);
    assert_eq!(h.bracket(&x, &x), vec![0, 0, 0]);
    assert!(h.ad(&[0, 0, 1]).is_zero());
    let h3 = h1(3, HeisenbergPmap::Unipotent);
    assert_eq!(h3.bracket(&[0, 1, 0], &[1, 0, 0]), vec![0, 0, 2]);
}

#[test]
fn ppow_examples() {
    let h = h1(2, HeisenbergPmap::Unipotent);
    for i in 0..3 {
        assert_eq!(h.ppow(&h.basis_element(i)), h.pmap_image(i));
    }
    // (x+y)^[2] = x^[2] + y^[2] + [x,y]
    assert_eq!(h.ppow(&[1, 1, 0]), vec![0, 0, 1]);
    assert_eq!(h.ad(&h.ppow(&[1, 1, 0])), h.ad(&[1, 1, 0]).pow(2));
    let t = catalog::torus(3, 3).unwrap().algebra;
    assert_eq!(t.ppow(&[1, 2, 0]), vec![1, 2, 0]);
}

#[test]
fn ppow_matches_brute_force_in_gl2() {
    // independent oracle: the restricted structure of gl_n is the matrix p-th power
    for p in [2u32, 3, 5] {
        let g = catalog::general_linear(2, p).unwrap().algebra;
        for a in all_vectors(g.field(), 4) {
            let m = FieldMatrix::from_flat(g.field(), 2, 2, a.clone());
            assert_eq!(g.ppow(&a), m.pow(p as u64).as_flat());
        }
    }
}

#[test]
fn quotients() {
    let h = h1(2, HeisenbergPmap::ToralCenter);
    let (same, proj) = h.quotient(&h.zero_space()).unwrap();
    assert_eq!(same.bracket_table(), h.bracket_table());
    assert_eq!(same.pmap_table(), h.pmap_table());
    assert_eq!(proj, FieldMatrix::identity(h.field(), 3));

    let hu = h1(2, HeisenbergPmap::Unipotent);
    let (q, _) = hu.quotient(&crate::structure::center(&hu)).unwrap();
    assert_eq!(q.dim(), 2);
    assert!(q.is_abelian());
    for i in 0..2 {
        assert_eq!(q.pmap_image(i), &[0, 0]);
    }
    let (zero, _) = hu.quotient(&hu.full_space()).unwrap();
    assert_eq!(zero.dim(), 0);
    assert_eq!(
        hu.quotient(&hu.span([[1, 0, 0]])).unwrap_err(),
        Error::NotPIdeal
    );
}

#[test]
fn products() {
    let t1 = catalog::torus(1, 3).unwrap().algebra;
    let t2 = t1.direct_product(&t1).unwrap();
    assert_eq!(
        t2.pmap_table(),
        catalog::torus(2, 3).unwrap().algebra.pmap_table()
    );
    let z = RestrictedLieAlgebra::zero(3).unwrap();
    let h = h1(3, HeisenbergPmap::Unipotent);
    let hz = h.direct_product(&z).unwrap();
    assert_eq!(hz.bracket_table(), h.bracket_table());
    let r = catalog::two_dim_nonabelian(2)
        .unwrap()
        .algebra
        .direct_product(&catalog::torus(1, 2).unwrap().algebra)
        .unwrap();
    assert_eq!(r.dim(), 3);
    assert_eq!(
        t1.direct_product(&catalog::torus(1, 2).unwrap().algebra)
            .unwrap_err(),
        Error::ModulusMismatch { left: 3, right: 2 }
    );
}

#[test]
fn twisting() {
    let h = h1(2, HeisenbergPmap::ToralCenter);
    assert_eq!(h.twist_pmap(&h.zero_space()).unwrap(), h);
    let a = h.span([[0, 1, 0], [0, 0, 1]]);
    let tw = h.twist_pmap(&a).unwrap();
    assert_eq!(tw.pmap_image(1), &[0, 0, 0]);
    assert_eq!(tw.pmap_image(2), &[0, 0, 0]);
    assert_eq!(tw.pmap_image(0), h.pmap_image(0));

    let t = catalog::torus(2, 3).unwrap().algebra;
    let tw = t.twist_pmap(&t.full_space()).unwrap();
    assert!(tw.pmap_table().iter().flatten().all(|&v| v == 0));
    assert_eq!(
        h.twist_pmap(&h.span([[1, 0, 0], [0, 1, 0]])).unwrap_err(),
        Error::NotAbelian
    );
}

#[test]
fn json_round_trip_and_errors() {
    let h = h1(2, HeisenbergPmap::ToralCenter);
    let text = h.to_json();
    assert_eq!(RestrictedLieAlgebra::from_json(&text).unwrap(), h);

    let reduced = r#"{"p": 3, "dim": 3, "brackets": [{"i": 0, "j": 1, "v": [0, 0, 4]}], "pmap": [[0,0,0],[0,0,-3],[0,0,0]]}"#;
    let l = RestrictedLieAlgebra::from_json(reduced).unwrap();
    assert_eq!(l.structure_constants(0, 1), &[0, 0, 1]);

    for bad in [
        r#"{"p": 2, "dim": 1, "pmap": [[0]], "extra": 1}"#,
        r#"{"p": 2, "dim": 2, "pmap": [[0,0]]}"#,
        r#"{"p": 2, "dim": 2, "brackets": [{"i": 1, "j": 0, "v": [1, 0]}], "pmap": [[0,0],[0,0]]}"#,
        r#"{"p": 2, "dim": 2, "brackets": [{"i": 0, "j": 1, "v": [1]}], "pmap": [[0,0],[0,0]]}"#,
        r#"{"p": 2, "dim": 1, "labels": ["a", "b"], "pmap": [[0]]}"#,
        r#"{"p": 2, "dim": 1, "pmap": [[0]"#,
    ] {
        assert!(
            matches!(
                RestrictedLieAlgebra::from_json(bad),
                Err(Error::Malformed(_))
            ),
            "{bad}"
        );
    }
    let jacobi = r#"{"p": 5, "dim": 3, "brackets": [{"i":0,"j":1,"v":[0,1,0]},{"i":0,"j":2,"v":[0,0,1]},{"i":1,"j":2,"v":[1,0,0]}], "pmap": [[0,0,0],[0,0,0],[0,0,0]]}"#;
    assert!(RestrictedLieAlgebra::from_json(jacobi)
        .unwrap_err()
        .is_validation());
}

#[test]
fn dimension_zero_is_legal() {
    let z = RestrictedLieAlgebra::zero(2).unwrap();
    assert_eq!(z.ppow(&[]), Vec::<u32>::new());
    assert!(z.is_abelian());
    assert_eq!(RestrictedLieAlgebra::from_json(&z.to_json()).unwrap(), z);
}

fn catalog_algebras() -> Vec<RestrictedLieAlgebra> {
    [2u32, 3]
        .iter()
        .flat_map(|&p| catalog::named(p).unwrap())
        .map(|e| e.algebra)
        .collect()
}

proptest! {
    #[test]
    fn ad_of_ppow_is_ad_power(idx in 0usize..22, seed in proptest::collection::vec(0u32..251, 9)) {
        let algebras = catalog_algebras();
        let l = &algebras[idx % algebras.len()];
        let a: Vec<u32> = seed.iter().take(l.dim()).map(|&v| v % l.p()).chain(std::iter::repeat(0)).take(l.dim()).collect();
        prop_assert_eq!(l.ad(&l.ppow(&a)), l.ad(&a).pow(l.p() as u64));
    }

    #[test]
    fn bracket_is_antisymmetric(idx in 0usize..22, s in proptest::collection::vec(0u32..251, 18)) {
        let algebras = catalog_algebras();
        let l = &algebras[idx % algebras.len()];
        let n = l.dim();
        let a: Vec<u32> = (0..n).map(|i| s[i % 18] % l.p()).collect();
        let b: Vec<u32> = (0..n).map(|i| s[(i + 9) % 18] % l.p()).collect();
        let ab = l.ad(&a).mul_vec(&b);
        let ba = l.ad(&b).mul_vec(&a);
        prop_assert_eq!(ab, ba.iter().map(|&v| l.field().neg(v)).collect::<Vec<_>>());
    }
}
