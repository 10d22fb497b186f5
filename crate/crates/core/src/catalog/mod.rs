//! Named example algebras and the enumerator of small nilpotent ones.

mod enumerate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use enumerate::{
    check_bounds, enumerate_nilpotent, enumerate_template, fingerprint, templates,
    EnumerationOptions, Fingerprint, Template,
};

use crate::algebra::RestrictedLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{solve, FieldMatrix, PrimeField};

/// An algebra together with the invariants it is expected to have.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: RestrictedLieAlgebra,
    pub expected: BTreeMap<String, Value>,
    pub provenance: String,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, algebra: RestrictedLieAlgebra, provenance: &str) -> Self {
        Self {
            name: name.into(),
            algebra,
            expected: BTreeMap::new(),
            provenance: provenance.to_string(),
        }
    }

    fn expect(mut self, key: &str, value: Value) -> Self {
        self.expected.insert(key.to_string(), value);
        self
    }

    pub fn manifest_record(&self, file: &str) -> ManifestRecord {
        ManifestRecord {
            name: self.name.clone(),
            file: file.to_string(),
            p: self.algebra.p(),
            dim: self.algebra.dim(),
            provenance: self.provenance.clone(),
            expected: self.expected.clone(),
        }
    }
}

/// One line of an exported catalog manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub name: String,
    pub file: String,
    pub p: u32,
    pub dim: usize,
    pub provenance: String,
    pub expected: BTreeMap<String, Value>,
}

/// Abelian algebra with `x_i^[p] = x_i`.
pub fn torus(n: usize, p: u32) -> Result<CatalogEntry> {
    let mut b = RestrictedLieAlgebra::builder(p, n);
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        b = b.pmap(i, &v);
    }
    let algebra = b.labels((0..n).map(|i| format!("t{i}"))).build()?;
    Ok(CatalogEntry::new(
        format!("torus-{n}"),
        algebra,
        "split torus: every element semisimple",
    )
    .expect("nilpotent", json!(true))
    .expect("torus_dim", json!(n))
    .expect("der_p_dim", json!(0))
    .expect("h1_adjoint_dim", json!(0))
    .expect("square_zero_outer", json!(false)))
}

/// `F e` with `e^[p] = 0`.
pub fn one_dim_nil(p: u32) -> Result<CatalogEntry> {
    let algebra = RestrictedLieAlgebra::builder(p, 1).labels(["e"]).build()?;
    Ok(CatalogEntry::new(
        "one-dim-nil",
        algebra,
        "one-dimensional algebra with zero p-map",
    )
    .expect("nilpotent", json!(true))
    .expect("torus_dim", json!(0))
    .expect("der_p_dim", json!(1))
    .expect("h1_adjoint_dim", json!(1))
    .expect("nilpotent_outer", json!(false))
    .expect("square_zero_outer", json!(false)))
}

/// Choice of p-map on the Heisenberg algebra `[x, y] = z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeisenbergPmap {
    /// Every basis p-power is zero.
    Unipotent,
    /// `z^[p] = z`, `x^[p] = y^[p] = 0`.
    ToralCenter,
    /// Explicit images of `x`, `y`, `z`; they must be central.
    Table(Vec<Vec<u32>>),
}

pub fn heisenberg(p: u32, variant: HeisenbergPmap) -> Result<CatalogEntry> {
    let (suffix, table) = match &variant {
        HeisenbergPmap::Unipotent => ("unipotent".to_string(), vec![vec![0; 3]; 3]),
        HeisenbergPmap::ToralCenter => (
            "toral-center".to_string(),
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
        ),
        HeisenbergPmap::Table(t) => {
            let digits: Vec<String> = t
                .iter()
                .map(|r| r.iter().map(u32::to_string).collect::<String>())
                .collect();
            (format!("table-{}", digits.join(".")), t.clone())
        }
    };
    if table.len() != 3 || table.iter().any(|r| r.len() != 3) {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: table.len(),
        });
    }
    let mut b = RestrictedLieAlgebra::builder(p, 3)
        .bracket(0, 1, &[0, 0, 1])
        .labels(["x", "y", "z"]);
    for (i, row) in table.iter().enumerate() {
        let row: Vec<i64> = row.iter().map(|&v| v as i64).collect();
        b = b.pmap(i, &row);
    }
    let algebra = b.build()?;
    let torus_dim = usize::from(algebra.pmap_image(2)[2] != 0);
    let mut entry = CatalogEntry::new(
        format!("heisenberg-{suffix}"),
        algebra,
        "three-dimensional Heisenberg algebra with central p-map",
    )
    .expect("nilpotent", json!(true))
    .expect("center_dim", json!(1))
    .expect("torus_dim", json!(torus_dim))
    .expect("h1_adjoint_dim_at_least", json!(1));
    let exceptional = p == 2;
    entry = entry
        .expect("square_zero_outer", json!(!exceptional))
        .expect("nilpotent_outer", json!(!exceptional));
    Ok(entry)
}

/// `[e, f] = f` with `e^[p] = e`, `f^[p] = 0`.
pub fn two_dim_nonabelian(p: u32) -> Result<CatalogEntry> {
    let algebra = RestrictedLieAlgebra::builder(p, 2)
        .bracket(0, 1, &[0, 1])
        .pmap(0, &[1, 0])
        .labels(["e", "f"])
        .build()?;
    Ok(CatalogEntry::new(
        "two-dim-nonabelian",
        algebra,
        "two-dimensional non-abelian algebra",
    )
    .expect("nilpotent", json!(false))
    .expect("center_dim", json!(0)))
}

/// The two-dimensional non-abelian algebra times a one-dimensional torus:
/// solvable, non-nilpotent, non-zero center, and no outer restricted
/// derivations.
pub fn final_remark_algebra(p: u32) -> Result<CatalogEntry> {
    let b = two_dim_nonabelian(p)?.algebra;
    let t = torus(1, p)?.algebra;
    let algebra = b.direct_product(&t)?;
    Ok(CatalogEntry::new(
        "nonabelian2-x-torus1",
        algebra,
        "solvable non-nilpotent algebra with non-zero center",
    )
    .expect("nilpotent", json!(false))
    .expect("center_dim", json!(1))
    .expect("h1_adjoint_dim", json!(0)))
}

/// Restricted subalgebra of `gl_m` spanned by the given matrices, with the
/// commutator bracket and the matrix p-th power as p-map. The span must be
/// closed under both operations and the matrices linearly independent.
pub fn matrix_algebra(p: u32, basis: &[FieldMatrix]) -> Result<RestrictedLieAlgebra> {
    let field = PrimeField::new(p)?;
    let n = basis.len();
    let flat: Vec<Vec<u32>> = basis.iter().map(|m| m.as_flat().to_vec()).collect();
    let len = flat.first().map_or(0, Vec::len);
    let system = FieldMatrix::from_columns(field, len, &flat);
    if system.rank() != n {
        return Err(Error::Precondition(
            "matrices are linearly dependent".into(),
        ));
    }
    let coords = |m: &FieldMatrix| -> Result<Vec<u32>> {
        solve(&system, m.as_flat()).ok_or_else(|| Error::Precondition("span is not closed".into()))
    };
    let mut sc = vec![0u32; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let c = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
            sc[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&coords(&c)?);
        }
    }
    let pmap = basis
        .iter()
        .map(|m| coords(&m.pow(p as u64)))
        .collect::<Result<Vec<_>>>()?;
    RestrictedLieAlgebra::from_tables(p, n, sc, pmap)
}

fn matrix_unit(field: PrimeField, m: usize, r: usize, c: usize) -> FieldMatrix {
    let mut e = FieldMatrix::zeros(field, m, m);
    e.set(r, c, 1);
    e
}

/// Strictly upper triangular `m × m` matrices, basis `E_rc` (`r < c`) in
/// row-major order.
pub fn strictly_upper_triangular(m: usize, p: u32) -> Result<CatalogEntry> {
    let field = PrimeField::new(p)?;
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for r in 0..m {
        for c in r + 1..m {
            basis.push(matrix_unit(field, m, r, c));
            labels.push(format!("E{r}{c}"));
        }
    }
    let algebra = matrix_algebra(p, &basis)?.with_labels(labels)?;
    Ok(CatalogEntry::new(
        format!("upper-triangular-{m}"),
        algebra,
        "strictly upper triangular matrices",
    )
    .expect("nilpotent", json!(true)))
}

/// All `m × m` matrices.
pub fn general_linear(m: usize, p: u32) -> Result<CatalogEntry> {
    let field = PrimeField::new(p)?;
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for r in 0..m {
        for c in 0..m {
            basis.push(matrix_unit(field, m, r, c));
            labels.push(format!("E{r}{c}"));
        }
    }
    let algebra = matrix_algebra(p, &basis)?.with_labels(labels)?;
    Ok(
        CatalogEntry::new(format!("gl-{m}"), algebra, "general linear algebra")
            .expect("nilpotent", json!(false)),
    )
}

/// Every named algebra available over GF(p).
pub fn named(p: u32) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(torus(n, p)?);
    }
    out.push(one_dim_nil(p)?);
    out.push(heisenberg(p, HeisenbergPmap::Unipotent)?);
    out.push(heisenberg(p, HeisenbergPmap::ToralCenter)?);
    out.push(two_dim_nonabelian(p)?);
    out.push(final_remark_algebra(p)?);
    out.push(strictly_upper_triangular(3, p)?);
    out.push(strictly_upper_triangular(4, p)?);
    out.push(general_linear(2, p)?);
    Ok(out)
}

/// Looks up a named algebra over GF(p).
pub fn by_name(name: &str, p: u32) -> Result<CatalogEntry> {
    named(p)?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Unknown(format!("catalog entry `{name}`")))
}
