//! Exhaustive enumeration of restricted structures on the nilpotent Lie
//! algebras of dimension at most four.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::CatalogEntry;
use crate::algebra::RestrictedLieAlgebra;
use crate::derivations::{self, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, checked_count, kernel, solve, FieldMatrix, PrimeField, Subspace};
use crate::structure;

/// A nilpotent bracket table given by `[x_i, x_j] = x_k` entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Template {
    pub name: &'static str,
    pub dim: usize,
    pub brackets: &'static [(usize, usize, usize)],
}

const TEMPLATES: &[Template] = &[
    Template {
        name: "abelian1",
        dim: 1,
        brackets: &[],
    },
    Template {
        name: "abelian2",
        dim: 2,
        brackets: &[],
    },
    Template {
        name: "abelian3",
        dim: 3,
        brackets: &[],
    },
    Template {
        name: "h1",
        dim: 3,
        brackets: &[(0, 1, 2)],
    },
    Template {
        name: "abelian4",
        dim: 4,
        brackets: &[],
    },
    Template {
        name: "h1+f",
        dim: 4,
        brackets: &[(0, 1, 2)],
    },
    Template {
        name: "n4",
        dim: 4,
        brackets: &[(0, 1, 2), (0, 2, 3)],
    },
];

/// Every nilpotent Lie algebra of the given dimension up to isomorphism
/// (valid over any field for `dim ≤ 4`).
pub fn templates(dim: usize) -> Vec<Template> {
    TEMPLATES.iter().copied().filter(|t| t.dim == dim).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Keep one representative per isomorphism class of restricted algebras.
    pub dedup: bool,
    /// Cap on the number of p-map tables (and of basis changes when deduplicating).
    pub budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            dedup: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn template_table(p: u32, t: &Template) -> Vec<u32> {
    let n = t.dim;
    let mut sc = vec![0u32; n * n * n];
    for &(i, j, k) in t.brackets {
        sc[(i * n + j) * n + k] = 1;
        sc[(j * n + i) * n + k] = p - 1;
    }
    sc
}

fn ad_matrices(field: PrimeField, n: usize, sc: &[u32]) -> Vec<FieldMatrix> {
    (0..n)
        .map(|i| {
            let mut m = FieldMatrix::zeros(field, n, n);
            for j in 0..n {
                for k in 0..n {
                    m.set(k, j, sc[(i * n + j) * n + k]);
                }
            }
            m
        })
        .collect()
}

/// All admissible images of `x_i` under a p-map: the solutions `v` of
/// `ad(v) = (ad x_i)^p`, an affine space over the center.
fn pmap_candidates(field: PrimeField, ads: &[FieldMatrix]) -> Option<Vec<Vec<Vec<u32>>>> {
    let n = ads.len();
    let cols: Vec<Vec<u32>> = ads.iter().map(|m| m.as_flat().to_vec()).collect();
    let system = FieldMatrix::from_columns(field, n * n, &cols);
    let center: Subspace = kernel(&system);
    let mut out = Vec::with_capacity(n);
    for ad in ads {
        let target = ad.pow(field.p() as u64);
        let v0 = solve(&system, target.as_flat())?;
        let fiber = all_vectors(field, center.dim())
            .map(|c| crate::linalg::vec_add(field, &v0, &center.combination(&c)))
            .collect();
        out.push(fiber);
    }
    Some(out)
}

fn entry_name(template: &Template, p: u32, pmap: &[Vec<u32>]) -> String {
    let rows: Vec<String> = pmap
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<String>())
        .collect();
    format!("{}-p{p}-{}", template.name, rows.join("."))
}

/// Every restricted structure on one bracket template, sorted by p-map table.
pub fn enumerate_template(p: u32, template: &Template, budget: u64) -> Result<Vec<CatalogEntry>> {
    let field = PrimeField::new(p)?;
    let n = template.dim;
    let sc = template_table(p, template);
    let ads = ad_matrices(field, n, &sc);
    let Some(candidates) = pmap_candidates(field, &ads) else {
        return Ok(Vec::new());
    };
    let total = candidates
        .iter()
        .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut index = vec![0usize; n];
    loop {
        let pmap: Vec<Vec<u32>> = (0..n).map(|i| candidates[i][index[i]].clone()).collect();
        let name = entry_name(template, p, &pmap);
        let algebra = RestrictedLieAlgebra::from_tables(p, n, sc.clone(), pmap)?;
        assert!(
            structure::is_nilpotent(&algebra),
            "template {} is not nilpotent",
            template.name
        );
        let mut entry = CatalogEntry::new(
            name,
            algebra,
            &format!("p-map on template {}", template.name),
        );
        entry.expected.insert("nilpotent".into(), json!(true));
        out.push(entry);
        // mixed-radix increment, first generator fastest
        let mut k = 0;
        while k < n {
            index[k] += 1;
            if index[k] < candidates[k].len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort_by(|a, b| a.algebra.pmap_table().cmp(b.algebra.pmap_table()));
    Ok(out)
}

/// Rejects `(p, dim)` outside what [`enumerate_nilpotent`] supports with these options.
pub fn check_bounds(p: u32, dim: usize, opts: EnumerationOptions) -> Result<()> {
    if !(p == 2 || p == 3) || !(1..=4).contains(&dim) {
        return Err(Error::BoundsExceeded(format!(
            "enumeration supports p in {{2, 3}} and dimension 1..=4, got p={p}, dim={dim}"
        )));
    }
    if opts.dedup {
        check_dedup_bounds(p, dim)?;
    }
    Ok(())
}

/// Every restricted structure on every nilpotent Lie algebra of dimension
/// `dim` over GF(p), for `p ∈ {2, 3}` and `1 ≤ dim ≤ 4`.
pub fn enumerate_nilpotent(
    p: u32,
    dim: usize,
    opts: EnumerationOptions,
) -> Result<Vec<CatalogEntry>> {
    check_bounds(p, dim, opts)?;
    let mut out = Vec::new();
    for t in templates(dim) {
        out.extend(enumerate_template(p, &t, opts.budget)?);
    }
    if opts.dedup {
        out = dedup(p, dim, out, opts.budget)?;
    }
    Ok(out)
}

/// Isomorphism invariants used to sanity-check deduplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub torus_dim: usize,
    pub h1_adjoint_dim: usize,
    pub derived_series: Vec<usize>,
}

pub fn fingerprint(l: &RestrictedLieAlgebra) -> Fingerprint {
    Fingerprint {
        dim: l.dim(),
        torus_dim: structure::maximal_torus(l).map_or(0, |t| t.dim()),
        h1_adjoint_dim: derivations::h1_adjoint_dim(l),
        derived_series: structure::derived_series(l)
            .iter()
            .map(Subspace::dim)
            .collect(),
    }
}

fn general_linear_group(
    field: PrimeField,
    n: usize,
    budget: u64,
) -> Result<Vec<(FieldMatrix, FieldMatrix)>> {
    if checked_count(field.p(), n * n) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(all_vectors(field, n * n)
        .filter_map(|v| {
            let g = FieldMatrix::from_flat(field, n, n, v);
            g.inverse().map(|inv| (g, inv))
        })
        .collect())
}

fn table_key(l: &RestrictedLieAlgebra) -> Vec<u32> {
    let mut key = l.bracket_table().to_vec();
    for row in l.pmap_table() {
        key.extend_from_slice(row);
    }
    key
}

/// Tables of `l` rewritten in the basis given by the columns of `g`.
fn transformed_key(l: &RestrictedLieAlgebra, g: &FieldMatrix, g_inv: &FieldMatrix) -> Vec<u32> {
    let n = l.dim();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| g.column(j)).collect();
    let mut key = Vec::with_capacity(n * n * n + n * n);
    for a in 0..n {
        for b in 0..n {
            key.extend(g_inv.mul_vec(&l.bracket(&cols[a], &cols[b])));
        }
    }
    for c in &cols {
        key.extend(g_inv.mul_vec(&l.ppow(c)));
    }
    key
}

fn check_dedup_bounds(p: u32, n: usize) -> Result<()> {
    if (p == 2 && n <= 4) || (p == 3 && n <= 3) {
        Ok(())
    } else {
        Err(Error::BoundsExceeded(format!(
            "isomorphism deduplication is limited to dim <= 4 over GF(2) and dim <= 3 over GF(3), got p={p}, dim={n}"
        )))
    }
}

fn dedup(p: u32, n: usize, entries: Vec<CatalogEntry>, budget: u64) -> Result<Vec<CatalogEntry>> {
    check_dedup_bounds(p, n)?;
    let field = PrimeField::new(p)?;
    let group = general_linear_group(field, n, budget)?;
    let index: HashMap<Vec<u32>, usize> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (table_key(&e.algebra), i))
        .collect();
    let mut seen = vec![false; entries.len()];
    let mut keep = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        if seen[i] {
            continue;
        }
        keep.push(i);
        for (g, g_inv) in &group {
            if let Some(&j) = index.get(&transformed_key(&entry.algebra, g, g_inv)) {
                seen[j] = true;
            }
        }
    }
    let mut entries: Vec<Option<CatalogEntry>> = entries.into_iter().map(Some).collect();
    Ok(keep.into_iter().filter_map(|i| entries[i].take()).collect())
}
