use std::fmt;

use super::field::PrimeField;
use super::subspace::Subspace;

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of residues; every row must have `cols` entries.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&v| v % field.p()));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns<C: AsRef<[u32]>>(field: PrimeField, rows: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v % field.p();
            }
        }
        m
    }

    /// Interprets `data` as a row-major `rows x cols` matrix.
    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|v| v % field.p()).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> impl DoubleEndedIterator<Item = &[u32]> + ExactSizeIterator {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_vectors().map(<[u32]>::to_vec).collect()
    }

    /// Row-major entries.
    pub fn as_flat(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.field, rhs.field);
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot += a * rhs.data[k * rhs.cols + c] as u64;
                }
            }
            for (c, v) in acc.iter().enumerate() {
                out.data[r * rhs.cols + c] = (v % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|&a| f.mul(a, s % f.p())).collect(),
            ..self.clone()
        }
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(PrimeField, u32, u32) -> u32) -> Self {
        assert_eq!(self.field, rhs.field);
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Self {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| op(self.field, a, b))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Stacks `blocks` vertically; all must share the column count.
    pub fn vstack(field: PrimeField, cols: usize, blocks: &[&FieldMatrix]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let (red, pivots) = rref_with_pivots(&aug);
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = red.get(r, n + c);
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FieldMatrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in self.row_vectors() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form together with the pivot column of each nonzero row.
///
/// Pivoting is deterministic: columns are scanned left to right and the first
/// row at or below the current position with a nonzero entry is chosen.
pub fn rref_with_pivots(m: &FieldMatrix) -> (FieldMatrix, Vec<usize>) {
    let f = m.field;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(sel) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if sel != row {
            for c in 0..a.cols {
                a.data.swap(sel * a.cols + c, row * a.cols + c);
            }
        }
        let inv = f.inv(a.get(row, col));
        if inv != 1 {
            for c in col..a.cols {
                let v = a.get(row, c);
                a.data[row * a.cols + c] = f.mul(v, inv);
            }
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), f.mul(factor, a.get(row, c)));
                a.data[r * a.cols + c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Canonical reduced row-echelon form and rank.
pub fn rref(m: &FieldMatrix) -> (FieldMatrix, usize) {
    let (r, pivots) = rref_with_pivots(m);
    (r, pivots.len())
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &FieldMatrix) -> Subspace {
    let f = m.field;
    let (r, pivots) = rref_with_pivots(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let vectors: Vec<Vec<u32>> = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; m.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            v
        })
        .collect();
    Subspace::span(f, m.cols, vectors)
}

/// Some `x` with `m x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &FieldMatrix, b: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(m.rows, b.len(), "right-hand side length mismatch");
    let f = m.field;
    let mut aug = FieldMatrix::zeros(f, m.rows, m.cols + 1);
    for (r, &br) in b.iter().enumerate() {
        for c in 0..m.cols {
            aug.data[r * (m.cols + 1) + c] = m.get(r, c);
        }
        aug.data[r * (m.cols + 1) + m.cols] = br % f.p();
    }
    let (red, pivots) = rref_with_pivots(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0; m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = red.get(row, m.cols);
    }
    Some(x)
}
