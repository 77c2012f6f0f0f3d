//! Exact linear algebra over `FieldValue`: dense matrices and sparse incremental echelon forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::FieldValue;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, FieldValue)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy(a: &SparseVec, c: &FieldValue, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &SparseVec, c: &FieldValue) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, v * c)).collect()
}

/// Build a sparse vector from arbitrary `(index, value)` pairs, summing duplicates.
pub fn sparse_from_pairs(pairs: impl IntoIterator<Item = (usize, FieldValue)>) -> SparseVec {
    let mut m: std::collections::BTreeMap<usize, FieldValue> = Default::default();
    for (k, v) in pairs {
        let e = m.entry(k).or_insert_with(FieldValue::zero);
        *e += &v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Incremental row echelon form. The pivot of a row is its smallest index.
/// Stored rows are monic at the pivot and fully reduced against each other.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
    /// When tracking, the combination of inserted vectors that produced each row.
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Echelon form that records how each stored row arises from the inserted vectors.
    pub fn tracking() -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Default::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduce `v` against the stored rows, returning the remainder and the
    /// combination `c` with `v = remainder + sum c_k row_k` (row indices).
    fn reduce_with_coeffs(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, FieldValue)>) {
        let mut cur = v.clone();
        let mut used = Vec::new();
        let mut pos = 0;
        while pos < cur.len() {
            let (col, val) = (cur[pos].0, cur[pos].1.clone());
            if let Some(&r) = self.pivots.get(&col) {
                cur = sparse_axpy(&cur, &(-&val), &self.rows[r]);
                used.push((r, val));
                // rows are reduced, so entries before `pos` are unaffected
            } else {
                pos += 1;
            }
        }
        (cur, used)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_coeffs(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector; returns true if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_with_coeffs(v);
        if rem.is_empty() {
            return false;
        }
        let lead = rem[0].1.clone();
        let inv = lead.inv().expect("nonzero pivot");
        let row = sparse_scale(&rem, &inv);
        let piv = row[0].0;
        let combo = self.combos.as_ref().map(|combos| {
            // rem = v - sum used_k row_k
            let mut c: SparseVec = vec![(id, FieldValue::one())];
            for (r, val) in &used {
                c = sparse_axpy(&c, &(-val), &combos[*r]);
            }
            sparse_scale(&c, &inv)
        });
        // back-substitute into existing rows
        for r in 0..self.rows.len() {
            if let Some(pos) = self.rows[r].iter().position(|(k, _)| *k == piv) {
                let val = self.rows[r][pos].1.clone();
                self.rows[r] = sparse_axpy(&self.rows[r], &(-&val), &row);
                if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    combos[r] = sparse_axpy(&combos[r], &(-&val), c);
                }
            }
        }
        self.pivots.insert(piv, self.rows.len());
        self.rows.push(row);
        if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
            combos.push(c);
        }
        true
    }

    /// For a tracking echelon: express `v` as a combination of the inserted vectors
    /// (indexed by insertion order), or `None` if `v` is outside their span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let combos = self.combos.as_ref()?;
        let (rem, used) = self.reduce_with_coeffs(v);
        if !rem.is_empty() {
            return None;
        }
        let mut out: SparseVec = Vec::new();
        for (r, val) in used {
            out = sparse_axpy(&out, &val, &combos[r]);
        }
        Some(out)
    }
}

/// Dense matrix over the exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<FieldValue>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![FieldValue::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = FieldValue::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<FieldValue>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_ints(data: &[&[i64]]) -> Self {
        Matrix::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| FieldValue::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldValue {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Invalid("dimension mismatch in product".into()));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] += &(a * &o.data[k][j]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(FieldValue::is_zero))
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv().expect("nonzero");
            for x in self.data[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for j in c..self.cols {
                        if !self.data[r][j].is_zero() {
                            let t = &f * &self.data[r][j];
                            self.data[i][j] -= &t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for row in &self.data {
            e.insert(&dense_to_sparse(row));
        }
        e.rank()
    }

    /// Basis of the right null space {x : A x = 0}.
    pub fn kernel(&self) -> Vec<Vec<FieldValue>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldValue::zero(); self.cols];
                v[f] = FieldValue::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m.data[r][f];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = FieldValue::one();
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i][j] = aug.data[i][n + j].clone();
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<FieldValue> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = FieldValue::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Ok(FieldValue::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].inv()?;
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= &t;
                }
            }
        }
        Ok(det)
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[FieldValue]) -> Option<Vec<FieldValue>> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = b[i].clone();
        }
        let piv = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldValue::zero(); self.cols];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }
}

pub fn dense_to_sparse(row: &[FieldValue]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<FieldValue> {
    let mut out = vec![FieldValue::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(n: i64) -> FieldValue {
        FieldValue::from_int(n)
    }

    #[test]
    fn rank_kernel_inverse() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let col = Matrix::from_rows(k[0].iter().map(|x| vec![x.clone()]).collect()).unwrap();
        assert!(m.mul(&col).unwrap().is_zero());
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        let a = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(2));
        assert_eq!(a.determinant().unwrap(), fv(1));
    }

    #[test]
    fn tracking_echelon_expresses_combinations() {
        let mut e = Echelon::tracking();
        let v0 = vec![(0, fv(1)), (2, fv(1))];
        let v1 = vec![(0, fv(1)), (1, fv(1))];
        let v2 = vec![(1, fv(1)), (2, fv(-1))];
        assert!(e.insert(&v0));
        assert!(e.insert(&v1));
        assert!(!e.insert(&v2));
        let target = vec![(0, fv(3)), (1, fv(2)), (2, fv(1))];
        let c = e.express(&target).unwrap();
        let mut acc: SparseVec = Vec::new();
        let basis = [v0, v1, v2];
        for (k, x) in &c {
            acc = sparse_axpy(&acc, x, &basis[*k]);
        }
        assert_eq!(acc, target);
        assert!(e.express(&vec![(3, fv(1))]).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_ints(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[fv(3), fv(1)]).unwrap();
        assert_eq!(x, vec![fv(2), fv(1)]);
        let b = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[fv(1), fv(3)]).is_none());
    }
}
