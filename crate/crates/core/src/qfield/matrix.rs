use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentRat;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, LaurentRat)>;

pub fn sparse_from_dense(v: &[LaurentRat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<LaurentRat> {
    let mut out = vec![LaurentRat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + s * b` on sparse vectors.
pub fn sparse_axpy(a: &SparseVec, s: &LaurentRat, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_scale(a: &SparseVec, s: &LaurentRat) -> SparseVec {
    a.iter().map(|(i, x)| (*i, x * s)).collect()
}

/// Incrementally maintained reduced row echelon form of a row space.
///
/// Pivots are always the leftmost nonzero column of a row, every pivot row is
/// normalized to pivot value 1 and every pivot column is zero outside its
/// pivot row. The reduced form of a row space is unique, so the result does
/// not depend on insertion order.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after elimination against the stored pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        let hits: Vec<(usize, LaurentRat)> = v
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .cloned()
            .collect();
        for (c, x) in hits {
            let r = self.pivot_row[&c];
            acc = sparse_axpy(&acc, &-x, &self.rows[r]);
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a row; returns true if it enlarged the row space.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        if red.is_empty() {
            return false;
        }
        let (pc, pv) = red[0].clone();
        let inv = pv.inv().expect("nonzero pivot");
        let row = sparse_scale(&red, &inv);
        for other in self.rows.iter_mut() {
            if let Ok(pos) = other.binary_search_by_key(&pc, |(c, _)| *c) {
                let x = other[pos].1.clone();
                *other = sparse_axpy(other, &-x, &row);
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, v: &[LaurentRat]) -> bool {
        self.insert(&sparse_from_dense(v))
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .collect()
    }

    /// Rows of the reduced form ordered by pivot column.
    pub fn rows(&self) -> Vec<&SparseVec> {
        self.pivot_row.values().map(|&r| &self.rows[r]).collect()
    }

    /// The pivot row whose pivot sits in column `c`, if any.
    pub fn pivot_row_for(&self, c: usize) -> Option<&SparseVec> {
        self.pivot_row.get(&c).map(|&r| &self.rows[r])
    }

    /// Basis of the orthogonal complement `{x : row . x = 0 for all rows}`,
    /// one vector per free column.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in self.free_columns() {
            let mut v: BTreeMap<usize, LaurentRat> = BTreeMap::new();
            v.insert(f, LaurentRat::one());
            for (&pc, &r) in &self.pivot_row {
                if let Ok(pos) = self.rows[r].binary_search_by_key(&f, |(c, _)| *c) {
                    v.insert(pc, -&self.rows[r][pos].1);
                }
            }
            out.push(v.into_iter().collect());
        }
        out
    }
}

/// Dense matrix over Q(q), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentRat>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![LaurentRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentRat::one());
        }
        m
    }

    pub fn diagonal(d: &[LaurentRat]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<LaurentRat>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| LaurentRat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &LaurentRat) {
        let idx = i * self.cols + j;
        self.data[idx] += v;
    }

    pub fn row(&self, i: usize) -> &[LaurentRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentRat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        sparse_from_dense(self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentRat)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            t.set(j, i, x.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let other_rows: Vec<SparseVec> = (0..other.rows).map(|k| other.sparse_row(k)).collect();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &other_rows[k] {
                    out.add_to(i, *j, &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[LaurentRat]) -> Vec<LaurentRat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[LaurentRat]) -> Vec<LaurentRat> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![LaurentRat::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    out[j] += &(x * a);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &LaurentRat) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product with row-major flattening `(i, j) -> i * dim_b + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        let b_entries: Vec<(usize, usize, LaurentRat)> =
            other.entries().map(|(i, j, x)| (i, j, x.clone())).collect();
        for (i, j, a) in self.entries() {
            for (k, l, b) in &b_entries {
                out.set(i * other.rows + k, j * other.cols + l, a * b);
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn echelon(&self) -> RowEchelon {
        let mut e = RowEchelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(&self.sparse_row(i));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Reduced row echelon form (zero rows dropped, rows ordered by pivot).
    pub fn rref(&self) -> Self {
        let e = self.echelon();
        let rows = e
            .rows()
            .into_iter()
            .map(|r| dense_from_sparse(r, self.cols))
            .collect::<Vec<_>>();
        if rows.is_empty() {
            return Self::zeros(0, self.cols);
        }
        Self::from_rows(rows)
    }

    /// Basis of `{x : M x = 0}` as dense column vectors.
    pub fn kernel(&self) -> Vec<Vec<LaurentRat>> {
        self.echelon()
            .null_space()
            .iter()
            .map(|v| dense_from_sparse(v, self.cols))
            .collect()
    }

    /// One solution of `M X = B` (free variables set to zero).
    pub fn solve_matrix(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let e = aug.echelon();
        if e.pivots().iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for row in e.rows() {
            let p = row[0].0;
            for (c, v) in row.iter().skip(1) {
                if *c >= self.cols {
                    x.set(p, c - self.cols, v.clone());
                }
            }
        }
        Ok(x)
    }

    pub fn solve(&self, rhs: &[LaurentRat]) -> Result<Vec<LaurentRat>> {
        let b = Self::from_columns(&[rhs.to_vec()], self.rows);
        Ok(self.solve_matrix(&b)?.column(0))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::DivisionByZero);
        }
        self.solve_matrix(&Self::identity(self.rows))
    }

    /// Determinant by cofactor-free elimination; intended for small matrices.
    pub fn determinant(&self) -> LaurentRat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<LaurentRat>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = LaurentRat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return LaurentRat::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = det * &piv;
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= &t;
                }
            }
        }
        det
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> LaurentRat {
        LaurentRat::q_pow(e)
    }

    #[test]
    fn identity_rank() {
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn kernel_of_row() {
        let m = ExactMatrix::from_rows(vec![vec![LaurentRat::one(), q(1)]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![-q(1), LaurentRat::one()]]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = ExactMatrix::from_rows(vec![
            vec![q(1), LaurentRat::one()],
            vec![LaurentRat::one(), q(-1)],
        ]);
        // rank 1: second row is q^-1 times the first
        assert_eq!(m.rank(), 1);
        let b = vec![LaurentRat::one(), LaurentRat::from_int(2)];
        assert_eq!(m.solve(&b), Err(Error::NoSolution));
        let b = vec![q(2), q(1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_rows(vec![
            vec![q(1), LaurentRat::one(), LaurentRat::zero()],
            vec![LaurentRat::zero(), q(-1) - q(1), LaurentRat::from_int(3)],
            vec![LaurentRat::one(), LaurentRat::zero(), q(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
        assert_eq!(inv.mul(&m), ExactMatrix::identity(3));
        let det = m.determinant();
        assert!(!det.is_zero());
    }

    #[test]
    fn echelon_is_order_independent() {
        let rows = vec![
            vec![LaurentRat::one(), q(1), q(2)],
            vec![q(1), LaurentRat::zero(), LaurentRat::one()],
            vec![q(1) + LaurentRat::one(), q(1), q(2) + LaurentRat::one()],
        ];
        let a = ExactMatrix::from_rows(rows.clone()).rref();
        let mut rev = rows;
        rev.reverse();
        let b = ExactMatrix::from_rows(rev).rref();
        assert_eq!(a, b);
        assert_eq!(a.rows(), 2);
    }
}
