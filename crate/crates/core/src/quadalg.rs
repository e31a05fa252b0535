//! Quadratic algebras T(V)/(R): graded dimensions, ideal membership and
//! filtered relation tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::qfield::{sparse_from_dense, LaurentRat, RowEchelon, SparseVec};

#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    n: usize,
    labels: Vec<String>,
    relations: Vec<SparseVec>,
    grading: Option<Vec<Vec<i64>>>,
    filtration: Option<Vec<Vec<i64>>>,
}

impl QuadraticAlgebra {
    /// Relations are vectors in the n^2-dimensional tensor square with
    /// x_a (x) x_b at index a * n + b. They are stored in reduced echelon form.
    pub fn new(labels: Vec<String>, relations: &[SparseVec]) -> Self {
        let n = labels.len();
        let mut ech = RowEchelon::new(n * n);
        for r in relations {
            ech.insert(r);
        }
        QuadraticAlgebra {
            n,
            labels,
            relations: ech.rows().into_iter().cloned().collect(),
            grading: None,
            filtration: None,
        }
    }

    pub fn free(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("x{}", i + 1)).collect(), &[])
    }

    /// Attaches an integer-vector grading per generator; every relation must
    /// be homogeneous.
    pub fn with_grading(mut self, grading: Vec<Vec<i64>>) -> Result<Self> {
        assert_eq!(grading.len(), self.n);
        let n = self.n;
        for r in &self.relations {
            let mut seen: Option<Vec<i64>> = None;
            for (p, _) in r {
                let d = add_vec(&grading[p / n], &grading[p % n]);
                match &seen {
                    None => seen = Some(d),
                    Some(s) if *s != d => return Err(Error::NotHomogeneous),
                    _ => {}
                }
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    /// Per-generator filtration degrees, tuples (1, n) of the ordered
    /// semigroup used by [`QuadraticAlgebra::filtered_relation_check`].
    pub fn with_filtration(mut self, degrees: Vec<Vec<i64>>) -> Self {
        assert_eq!(degrees.len(), self.n);
        self.filtration = Some(degrees);
        self
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.len()
    }

    pub fn grading(&self) -> Option<&[Vec<i64>]> {
        self.grading.as_deref()
    }

    /// Graded dimensions d_0..d_maxdeg by the iterative cokernel method.
    pub fn graded_dims(&self, maxdeg: usize) -> DimensionReport {
        let n = self.n;
        let zero_grade = vec![0i64; self.grading.as_ref().map_or(0, |g| g[0].len())];
        let grade_of = |h: usize| -> Vec<i64> {
            match &self.grading {
                Some(g) => g[h].clone(),
                None => Vec::new(),
            }
        };
        // degree 0: one basis element
        let mut bases: Vec<Vec<(usize, usize)>> = vec![vec![(0, 0)]];
        let mut grades: Vec<Vec<Vec<i64>>> = vec![vec![zero_grade.clone()]];
        let mut normal: Vec<Vec<SparseVec>> = vec![Vec::new()];
        let mut dims = vec![1];
        if maxdeg >= 1 {
            bases.push((0..n).map(|h| (0, h)).collect());
            grades.push((0..n).map(grade_of).collect());
            normal.push((0..n).map(|h| vec![(h, LaurentRat::one())]).collect());
            dims.push(n);
        }
        for k in 2..=maxdeg {
            let prev = &bases[k - 1];
            let ncols = prev.len() * n;
            let mut blocks: HashMap<Vec<i64>, RowEchelon> = HashMap::new();
            for b in 0..bases[k - 2].len() {
                for r in &self.relations {
                    let mut acc: BTreeMap<usize, LaurentRat> = BTreeMap::new();
                    for (p, c) in r {
                        let (g, h) = (p / n, p % n);
                        for (bp, x) in &normal[k - 1][b * n + g] {
                            *acc.entry(bp * n + h).or_default() += &(c * x);
                        }
                    }
                    let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    if row.is_empty() {
                        continue;
                    }
                    let key = add_vec(&grades[k - 1][row[0].0 / n], &grade_of(row[0].0 % n));
                    blocks
                        .entry(key)
                        .or_insert_with(|| RowEchelon::new(ncols))
                        .insert(&row);
                }
            }
            let mut pivot_rows: HashMap<usize, SparseVec> = HashMap::new();
            for e in blocks.values() {
                for row in e.rows() {
                    pivot_rows.insert(row[0].0, row.clone());
                }
            }
            let mut basis = Vec::new();
            let mut grade_k = Vec::new();
            let mut index_of = vec![usize::MAX; ncols];
            for col in 0..ncols {
                if !pivot_rows.contains_key(&col) {
                    index_of[col] = basis.len();
                    basis.push((col / n, col % n));
                    grade_k.push(add_vec(&grades[k - 1][col / n], &grade_of(col % n)));
                }
            }
            let nf: Vec<SparseVec> = (0..ncols)
                .map(|col| match pivot_rows.get(&col) {
                    None => vec![(index_of[col], LaurentRat::one())],
                    Some(row) => row
                        .iter()
                        .skip(1)
                        .map(|(c, v)| (index_of[*c], -v))
                        .collect(),
                })
                .collect();
            dims.push(basis.len());
            bases.push(basis);
            grades.push(grade_k);
            normal.push(nf);
        }
        DimensionReport {
            n,
            dims,
            bases,
            normal,
        }
    }

    /// True iff `t` (a tensor in V^{(x)d}, row-major) lies in the degree-d
    /// component of the ideal generated by R.
    pub fn membership(&self, d: usize, t: &[LaurentRat]) -> Result<bool> {
        let expected = self.n.pow(d as u32);
        if t.len() != expected {
            return Err(Error::DegreeMismatch {
                expected,
                got: t.len(),
            });
        }
        let report = self.graded_dims(d);
        Ok(report.normal_form(d, t).is_empty())
    }

    /// True iff `t` lies in R plus the span of basis tensors x_a (x) x_b whose
    /// filtration degree is lexicographically below `bound`.
    pub fn filtered_relation_check(&self, t: &[LaurentRat], bound: &[i64]) -> Result<bool> {
        let degs = self.filtration.as_ref().ok_or(Error::FiltrationUnset)?;
        let n = self.n;
        if t.len() != n * n {
            return Err(Error::DegreeMismatch {
                expected: n * n,
                got: t.len(),
            });
        }
        let mut ech = RowEchelon::new(n * n);
        for r in &self.relations {
            ech.insert(r);
        }
        for a in 0..n {
            for b in 0..n {
                if filtration_sum(&degs[a], &degs[b]).as_slice() < bound {
                    ech.insert(&vec![(a * n + b, LaurentRat::one())]);
                }
            }
        }
        Ok(ech.contains(&sparse_from_dense(t)))
    }

    /// Filtration degree of x_a (x) x_b.
    pub fn tensor_filtration(&self, a: usize, b: usize) -> Result<Vec<i64>> {
        let degs = self.filtration.as_ref().ok_or(Error::FiltrationUnset)?;
        Ok(filtration_sum(&degs[a], &degs[b]))
    }

    /// True iff c (x) x_g - x_g (x) c is in the degree-3 ideal component.
    pub fn central_degree3_check(&self, c: &[LaurentRat], g: usize) -> Result<bool> {
        let n = self.n;
        if c.len() != n * n {
            return Err(Error::DegreeMismatch {
                expected: n * n,
                got: c.len(),
            });
        }
        let mut t = vec![LaurentRat::zero(); n * n * n];
        for (p, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            t[p * n + g] += x;
            t[g * n * n + p] -= x;
        }
        self.membership(3, &t)
    }
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Sum in the semigroup of tuples (k, n_1 <= ... <= n_k).
pub fn filtration_sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut parts: Vec<i64> = a[1..].iter().chain(&b[1..]).copied().collect();
    parts.sort_unstable();
    let mut out = vec![a[0] + b[0]];
    out.extend(parts);
    out
}

/// Graded dimensions plus the normal-form maps of each degree.
#[derive(Clone, Debug)]
pub struct DimensionReport {
    n: usize,
    pub dims: Vec<usize>,
    /// bases[k][i] = (index in bases[k-1], generator)
    bases: Vec<Vec<(usize, usize)>>,
    /// normal[k][b * n + h]: class of basis[k-1][b] * x_h in the basis of degree k
    normal: Vec<Vec<SparseVec>>,
}

impl DimensionReport {
    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Words (generator sequences) of the quotient basis in degree k.
    pub fn basis_words(&self, k: usize) -> Vec<Vec<usize>> {
        (0..self.dims[k])
            .map(|mut i| {
                let mut w = Vec::with_capacity(k);
                for d in (1..=k).rev() {
                    let (b, h) = self.bases[d][i];
                    w.push(h);
                    i = b;
                }
                w.reverse();
                w
            })
            .collect()
    }

    /// Coordinates of the class of `t` in the degree-d quotient basis.
    pub fn normal_form(&self, d: usize, t: &[LaurentRat]) -> SparseVec {
        self.normal_form_sparse(d, &sparse_from_dense(t))
    }

    /// As [`DimensionReport::normal_form`] for a sparse tensor with
    /// flattened row-major indices.
    pub fn normal_form_sparse(&self, d: usize, t: &[(usize, LaurentRat)]) -> SparseVec {
        let n = self.n;
        if d <= 1 {
            return t.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        }
        let suffix = n.pow(d as u32 - 1);
        let mut state: BTreeMap<(usize, usize), LaurentRat> = BTreeMap::new();
        for (p, x) in t {
            if !x.is_zero() {
                *state.entry((p / suffix, p % suffix)).or_default() += x;
            }
        }
        for k in 2..=d {
            let rest = n.pow((d - k) as u32);
            let mut next: BTreeMap<(usize, usize), LaurentRat> = BTreeMap::new();
            for ((b, s), x) in state {
                if x.is_zero() {
                    continue;
                }
                let h = s / rest;
                for (bp, y) in &self.normal[k][b * n + h] {
                    *next.entry((*bp, s % rest)).or_default() += &(&x * y);
                }
            }
            state = next;
        }
        state
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((b, _), v)| (b, v))
            .collect()
    }
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.dims.iter().enumerate() {
            writeln!(f, "{k}\t{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> LaurentRat {
        LaurentRat::one()
    }

    #[test]
    fn free_algebra() {
        let a = QuadraticAlgebra::free(3);
        assert_eq!(a.graded_dims(3).dims, vec![1, 3, 9, 27]);
    }

    #[test]
    fn polynomial_and_exterior() {
        let n = 3;
        let mut comm = Vec::new();
        let mut ext = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a != b {
                    comm.push(vec![(a * n + b, one()), (b * n + a, -one())]);
                }
                let mut s = vec![(a * n + b, one())];
                if a != b {
                    s.push((b * n + a, one()));
                }
                ext.push(s);
            }
        }
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let p = QuadraticAlgebra::new(labels.clone(), &comm);
        assert_eq!(p.graded_dims(3).dims, vec![1, 3, 6, 10]);
        let e = QuadraticAlgebra::new(labels, &ext);
        assert_eq!(e.graded_dims(4).dims, vec![1, 3, 3, 1, 0]);
        let mut c = vec![LaurentRat::zero(); 9];
        c[0] = one();
        assert!(p.central_degree3_check(&c, 1).unwrap());
        assert!(!QuadraticAlgebra::free(3).central_degree3_check(&c, 1).unwrap());
    }

    #[test]
    fn membership_degree_check() {
        let a = QuadraticAlgebra::free(2);
        assert_eq!(
            a.membership(2, &[one()]),
            Err(Error::DegreeMismatch { expected: 4, got: 1 })
        );
        assert_eq!(
            a.filtered_relation_check(&vec![one(); 4], &[2, 0, 0]),
            Err(Error::FiltrationUnset)
        );
    }
}
