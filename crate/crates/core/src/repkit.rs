//! Finite-dimensional type-1 modules of U_q(g) and of its Levi subalgebras.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::qfield::{qbinom_base, qint_base, ExactMatrix, LaurentRat, RowEchelon, SparseVec};
use crate::rootdata::{format_weight, LieType, RootSystem, Weight};

/// A weight module with explicit generator matrices.
///
/// `gens` lists the simple-root indices whose E and F are part of the action;
/// K_i acts for every i through the weights. Irreducible modules built by
/// [`build_irrep`] remember the F-word of each basis vector.
#[derive(Clone, Debug)]
pub struct WeightModule {
    rs: Arc<RootSystem>,
    gens: Vec<usize>,
    weights: Vec<Weight>,
    labels: Vec<String>,
    e: Vec<ExactMatrix>,
    f: Vec<ExactMatrix>,
    highest: Option<usize>,
    words: Option<Vec<Vec<usize>>>,
    exp_scale: i64,
}

impl WeightModule {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn highest(&self) -> Option<usize> {
        self.highest
    }

    pub fn words(&self) -> Option<&[Vec<usize>]> {
        self.words.as_deref()
    }

    fn slot(&self, i: usize) -> usize {
        self.gens
            .iter()
            .position(|&g| g == i)
            .unwrap_or_else(|| panic!("generator {i} is not part of this action"))
    }

    pub fn e(&self, i: usize) -> &ExactMatrix {
        &self.e[self.slot(i)]
    }

    pub fn f(&self, i: usize) -> &ExactMatrix {
        &self.f[self.slot(i)]
    }

    /// Eigenvalue exponent of K_i on basis vector b: (wt b, a_i), times the
    /// exponent scale.
    pub fn k_exponent(&self, b: usize, i: usize) -> i64 {
        self.exp_scale * self.rs.pairing_simple(&self.weights[b], i)
    }

    /// Exponent scale: 1 for modules over Q(q), D after the substitution
    /// q = t^D performed by [`WeightModule::rescaled`].
    pub fn exp_scale(&self) -> i64 {
        self.exp_scale
    }

    /// The same module written in the variable t with q = t^d.
    pub fn rescaled(&self, d: i64) -> WeightModule {
        let sc = |m: &ExactMatrix| {
            let mut out = ExactMatrix::zeros(m.rows(), m.cols());
            for (r, c, x) in m.entries() {
                out.set(r, c, x.scale_exponents(d));
            }
            out
        };
        WeightModule {
            e: self.e.iter().map(sc).collect(),
            f: self.f.iter().map(sc).collect(),
            exp_scale: self.exp_scale * d,
            ..self.clone()
        }
    }

    pub fn k(&self, i: usize) -> ExactMatrix {
        let d: Vec<LaurentRat> = (0..self.dim())
            .map(|b| LaurentRat::q_pow(self.k_exponent(b, i)))
            .collect();
        ExactMatrix::diagonal(&d)
    }

    pub fn k_inv(&self, i: usize) -> ExactMatrix {
        let d: Vec<LaurentRat> = (0..self.dim())
            .map(|b| LaurentRat::q_pow(-self.k_exponent(b, i)))
            .collect();
        ExactMatrix::diagonal(&d)
    }

    /// Matrix of K_mu := prod K_i^{m_i} for mu = sum m_i a_i in root coordinates,
    /// acting by q^{(wt, mu)}.
    pub fn k_weight(&self, mu: &[i64]) -> ExactMatrix {
        let d: Vec<LaurentRat> = (0..self.dim())
            .map(|b| LaurentRat::q_pow(self.exp_scale * self.rs.pairing(&self.weights[b], mu)))
            .collect();
        ExactMatrix::diagonal(&d)
    }

    /// Basis indices grouped by weight, in order of first appearance.
    pub fn weight_spaces(&self) -> Vec<(Weight, Vec<usize>)> {
        let mut order: Vec<Weight> = Vec::new();
        let mut map: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (b, w) in self.weights.iter().enumerate() {
            map.entry(w.clone())
                .or_insert_with(|| {
                    order.push(w.clone());
                    Vec::new()
                })
                .push(b);
        }
        order
            .into_iter()
            .map(|w| {
                let v = map.remove(&w).unwrap();
                (w, v)
            })
            .collect()
    }

    /// Reorders the basis: new vector n is old vector `perm[n]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightModule {
        assert_eq!(perm.len(), self.dim());
        let mut inv = vec![0; perm.len()];
        for (n, &o) in perm.iter().enumerate() {
            inv[o] = n;
        }
        let conj = |m: &ExactMatrix| {
            let mut out = ExactMatrix::zeros(m.rows(), m.cols());
            for (r, c, x) in m.entries() {
                out.set(inv[r], inv[c], x.clone());
            }
            out
        };
        WeightModule {
            rs: self.rs.clone(),
            gens: self.gens.clone(),
            weights: perm.iter().map(|&o| self.weights[o].clone()).collect(),
            labels: perm.iter().map(|&o| self.labels[o].clone()).collect(),
            e: self.e.iter().map(conj).collect(),
            f: self.f.iter().map(conj).collect(),
            highest: self.highest.map(|h| inv[h]),
            words: self
                .words
                .as_ref()
                .map(|w| perm.iter().map(|&o| w[o].clone()).collect()),
            exp_scale: self.exp_scale,
        }
    }

    /// Action of an element given as a word in generators, rightmost first.
    pub fn word_matrix(&self, word: &[Generator]) -> ExactMatrix {
        let mut m = ExactMatrix::identity(self.dim());
        for g in word.iter().rev() {
            m = self.generator_matrix(*g).mul(&m);
        }
        m
    }

    pub fn generator_matrix(&self, g: Generator) -> ExactMatrix {
        match g {
            Generator::E(i) => self.e(i).clone(),
            Generator::F(i) => self.f(i).clone(),
            Generator::K(i) => self.k(i),
            Generator::KInv(i) => self.k_inv(i),
        }
    }

    /// All generators acting on this module.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for &i in &self.gens {
            out.push(Generator::E(i));
            out.push(Generator::F(i));
        }
        for i in 0..self.rs.rank() {
            out.push(Generator::K(i));
        }
        out
    }

    /// Checks the defining relations of U_q as exact matrix identities.
    pub fn verify_relations(&self) -> std::result::Result<(), String> {
        let n = self.dim();
        let rs = &self.rs;
        for (slot, &i) in self.gens.iter().enumerate() {
            let ai = rs.simple_root(i);
            for (name, m, sign) in [("E", &self.e[slot], 1i64), ("F", &self.f[slot], -1)] {
                for (r, c, _) in m.entries() {
                    let expect: Vec<i64> = self.weights[c]
                        .iter()
                        .zip(&ai)
                        .map(|(w, a)| w + sign * a)
                        .collect();
                    if self.weights[r] != expect {
                        return Err(format!("{name}{} does not shift weights at ({r},{c})", i + 1));
                    }
                }
            }
        }
        for (si, &i) in self.gens.iter().enumerate() {
            for (sj, &j) in self.gens.iter().enumerate() {
                let comm = self.e[si].mul(&self.f[sj]).sub(&self.f[sj].mul(&self.e[si]));
                let expect = if i == j {
                    let d: Vec<LaurentRat> = (0..n)
                        .map(|b| qint_base(self.weights[b][i], self.exp_scale * rs.dprime(i)))
                        .collect();
                    ExactMatrix::diagonal(&d)
                } else {
                    ExactMatrix::zeros(n, n)
                };
                if let Some(pos) = comm.first_difference(&expect) {
                    return Err(format!("[E{},F{}] fails at {pos:?}", i + 1, j + 1));
                }
                if i == j {
                    continue;
                }
                let order = (1 - rs.cartan(i, j)) as usize;
                for (name, x, y) in [("E", &self.e[si], &self.e[sj]), ("F", &self.f[si], &self.f[sj])] {
                    let mut powers = vec![ExactMatrix::identity(n)];
                    for p in 1..=order {
                        powers.push(powers[p - 1].mul(x));
                    }
                    let mut total = ExactMatrix::zeros(n, n);
                    for k in 0..=order {
                        let c = qbinom_base(order as i64, k as i64, self.exp_scale * rs.dprime(i)).unwrap();
                        let c = if k % 2 == 1 { -c } else { c };
                        let term = powers[order - k].mul(y).mul(&powers[k]).scale(&c);
                        total = total.add(&term);
                    }
                    if !total.is_zero() {
                        return Err(format!("Serre relation {name}({},{}) fails", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

fn word_label(word: &[usize]) -> String {
    let mut s = String::new();
    for i in word {
        s.push_str(&format!("F{}", i + 1));
    }
    s.push('v');
    s
}

/// Irreducible module of highest weight `mu` for the subalgebra generated by
/// E_j, F_j (j in `gens`) and all K_i.
pub fn build_highest_weight_module(
    rs: &Arc<RootSystem>,
    mu: &[i64],
    gens: &[usize],
) -> Result<WeightModule> {
    if mu.len() != rs.rank() || gens.iter().any(|&j| mu[j] < 0) {
        return Err(Error::NonDominantWeight(format_weight(mu)));
    }
    let ng = gens.len();
    let mut weights: Vec<Weight> = vec![mu.to_vec()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    // e_cols[slot][b], f_cols[slot][b]: images of basis vector b
    let mut e_cols: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; ng];
    let mut f_cols: Vec<Vec<SparseVec>> = vec![Vec::new(); ng];
    let mut layer: Vec<usize> = vec![0];
    let roots: Vec<Weight> = gens.iter().map(|&i| rs.simple_root(i)).collect();

    while !layer.is_empty() {
        let stride = weights.len();
        let mut groups: BTreeMap<Weight, Vec<(Vec<usize>, usize, usize, SparseVec)>> =
            BTreeMap::new();
        for &b in &layer {
            for (si, &i) in gens.iter().enumerate() {
                let w: Weight = weights[b].iter().zip(&roots[si]).map(|(x, a)| x - a).collect();
                let mut word = vec![i];
                word.extend_from_slice(&words[b]);
                // Phi(F_i b) = (E_j F_i b)_j
                let mut phi: SparseVec = Vec::new();
                for (sj, &j) in gens.iter().enumerate() {
                    let mut acc: BTreeMap<usize, LaurentRat> = BTreeMap::new();
                    for (x, a) in &e_cols[sj][b] {
                        for (y, c) in &f_cols[si][*x] {
                            *acc.entry(*y).or_default() += &(a * c);
                        }
                    }
                    if i == j {
                        let c = qint_base(weights[b][i], rs.dprime(i));
                        *acc.entry(b).or_default() += &c;
                    }
                    phi.extend(
                        acc.into_iter()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(y, v)| (sj * stride + y, v)),
                    );
                }
                groups.entry(w).or_default().push((word, si, b, phi));
            }
        }
        for cols in f_cols.iter_mut() {
            cols.resize(stride, Vec::new());
        }
        let mut next_layer = Vec::new();
        for (w, mut cands) in groups {
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            let mut ech = RowEchelon::new(ng * stride);
            let mut chosen: Vec<usize> = Vec::new();
            for (ci, c) in cands.iter().enumerate() {
                if ech.insert(&c.3) {
                    chosen.push(ci);
                }
            }
            let first_new = weights.len();
            for (k, &ci) in chosen.iter().enumerate() {
                let (word, _, _, phi) = &cands[ci];
                let idx = first_new + k;
                weights.push(w.clone());
                words.push(word.clone());
                for cols in e_cols.iter_mut() {
                    cols.push(Vec::new());
                }
                for (pos, v) in phi {
                    e_cols[pos / stride][idx].push((pos % stride, v.clone()));
                }
                next_layer.push(idx);
            }
            if chosen.is_empty() {
                continue;
            }
            // express every candidate through the chosen ones
            let support: Vec<usize> = {
                let mut s: Vec<usize> = chosen
                    .iter()
                    .flat_map(|&ci| cands[ci].3.iter().map(|(p, _)| *p))
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            let row_of: HashMap<usize, usize> =
                support.iter().enumerate().map(|(r, &p)| (p, r)).collect();
            let mut a = ExactMatrix::zeros(support.len(), chosen.len());
            for (k, &ci) in chosen.iter().enumerate() {
                for (p, v) in &cands[ci].3 {
                    a.set(row_of[p], k, v.clone());
                }
            }
            let mut rhs = ExactMatrix::zeros(support.len(), cands.len());
            for (ci, c) in cands.iter().enumerate() {
                for (p, v) in &c.3 {
                    let r = *row_of.get(p).ok_or(Error::PropagationFailure(c.2))?;
                    rhs.set(r, ci, v.clone());
                }
            }
            let x = a.solve_matrix(&rhs)?;
            for (ci, c) in cands.iter().enumerate() {
                let col: SparseVec = (0..chosen.len())
                    .filter(|&k| !x.get(k, ci).is_zero())
                    .map(|k| (first_new + k, x.get(k, ci).clone()))
                    .collect();
                f_cols[c.1][c.2] = col;
            }
        }
        layer = next_layer;
    }
    let dim = weights.len();
    for cols in f_cols.iter_mut() {
        cols.resize(dim, Vec::new());
    }
    let to_matrix = |cols: &Vec<SparseVec>| {
        let mut m = ExactMatrix::zeros(dim, dim);
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    };
    Ok(WeightModule {
        rs: rs.clone(),
        gens: gens.to_vec(),
        labels: words.iter().map(|w| word_label(w)).collect(),
        weights,
        e: e_cols.iter().map(to_matrix).collect(),
        f: f_cols.iter().map(to_matrix).collect(),
        highest: Some(0),
        words: Some(words),
        exp_scale: 1,
    })
}

/// The irreducible U_q(g)-module V(mu).
pub fn build_irrep(rs: &Arc<RootSystem>, mu: &[i64]) -> Result<WeightModule> {
    if !rs.is_dominant(mu) {
        return Err(Error::NonDominantWeight(format_weight(mu)));
    }
    let gens: Vec<usize> = (0..rs.rank()).collect();
    build_highest_weight_module(rs, mu, &gens)
}

type CacheKey = (LieType, usize, Vec<usize>, Weight);

fn irrep_cache() -> &'static Mutex<HashMap<CacheKey, Arc<WeightModule>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<WeightModule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`build_highest_weight_module`].
pub fn cached_irrep(rs: &Arc<RootSystem>, mu: &[i64], gens: &[usize]) -> Result<Arc<WeightModule>> {
    let key = (rs.label(), rs.rank(), gens.to_vec(), mu.to_vec());
    if let Some(m) = irrep_cache().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_highest_weight_module(rs, mu, gens)?);
    irrep_cache().lock().unwrap().insert(key, m.clone());
    Ok(m)
}

/// Dual module with dual basis f_i(v_j) = delta_ij and action (uf)(x) = f(S(u)x).
pub fn dual_module(v: &WeightModule) -> WeightModule {
    let mut e = Vec::new();
    let mut f = Vec::new();
    for &i in &v.gens {
        e.push(v.e(i).mul(&v.k_inv(i)).scale(&LaurentRat::from_int(-1)).transpose());
        f.push(v.k(i).mul(v.f(i)).scale(&LaurentRat::from_int(-1)).transpose());
    }
    let weights: Vec<Weight> = v
        .weights
        .iter()
        .map(|w| w.iter().map(|x| -x).collect())
        .collect();
    let killed: Vec<usize> = (0..v.dim())
        .filter(|&b| e.iter().all(|m| (0..v.dim()).all(|r| m.get(r, b).is_zero())))
        .collect();
    WeightModule {
        rs: v.rs.clone(),
        gens: v.gens.clone(),
        labels: v.labels.iter().map(|l| format!("f[{l}]")).collect(),
        weights,
        e,
        f,
        highest: if killed.len() == 1 { Some(killed[0]) } else { None },
        words: None,
        exp_scale: v.exp_scale,
    }
}

/// Tensor product with Delta(E) = E(x)K + 1(x)E, Delta(F) = F(x)1 + K^-1(x)F,
/// basis (a, b) -> a * dim W + b.
pub fn tensor(v: &WeightModule, w: &WeightModule) -> WeightModule {
    assert_eq!(v.gens, w.gens, "tensor factors act by different generators");
    let iv = ExactMatrix::identity(v.dim());
    let iw = ExactMatrix::identity(w.dim());
    let mut e = Vec::new();
    let mut f = Vec::new();
    for &i in &v.gens {
        e.push(v.e(i).kron(&w.k(i)).add(&iv.kron(w.e(i))));
        f.push(v.f(i).kron(&iw).add(&v.k_inv(i).kron(w.f(i))));
    }
    let mut weights = Vec::with_capacity(v.dim() * w.dim());
    let mut labels = Vec::with_capacity(v.dim() * w.dim());
    for a in 0..v.dim() {
        for b in 0..w.dim() {
            weights.push(v.weights[a].iter().zip(&w.weights[b]).map(|(x, y)| x + y).collect());
            labels.push(format!("{}*{}", v.labels[a], w.labels[b]));
        }
    }
    WeightModule {
        rs: v.rs.clone(),
        gens: v.gens.clone(),
        weights,
        labels,
        e,
        f,
        highest: None,
        words: None,
        exp_scale: v.exp_scale,
    }
}

/// Matrix of an element acting on V (x) W through the coproduct, for a
/// single generator.
pub fn tensor_generator(v: &WeightModule, w: &WeightModule, g: Generator) -> ExactMatrix {
    match g {
        Generator::E(i) => v
            .e(i)
            .kron(&w.k(i))
            .add(&ExactMatrix::identity(v.dim()).kron(w.e(i))),
        Generator::F(i) => v
            .f(i)
            .kron(&ExactMatrix::identity(w.dim()))
            .add(&v.k_inv(i).kron(w.f(i))),
        Generator::K(i) => v.k(i).kron(&w.k(i)),
        Generator::KInv(i) => v.k_inv(i).kron(&w.k_inv(i)),
    }
}

/// The module with only the Levi generators E_j, F_j (j in `levi`) retained.
#[derive(Clone, Debug)]
pub struct LeviAction {
    pub levi: Vec<usize>,
    pub module: WeightModule,
}

pub fn levi_restriction(v: &WeightModule, levi: &[usize]) -> LeviAction {
    let mut e = Vec::new();
    let mut f = Vec::new();
    for &j in levi {
        e.push(v.e(j).clone());
        f.push(v.f(j).clone());
    }
    LeviAction {
        levi: levi.to_vec(),
        module: WeightModule {
            rs: v.rs.clone(),
            gens: levi.to_vec(),
            weights: v.weights.clone(),
            labels: v.labels.clone(),
            e,
            f,
            highest: None,
            words: None,
            exp_scale: v.exp_scale,
        },
    }
}

/// Highest weight vectors grouped by weight, as dense coordinate vectors.
pub fn highest_weight_vectors(v: &WeightModule) -> Vec<(Weight, Vec<Vec<LaurentRat>>)> {
    let mut out = Vec::new();
    for (w, idx) in v.weight_spaces() {
        let mut stacked = ExactMatrix::zeros(0, idx.len());
        for &j in &v.gens {
            let rows: Vec<usize> = (0..v.dim()).collect();
            let block = v.e(j).submatrix(&rows, &idx);
            stacked = stacked.vstack(&block);
        }
        let ker = stacked.kernel();
        if ker.is_empty() {
            continue;
        }
        let vecs = ker
            .into_iter()
            .map(|k| {
                let mut full = vec![LaurentRat::zero(); v.dim()];
                for (pos, &b) in idx.iter().enumerate() {
                    full[b] = k[pos].clone();
                }
                full
            })
            .collect();
        out.push((w, vecs));
    }
    out
}

/// One isotypic component: `multiplicity` copies of `irrep` embedded into V.
#[derive(Clone, Debug)]
pub struct Isotypic {
    pub weight: Weight,
    pub irrep: Arc<WeightModule>,
    /// dim V x dim irrep, one per copy.
    pub embeddings: Vec<ExactMatrix>,
    /// dim irrep x dim V, one per copy; projections[a] * embeddings[b] = delta_ab.
    pub projections: Vec<ExactMatrix>,
}

impl Isotypic {
    pub fn multiplicity(&self) -> usize {
        self.embeddings.len()
    }
}

/// Embedding of the irreducible module generated by a highest weight vector.
pub fn embedding_from_vector(
    v: &WeightModule,
    irrep: &WeightModule,
    hw: &[LaurentRat],
) -> ExactMatrix {
    let words = irrep.words().expect("irrep without F-words");
    let mut cols = Vec::with_capacity(words.len());
    for word in words {
        let mut x = hw.to_vec();
        for &i in word.iter().rev() {
            x = v.f(i).mul_vec(&x);
        }
        cols.push(x);
    }
    ExactMatrix::from_columns(&cols, v.dim())
}

pub fn isotypic_decomposition(v: &WeightModule) -> Result<Vec<Isotypic>> {
    let rs = v.root_system().clone();
    let rho = rs.rho();
    let mut hw = highest_weight_vectors(v);
    hw.sort_by(|a, b| {
        let ka = rs.pairing(&a.0, &rho);
        let kb = rs.pairing(&b.0, &rho);
        kb.cmp(&ka).then_with(|| b.0.cmp(&a.0))
    });
    let mut comps = Vec::new();
    let mut blocks = Vec::new();
    for (w, vecs) in hw {
        let irrep = cached_irrep(&rs, &w, v.gens())?;
        let embeddings: Vec<ExactMatrix> = vecs
            .iter()
            .map(|x| embedding_from_vector(v, &irrep, x))
            .collect();
        blocks.extend(embeddings.iter().cloned());
        comps.push(Isotypic {
            weight: w,
            irrep,
            embeddings,
            projections: Vec::new(),
        });
    }
    let mut full = ExactMatrix::zeros(v.dim(), 0);
    for b in &blocks {
        full = full.hstack(b);
    }
    if full.cols() != v.dim() || full.rank() != v.dim() {
        return Err(Error::DecompositionIncomplete {
            rank: full.rank(),
            dim: v.dim(),
        });
    }
    let inv = full.inverse()?;
    let mut offset = 0;
    let all: Vec<usize> = (0..v.dim()).collect();
    for c in comps.iter_mut() {
        let d = c.irrep.dim();
        for _ in 0..c.embeddings.len() {
            let rows: Vec<usize> = (offset..offset + d).collect();
            c.projections.push(inv.submatrix(&rows, &all));
            offset += d;
        }
    }
    Ok(comps)
}

/// Checks that `m: V -> W` intertwines every generator acting on both.
pub fn is_module_map(m: &ExactMatrix, v: &WeightModule, w: &WeightModule) -> bool {
    v.generators().into_iter().all(|g| {
        m.mul(&v.generator_matrix(g)) == w.generator_matrix(g).mul(m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::LieType;

    fn rs(t: LieType, n: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn small_irreps() {
        let a1 = rs(LieType::A, 1);
        let v = build_irrep(&a1, &[1]).unwrap();
        assert_eq!(v.dim(), 2);
        v.verify_relations().unwrap();
        let b2 = rs(LieType::B, 2);
        let v = build_irrep(&b2, &[1, 0]).unwrap();
        assert_eq!(v.dim(), 5);
        v.verify_relations().unwrap();
        let v = build_irrep(&b2, &[0, 1]).unwrap();
        assert_eq!(v.dim(), 4);
        v.verify_relations().unwrap();
    }

    #[test]
    fn dual_of_a2_vector_module() {
        let a2 = rs(LieType::A, 2);
        let v = build_irrep(&a2, &[1, 0]).unwrap();
        let d = dual_module(&v);
        d.verify_relations().unwrap();
        assert_eq!(d.weight(d.highest().unwrap()), &vec![0, 1]);
    }

    #[test]
    fn a1_tensor_square() {
        let a1 = rs(LieType::A, 1);
        let v = build_irrep(&a1, &[1]).unwrap();
        let t = tensor(&v, &v);
        t.verify_relations().unwrap();
        let dec = isotypic_decomposition(&t).unwrap();
        let summary: Vec<(Weight, usize)> =
            dec.iter().map(|c| (c.weight.clone(), c.multiplicity())).collect();
        assert_eq!(summary, vec![(vec![2], 1), (vec![0], 1)]);
        for c in &dec {
            for (e, p) in c.embeddings.iter().zip(&c.projections) {
                assert!(is_module_map(e, &c.irrep, &t));
                assert_eq!(p.mul(e), ExactMatrix::identity(c.irrep.dim()));
            }
        }
    }

    #[test]
    fn levi_pieces_of_a2_vector_module() {
        let a2 = rs(LieType::A, 2);
        let v = build_irrep(&a2, &[1, 0]).unwrap();
        let l = levi_restriction(&v, &[1]);
        l.module.verify_relations().unwrap();
        let dec = isotypic_decomposition(&l.module).unwrap();
        let mut dims: Vec<usize> = dec.iter().map(|c| c.irrep.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }
}
