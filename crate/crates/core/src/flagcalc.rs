//! Relation data and verification suites for one irreducible flag manifold.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::braiding::{
    restricted_braid_check, verify_crels, verify_triangularity, verify_ybe, LeviPiece,
    RestrictedBraid, RFamily,
};
use crate::error::{Error, Result};
use crate::qfield::{ExactMatrix, LaurentRat, RowEchelon, SparseVec};
use crate::quadalg::{DimensionReport, QuadraticAlgebra};
use crate::repkit::{
    build_irrep, dual_module, isotypic_decomposition, levi_restriction, tensor, WeightModule,
};
use crate::report::Check;
use crate::rootdata::{format_weight, LieType, ParabolicData, RootSystem, Weight};

/// All derived data for (type, rank, s) with lambda = omega_s.
#[derive(Clone, Debug)]
pub struct FlagContext {
    pub rs: Arc<RootSystem>,
    pub par: ParabolicData,
    pub lambda: Weight,
    /// V(lambda) with the highest weight vector last.
    pub v: WeightModule,
    /// Dual module with dual basis f_i.
    pub vd: WeightModule,
    pub n: usize,
    /// `root_index[b]` is the basis index i with wt(v_i) = lambda - beta_b.
    pub root_index: Vec<usize>,
    pub fam: RFamily,
    pub lambda_sq: i64,
    pub alpha_sq: i64,
}

impl FlagContext {
    pub fn new(label: LieType, rank: usize, s: usize) -> Result<Self> {
        let rs = Arc::new(RootSystem::new(label, rank)?);
        let par = rs.parabolic(s)?;
        let idx = par.index();
        let lambda = rs.fundamental_weight(idx);
        let v0 = build_irrep(&rs, &lambda)?;
        let n = v0.dim();
        let perm: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        let v = v0.permuted(&perm);
        let vd = dual_module(&v);
        let mut root_index = Vec::with_capacity(par.m());
        for beta in &par.complement {
            let bw = rs.root_to_weight(beta);
            let target: Weight = lambda.iter().zip(&bw).map(|(a, b)| a - b).collect();
            let hits: Vec<usize> = (0..n).filter(|&i| v.weight(i) == &target).collect();
            if hits.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "weight {} occurs {} times in V(lambda)",
                    format_weight(&target),
                    hits.len()
                )));
            }
            root_index.push(hits[0]);
        }
        let ctx_i1 = i1_of(&rs, &lambda, &v, idx);
        let mut sorted = root_index.clone();
        sorted.sort_unstable();
        if sorted != ctx_i1 {
            return Err(Error::InvalidArgument(
                "root indexing does not match I_(1)".into(),
            ));
        }
        let alpha = rs.simple_root(idx);
        let lambda_sq = rs.pairing(&lambda, &lambda);
        let alpha_sq = rs.pairing(&alpha, &alpha);
        let fam = RFamily::new(&v, &vd, lambda_sq, alpha_sq)?;
        Ok(FlagContext {
            rs,
            par,
            lambda,
            v,
            vd,
            n,
            root_index,
            fam,
            lambda_sq,
            alpha_sq,
        })
    }

    pub fn m(&self) -> usize {
        self.par.m()
    }

    pub fn label(&self) -> String {
        format!("{}{} s={}", self.rs.label(), self.rs.rank(), self.par.node)
    }

    /// I_(1): indices whose weight lies exactly one alpha_s below lambda.
    pub fn i1(&self) -> Vec<usize> {
        i1_of(&self.rs, &self.lambda, &self.v, self.par.index())
    }

    pub fn verify_ybe(&self) -> Vec<Check> {
        verify_ybe(&self.fam)
    }

    pub fn verify_crels(&self) -> Vec<Check> {
        verify_crels(&self.fam)
    }

    pub fn verify_triangularity(&self) -> Vec<Check> {
        verify_triangularity(&self.fam, &self.rs, self.v.weights())
    }

    /// Eigenspace dimensions of R-hat against the isotypic decomposition of V (x) V.
    pub fn verify_spectrum(&self) -> Vec<Check> {
        let plus = self.fam.p_hat.kernel().len();
        let minus = self.fam.q_hat.kernel().len();
        let dec = match isotypic_decomposition(&tensor(&self.v, &self.v)) {
            Ok(d) => d,
            Err(e) => return vec![Check::fail("spectrum", e.to_string())],
        };
        let two: Weight = self.lambda.iter().map(|x| 2 * x).collect();
        let alpha = self.rs.simple_root(self.par.index());
        let lower: Weight = two.iter().zip(&alpha).map(|(a, b)| a - b).collect();
        let dim_of = |w: &Weight| {
            dec.iter()
                .filter(|c| &c.weight == w)
                .map(|c| c.irrep.dim() * c.multiplicity())
                .sum::<usize>()
        };
        let d2 = dim_of(&two);
        let dl = dim_of(&lower);
        vec![
            Check::from_bool("spectrum q^(l,l)", plus == d2, || {
                format!("eigenspace {plus}, V(2lambda) {d2}")
            }),
            Check::from_bool("spectrum -q^(l,l)-(a,a)", minus == dl, || {
                format!("eigenspace {minus}, V(2lambda-alpha_s) {dl}")
            }),
        ]
    }
}

/// Binomial coefficient as used by the expected dimension counts.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Scalar helper: q^{e}.
pub fn qp(e: i64) -> LaurentRat {
    LaurentRat::q_pow(e)
}

fn i1_of(rs: &RootSystem, lambda: &[i64], v: &WeightModule, s: usize) -> Vec<usize> {
    let alpha = rs.simple_root(s);
    (0..v.dim())
        .filter(|&i| {
            // (omega_s, omega_s - alpha_s - wt v_i) = 0
            let rest: Vec<i64> = lambda
                .iter()
                .zip(v.weight(i))
                .zip(&alpha)
                .map(|((l, w), a)| l - w - a)
                .collect();
            rs.pairing(lambda, &rest) == 0
        })
        .collect()
}

/// Which calculus a fiber presentation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    Del,
    Delbar,
    D,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::Del => "del",
            Calculus::Delbar => "delbar",
            Calculus::D => "d",
        })
    }
}

impl FromStr for Calculus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "del" => Ok(Calculus::Del),
            "delbar" => Ok(Calculus::Delbar),
            "d" => Ok(Calculus::D),
            _ => Err(Error::Parse(format!("unknown calculus '{s}' (del|delbar|d)"))),
        }
    }
}

/// Fiber algebra of a calculus: x_beta generators first (root order), then
/// y_beta generators.
#[derive(Clone, Debug)]
pub struct CalculusPresentation {
    pub which: Calculus,
    pub algebra: QuadraticAlgebra,
    /// Root beta of each generator, simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Weight of each generator relative to the highest weight line.
    pub weights: Vec<Weight>,
    /// (node j, E_j, F_j) acting on the generator space.
    pub levi: Vec<(usize, ExactMatrix, ExactMatrix)>,
    pub s_del_dim: usize,
    pub s_delbar_dim: usize,
    pub j_dim: usize,
}

impl CalculusPresentation {
    pub fn generators(&self) -> usize {
        self.roots.len()
    }

    /// Exponent of K_j on generator g.
    pub fn k_exponent(&self, rs: &RootSystem, g: usize, j: usize) -> i64 {
        rs.dprime(j) * self.weights[g][j]
    }
}

/// Quadratic relations of the coordinate ring of G/L_S on the N^2
/// generators z_ij (index i * N + j).
#[derive(Clone, Debug)]
pub struct CoordinateRelations {
    pub n: usize,
    /// P-hat_12 ra_23 z z = 0, one tensor per free index quadruple.
    pub family1: Vec<SparseVec>,
    /// P-check_34 ra_23 z z = 0.
    pub family2: Vec<SparseVec>,
    /// Coefficients a_ij with sum a_ij z_ij = 1.
    pub normalization: Vec<LaurentRat>,
}

impl CoordinateRelations {
    /// Index of z_ab (x) z_cd.
    pub fn pair_index(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let n2 = self.n * self.n;
        (a * self.n + b) * n2 + c * self.n + d
    }

    pub fn rank1(&self) -> usize {
        rank_of(&self.family1, self.n.pow(4))
    }

    pub fn rank2(&self) -> usize {
        rank_of(&self.family2, self.n.pow(4))
    }

    /// Applies the counit z_ij -> delta_iN delta_jN: homogeneous relations
    /// must vanish and the normalization must give 1.
    pub fn epsilon_check(&self) -> Check {
        let last = self.n - 1;
        let top = self.pair_index(last, last, last, last);
        let bad = self
            .family1
            .iter()
            .chain(&self.family2)
            .position(|r| r.iter().any(|(p, x)| *p == top && !x.is_zero()));
        if let Some(b) = bad {
            return Check::fail("zrel counit on relations", format!("homogeneous relation {b}"));
        }
        let norm = &self.normalization[last * self.n + last];
        Check::from_bool("zrel counit on relations", norm.is_one(), || {
            format!("normalization gives {norm}")
        })
    }
}

fn rank_of(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = RowEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

fn push_sparse(acc: &mut BTreeMap<usize, LaurentRat>, p: usize, x: LaurentRat) {
    if !x.is_zero() {
        *acc.entry(p).or_default() += &x;
    }
}

fn finish(acc: BTreeMap<usize, LaurentRat>) -> SparseVec {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Applies a Levi generator to a degree-d tensor through the iterated
/// coproduct E (x) K + 1 (x) E, F (x) 1 + K^-1 (x) F, or its opposite
/// K (x) E + E (x) 1, 1 (x) F + F (x) K^-1.
fn act_on_tensor(
    n: usize,
    d: usize,
    op: &ExactMatrix,
    kexp: &[i64],
    raising: bool,
    opposite: bool,
    t: &[(usize, LaurentRat)],
) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (idx, x) in t {
        let mut digits = vec![0usize; d];
        let mut r = *idx;
        for p in (0..d).rev() {
            digits[p] = r % n;
            r /= n;
        }
        for p in 0..d {
            let left = raising == opposite;
            let range: Vec<usize> = if left { (0..p).collect() } else { (p + 1..d).collect() };
            let mut e: i64 = range.iter().map(|&a| kexp[digits[a]]).sum();
            if !raising {
                e = -e;
            }
            let scale = LaurentRat::q_pow(e);
            for row in 0..n {
                let c = op.get(row, digits[p]);
                if c.is_zero() {
                    continue;
                }
                let mut dg = digits.clone();
                dg[p] = row;
                let target = dg.iter().fold(0, |a, &g| a * n + g);
                push_sparse(&mut acc, target, &(x * c) * &scale);
            }
        }
    }
    finish(acc)
}

impl FlagContext {
    fn qpair(&self, a: &[i64], b: &[i64]) -> i64 {
        self.rs
            .pairing(&self.rs.root_to_weight(a), &self.rs.root_to_weight(b))
    }

    /// Relations of the coordinate ring of G/L_S: the two homogeneous
    /// families and the normalization.
    pub fn coordinate_relations(&self) -> CoordinateRelations {
        let n = self.n;
        let f = &self.fam;
        let zz = |a: usize, b: usize, c: usize, d: usize| (a * n + b) * n * n + c * n + d;
        let mut family1 = Vec::new();
        let mut family2 = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        // sum_m P-hat^{ij}_{nm} ra^{mk}_{pt} z_np z_tl
                        let mut acc = BTreeMap::new();
                        for nn in 0..n {
                            for m in 0..n {
                                let ph = f.p_hat.get(i * n + j, nn * n + m);
                                if ph.is_zero() {
                                    continue;
                                }
                                for p in 0..n {
                                    for t in 0..n {
                                        let r = f.ra.get(m * n + k, p * n + t);
                                        if !r.is_zero() {
                                            push_sparse(&mut acc, zz(nn, p, t, l), ph * r);
                                        }
                                    }
                                }
                            }
                        }
                        let row = finish(acc);
                        if !row.is_empty() {
                            family1.push(row);
                        }
                        // sum_m P-check^{kl}_{mt} ra^{jm}_{np} z_in z_pt
                        let mut acc = BTreeMap::new();
                        for m in 0..n {
                            for t in 0..n {
                                let pc = f.p_check.get(k * n + l, m * n + t);
                                if pc.is_zero() {
                                    continue;
                                }
                                for nn in 0..n {
                                    for p in 0..n {
                                        let r = f.ra.get(j * n + m, nn * n + p);
                                        if !r.is_zero() {
                                            push_sparse(&mut acc, zz(i, nn, p, t), pc * r);
                                        }
                                    }
                                }
                            }
                        }
                        let row = finish(acc);
                        if !row.is_empty() {
                            family2.push(row);
                        }
                    }
                }
            }
        }
        let ql = qp(self.lambda_sq);
        let normalization = f.c.iter().map(|c| c * &ql).collect();
        CoordinateRelations {
            n,
            family1,
            family2,
            normalization,
        }
    }

    /// S_q[G/P] on f_1..f_N and S_q[G/P^op] on v_1..v_N.
    pub fn sqgp_relations(&self) -> (QuadraticAlgebra, QuadraticAlgebra) {
        let n = self.n;
        let rows = |m: &ExactMatrix| -> Vec<SparseVec> {
            (0..n * n).map(|r| m.sparse_row(r)).filter(|r| !r.is_empty()).collect()
        };
        let f_labels = (1..=n).map(|i| format!("f{i}")).collect();
        let v_labels = (1..=n).map(|i| format!("v{i}")).collect();
        (
            QuadraticAlgebra::new(f_labels, &rows(&self.fam.p_hat)),
            QuadraticAlgebra::new(v_labels, &rows(&self.fam.p_check)),
        )
    }

    /// Mixed algebra on f_1..f_N, v_1..v_N (bigraded) and its central
    /// element c = sum_i v_i f_i.
    pub fn mixed_algebra(&self) -> Result<(QuadraticAlgebra, Vec<LaurentRat>)> {
        let n = self.n;
        let g = 2 * n;
        let (ff, vv) = self.sqgp_relations();
        let mut rels: Vec<SparseVec> = Vec::new();
        let lift = |r: &SparseVec, off: usize| -> SparseVec {
            r.iter()
                .map(|(p, x)| ((p / n + off) * g + p % n + off, x.clone()))
                .collect()
        };
        for r in ff.relations() {
            rels.push(lift(r, 0));
        }
        for r in vv.relations() {
            rels.push(lift(r, n));
        }
        let ql = qp(self.lambda_sq);
        for i in 0..n {
            for j in 0..n {
                // v_i f_j - q^{(l,l)} sum (rg^-)^{ij}_{kl} f_k v_l
                let mut acc = BTreeMap::new();
                push_sparse(&mut acc, (n + i) * g + j, LaurentRat::one());
                for k in 0..n {
                    for l in 0..n {
                        let r = self.fam.rg_minus.get(i * n + j, k * n + l);
                        if !r.is_zero() {
                            push_sparse(&mut acc, k * g + n + l, -(r * &ql));
                        }
                    }
                }
                rels.push(finish(acc));
            }
        }
        let labels = (1..=n)
            .map(|i| format!("f{i}"))
            .chain((1..=n).map(|i| format!("v{i}")))
            .collect();
        let mut grading = Vec::with_capacity(g);
        for i in 0..g {
            let mut tag = vec![(i < n) as i64, (i >= n) as i64];
            let w = if i < n { self.vd.weight(i) } else { self.v.weight(i - n) };
            tag.extend(w.iter().copied());
            grading.push(tag);
        }
        let alg = QuadraticAlgebra::new(labels, &rels).with_grading(grading)?;
        let mut c = vec![LaurentRat::zero(); g * g];
        for i in 0..n {
            c[(n + i) * g + i] = LaurentRat::one();
        }
        Ok((alg, c))
    }

    /// Positions of I_(1) indices in root order.
    fn root_position(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.n];
        for (b, &i) in self.root_index.iter().enumerate() {
            pos[i] = Some(b);
        }
        pos
    }

    /// Fiber algebra of the chosen calculus with relation-space dimensions
    /// asserted.
    pub fn fiber_presentation(&self, which: Calculus) -> Result<CalculusPresentation> {
        let n = self.n;
        let m = self.m();
        let pos = self.root_position();
        let i1: Vec<usize> = self.root_index.clone();
        let with_x = which != Calculus::Delbar;
        let with_y = which != Calculus::Del;
        let xoff = 0;
        let yoff = if with_x { m } else { 0 };
        let g = (with_x as usize + with_y as usize) * m;
        let restricted = |mat: &ExactMatrix, off: usize| -> Vec<SparseVec> {
            let mut out = Vec::new();
            for r in 0..n * n {
                let mut acc = BTreeMap::new();
                for (col, x) in mat.sparse_row(r) {
                    if let (Some(a), Some(b)) = (pos[col / n], pos[col % n]) {
                        push_sparse(&mut acc, (a + off) * g + b + off, x);
                    }
                }
                let row = finish(acc);
                if !row.is_empty() {
                    out.push(row);
                }
            }
            out
        };
        let expected_s = m * (m + 1) / 2;
        let mut rels = Vec::new();
        let mut s_del_dim = 0;
        let mut s_delbar_dim = 0;
        let mut j_dim = 0;
        if with_x {
            let s = restricted(&self.fam.q_hat, xoff);
            s_del_dim = rank_of(&s, g * g);
            check_rank("S_del", expected_s, s_del_dim)?;
            rels.extend(s);
        }
        if with_y {
            let s = restricted(&self.fam.q_check, yoff);
            s_delbar_dim = rank_of(&s, g * g);
            check_rank("S_delbar", expected_s, s_delbar_dim)?;
            rels.extend(s);
        }
        if with_x && with_y {
            let coeff = qp(self.lambda_sq - self.alpha_sq);
            let mut j = Vec::new();
            for &i in &i1 {
                for &jj in &i1 {
                    // y_i x_j + q^{(l,l)-(a,a)} sum (rg^-)^{ij}_{kl} x_k y_l
                    let mut acc = BTreeMap::new();
                    let (a, b) = (pos[i].unwrap(), pos[jj].unwrap());
                    push_sparse(&mut acc, (a + yoff) * g + b + xoff, LaurentRat::one());
                    for (col, x) in self.fam.rg_minus.sparse_row(i * n + jj) {
                        if let (Some(k), Some(l)) = (pos[col / n], pos[col % n]) {
                            push_sparse(&mut acc, (k + xoff) * g + l + yoff, x * &coeff);
                        }
                    }
                    j.push(finish(acc));
                }
            }
            j_dim = rank_of(&j, g * g);
            check_rank("J", m * m, j_dim)?;
            rels.extend(j);
        }
        let mut roots = Vec::new();
        let mut weights = Vec::new();
        let mut labels = Vec::new();
        let mut filtration = Vec::new();
        for (tag, sign, on) in [("x", 1i64, with_x), ("y", -1, with_y)] {
            if !on {
                continue;
            }
            for (b, beta) in self.par.complement.iter().enumerate() {
                roots.push(beta.clone());
                weights.push(self.rs.root_to_weight(beta).iter().map(|x| sign * x).collect());
                labels.push(format!("{tag}{}", b + 1));
                filtration.push(vec![1, -self.par.heights[b]]);
            }
        }
        let algebra = QuadraticAlgebra::new(labels, &rels)
            .with_grading(weights.clone())?
            .with_filtration(filtration);
        let vdd = dual_module(&self.vd);
        let mut levi = Vec::new();
        for &j in &self.par.levi {
            let mut e = ExactMatrix::zeros(g, g);
            let mut f = ExactMatrix::zeros(g, g);
            let blocks = [(with_x, xoff, &self.vd), (with_y, yoff, &vdd)];
            for (on, off, module) in blocks {
                if !on {
                    continue;
                }
                for (target, src) in [(&mut e, module.e(j)), (&mut f, module.f(j))] {
                    for (r, c, x) in src.entries() {
                        match (pos[r], pos[c]) {
                            (Some(a), Some(b)) => target.set(a + off, b + off, x.clone()),
                            (None, None) => {}
                            _ => {
                                return Err(Error::NotASubmodule(format!(
                                    "I_(1) is not stable under node {j}"
                                )))
                            }
                        }
                    }
                }
            }
            levi.push((j, e, f));
        }
        Ok(CalculusPresentation {
            which,
            algebra,
            roots,
            weights,
            levi,
            s_del_dim,
            s_delbar_dim,
            j_dim,
        })
    }

    pub fn derham_dims(&self, which: Calculus, maxdeg: usize) -> Result<DimensionReport> {
        Ok(self.fiber_presentation(which)?.algebra.graded_dims(maxdeg))
    }

    /// Graded q-commutation relations of the fiber algebra modulo terms of
    /// lower filtration degree: x_b x_g + q^{(b,g)} x_g x_b,
    /// y_b y_g + q^{-(b,g)} y_g y_b and y_b x_g + q^{-(b,g)} x_g y_b.
    pub fn graded_commutation_check(&self, which: Calculus) -> Result<Vec<Check>> {
        self.graded_check(which, [1, -1, -1], "")
    }

    /// The same relations with the exponent signs of the xx and yy families
    /// reversed, the form satisfied by the literal relation spaces.
    pub fn graded_commutation_mirrored(&self, which: Calculus) -> Result<Vec<Check>> {
        self.graded_check(which, [-1, 1, -1], " mirrored")
    }

    fn graded_check(&self, which: Calculus, signs: [i64; 3], tag: &str) -> Result<Vec<Check>> {
        let pres = self.fiber_presentation(which)?;
        let alg = &pres.algebra;
        let g = pres.generators();
        let m = self.m();
        let ht = &self.par.heights;
        let mut families: Vec<(&str, usize, usize, i64)> = Vec::new();
        // (name, offset of first factor, offset of second factor, sign of (beta,gamma))
        match which {
            Calculus::Del => families.push(("xx", 0, 0, signs[0])),
            Calculus::Delbar => families.push(("yy", 0, 0, signs[1])),
            Calculus::D => {
                families.push(("xx", 0, 0, signs[0]));
                families.push(("yy", m, m, signs[1]));
                families.push(("yx", m, 0, signs[2]));
            }
        }
        let mut out = Vec::new();
        for (name, o1, o2, sign) in families {
            let mut failures = Vec::new();
            for b in 0..m {
                for c in 0..m {
                    if o1 == o2 && ht[c] > ht[b] {
                        continue;
                    }
                    let (u, w) = (b + o1, c + o2);
                    let mut t = vec![LaurentRat::zero(); g * g];
                    t[u * g + w] += &LaurentRat::one();
                    let e = sign * self.qpair(&self.par.complement[b], &self.par.complement[c]);
                    t[w * g + u] += &qp(e);
                    let bound = alg.tensor_filtration(u, w)?;
                    if !alg.filtered_relation_check(&t, &bound)? {
                        failures.push(format!("({},{})", b + 1, c + 1));
                    }
                }
            }
            out.push(Check::from_bool(
                format!("graded {which} {name}{tag}"),
                failures.is_empty(),
                || format!("pairs {}", failures.join(" ")),
            ));
        }
        Ok(out)
    }

    /// Top-degree lines of the fiber algebras: the mixed top must be a
    /// trivial Levi module, the del top must carry a nonzero weight.
    pub fn volume_form_check(&self) -> Result<Vec<Check>> {
        let m = self.m();
        let mut out = Vec::new();
        let mixed = self.fiber_presentation(Calculus::D)?;
        out.push(levi_invariance(&self.rs, &mixed, true));
        let rep = mixed.algebra.graded_dims(2 * m);
        let top = rep.dim(2 * m);
        out.push(Check::from_bool("volume top dimension", top == 1, || {
            format!("dim {top}")
        }));
        if top == 1 {
            let word = &rep.basis_words(2 * m)[0];
            let w = word_weight(&mixed, word);
            out.push(Check::from_bool(
                "volume weight",
                w.iter().all(|&x| x == 0),
                || format!("weight {}", format_weight(&w)),
            ));
            out.push(levi_kills(&self.rs, &mixed, &rep, word));
        }
        let del = self.fiber_presentation(Calculus::Del)?;
        let rep = del.algebra.graded_dims(m);
        let top = rep.dim(m);
        if top == 1 {
            let w = word_weight(&del, &rep.basis_words(m)[0]);
            out.push(Check::from_bool(
                "del top weight nonzero",
                w.iter().any(|&x| x != 0),
                || "weight zero".into(),
            ));
        } else {
            out.push(Check::fail("del top weight nonzero", format!("dim {top}")));
        }
        Ok(out)
    }

    /// Restricted braiding identity for every pair of Levi-irreducible
    /// summands of V.
    pub fn restricted_check(&self) -> Result<Vec<(String, RestrictedBraid)>> {
        let levi = &self.par.levi;
        let lv = levi_restriction(&self.v, levi).module;
        let dec = isotypic_decomposition(&lv)?;
        let mut pieces = Vec::new();
        for comp in &dec {
            for (a, (emb, proj)) in comp.embeddings.iter().zip(&comp.projections).enumerate() {
                let name = format!("{}#{}", format_weight(&comp.weight), a);
                pieces.push((name, comp.irrep.clone(), emb.clone(), proj.clone()));
            }
        }
        let mut out = Vec::new();
        for (na, ia, ea, pa) in &pieces {
            for (nb, ib, eb, pb) in &pieces {
                let vp = LeviPiece {
                    irrep: ia,
                    embedding: ea,
                    projection: pa,
                };
                let wp = LeviPiece {
                    irrep: ib,
                    embedding: eb,
                    projection: pb,
                };
                let r = restricted_braid_check(&self.v, &self.v, levi, &vp, &wp)?;
                out.push((format!("{na} x {nb}"), r));
            }
        }
        Ok(out)
    }
}

fn check_rank(name: &str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::RankMismatch {
            name: name.into(),
            expected,
            got,
        });
    }
    Ok(())
}

fn word_weight(p: &CalculusPresentation, word: &[usize]) -> Weight {
    let mut w = vec![0; p.weights[0].len()];
    for &g in word {
        for (a, b) in w.iter_mut().zip(&p.weights[g]) {
            *a += b;
        }
    }
    w
}

fn kexps(rs: &RootSystem, p: &CalculusPresentation, j: usize) -> Vec<i64> {
    (0..p.generators()).map(|g| p.k_exponent(rs, g, j)).collect()
}

/// Each Levi generator maps the degree-2 relation space into itself.
pub fn levi_invariance(rs: &RootSystem, p: &CalculusPresentation, opposite: bool) -> Check {
    let g = p.generators();
    let rep = p.algebra.graded_dims(2);
    for (j, e, f) in &p.levi {
        let ke = kexps(rs, p, *j);
        for (raising, op) in [(true, e), (false, f)] {
            for (ri, r) in p.algebra.relations().iter().enumerate() {
                let img = act_on_tensor(g, 2, op, &ke, raising, opposite, r);
                if !rep.normal_form_sparse(2, &img).is_empty() {
                    return Check::fail(
                        format!("levi invariance {}", p.which),
                        format!("node {j} relation {ri}"),
                    );
                }
            }
        }
    }
    Check::ok(format!("levi invariance {}", p.which))
}

/// The Levi generators annihilate the class of `word`.
fn levi_kills(rs: &RootSystem, p: &CalculusPresentation, rep: &DimensionReport, word: &[usize]) -> Check {
    let g = p.generators();
    let d = word.len();
    let idx = word.iter().fold(0, |a, &x| a * g + x);
    for (j, e, f) in &p.levi {
        let ke = kexps(rs, p, *j);
        for (raising, op) in [(true, e), (false, f)] {
            let img = act_on_tensor(g, d, op, &ke, raising, true, &[(idx, LaurentRat::one())]);
            if !rep.normal_form_sparse(d, &img).is_empty() {
                let which = if raising { "E" } else { "F" };
                return Check::fail("volume levi trivial", format!("{which}{} acts", j + 1));
            }
        }
    }
    Check::ok("volume levi trivial")
}
