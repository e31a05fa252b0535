//! Matrix coefficients c_{f,x}(u) = f(u x) of finite-dimensional modules,
//! compared through their Peter-Weyl canonical form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::braiding::RFamily;
use crate::error::Result;
use crate::flagcalc::{CoordinateRelations, FlagContext};
use crate::qfield::{ExactMatrix, LaurentRat};
use crate::repkit::{build_irrep, cached_irrep, isotypic_decomposition, tensor, Generator, Isotypic, WeightModule};
use crate::report::Check;
use crate::rootdata::Weight;

/// One summand c_{f,x} on the module W.
#[derive(Clone, Debug)]
pub struct MCTerm {
    pub module: Arc<WeightModule>,
    pub f: Vec<LaurentRat>,
    pub x: Vec<LaurentRat>,
}

/// Canonical form: for each dominant weight mu an element of
/// V(mu)* (x) V(mu), stored as the matrix of coefficients of c_{e_a*, e_b}.
pub type Canonical = BTreeMap<Weight, ExactMatrix>;

#[derive(Debug, Default)]
pub struct MCElement {
    terms: Vec<MCTerm>,
    canonical: OnceLock<Canonical>,
}

impl Clone for MCElement {
    fn clone(&self) -> Self {
        MCElement {
            terms: self.terms.clone(),
            canonical: self.canonical.clone(),
        }
    }
}

type Key = (usize, usize);

struct Caches {
    decomposition: HashMap<usize, (Arc<WeightModule>, Arc<Vec<Isotypic>>)>,
    tensor: HashMap<Key, (Arc<WeightModule>, Arc<WeightModule>, Arc<WeightModule>)>,
}

fn caches() -> &'static Mutex<Caches> {
    static C: OnceLock<Mutex<Caches>> = OnceLock::new();
    C.get_or_init(|| {
        Mutex::new(Caches {
            decomposition: HashMap::new(),
            tensor: HashMap::new(),
        })
    })
}

fn ptr(m: &Arc<WeightModule>) -> usize {
    Arc::as_ptr(m) as usize
}

/// Isotypic decomposition of a shared module, computed once per module.
pub fn decomposition(m: &Arc<WeightModule>) -> Result<Arc<Vec<Isotypic>>> {
    if let Some((_, d)) = caches().lock().unwrap().decomposition.get(&ptr(m)) {
        return Ok(d.clone());
    }
    let d = Arc::new(isotypic_decomposition(m)?);
    caches()
        .lock()
        .unwrap()
        .decomposition
        .insert(ptr(m), (m.clone(), d.clone()));
    Ok(d)
}

/// Tensor product of two shared modules; repeated calls return the same Arc.
pub fn shared_tensor(a: &Arc<WeightModule>, b: &Arc<WeightModule>) -> Arc<WeightModule> {
    let key = (ptr(a), ptr(b));
    if let Some((_, _, t)) = caches().lock().unwrap().tensor.get(&key) {
        return t.clone();
    }
    let t = Arc::new(tensor(a, b));
    caches()
        .lock()
        .unwrap()
        .tensor
        .insert(key, (a.clone(), b.clone(), t.clone()));
    t
}

fn kron_vec(a: &[LaurentRat], b: &[LaurentRat]) -> Vec<LaurentRat> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() {
                LaurentRat::zero()
            } else {
                x * y
            });
        }
    }
    out
}

fn dot(a: &[LaurentRat], b: &[LaurentRat]) -> LaurentRat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

impl MCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mc(module: Arc<WeightModule>, f: Vec<LaurentRat>, x: Vec<LaurentRat>) -> Self {
        assert_eq!(f.len(), module.dim());
        assert_eq!(x.len(), module.dim());
        MCElement {
            terms: vec![MCTerm { module, f, x }],
            canonical: OnceLock::new(),
        }
    }

    pub fn terms(&self) -> &[MCTerm] {
        &self.terms
    }

    pub fn add(&self, other: &MCElement) -> MCElement {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MCElement {
            terms,
            canonical: OnceLock::new(),
        }
    }

    pub fn scale(&self, c: &LaurentRat) -> MCElement {
        MCElement {
            terms: self
                .terms
                .iter()
                .map(|t| MCTerm {
                    module: t.module.clone(),
                    f: t.f.iter().map(|x| x * c).collect(),
                    x: t.x.clone(),
                })
                .collect(),
            canonical: OnceLock::new(),
        }
    }

    pub fn sub(&self, other: &MCElement) -> MCElement {
        self.add(&other.scale(&-LaurentRat::one()))
    }

    /// Linear combination sum c_k e_k.
    pub fn combination<'a>(items: impl IntoIterator<Item = (&'a LaurentRat, &'a MCElement)>) -> MCElement {
        let mut out = MCElement::zero();
        for (c, e) in items {
            if !c.is_zero() {
                out.terms.extend(e.scale(c).terms);
            }
        }
        out
    }

    /// c_{f,x} c_{g,y} = c_{f (x) g, x (x) y} on W (x) W'.
    pub fn product(&self, other: &MCElement) -> MCElement {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(MCTerm {
                    module: shared_tensor(&a.module, &b.module),
                    f: kron_vec(&a.f, &b.f),
                    x: kron_vec(&a.x, &b.x),
                });
            }
        }
        MCElement {
            terms,
            canonical: OnceLock::new(),
        }
    }

    /// Direct evaluation on a word in the generators (rightmost first).
    pub fn evaluate(&self, word: &[Generator]) -> LaurentRat {
        self.terms
            .iter()
            .map(|t| dot(&t.f, &t.module.word_matrix(word).mul_vec(&t.x)))
            .sum()
    }

    pub fn canonical(&self) -> Result<&Canonical> {
        if let Some(c) = self.canonical.get() {
            return Ok(c);
        }
        let c = self.compute_canonical()?;
        let _ = self.canonical.set(c);
        Ok(self.canonical.get().unwrap())
    }

    fn compute_canonical(&self) -> Result<Canonical> {
        // merge summands sharing module and vector
        let mut groups: Vec<(Arc<WeightModule>, Vec<LaurentRat>, Vec<LaurentRat>)> = Vec::new();
        for t in &self.terms {
            match groups
                .iter_mut()
                .find(|(m, x, _)| Arc::ptr_eq(m, &t.module) && *x == t.x)
            {
                Some(g) => {
                    for (a, b) in g.2.iter_mut().zip(&t.f) {
                        *a += b;
                    }
                }
                None => groups.push((t.module.clone(), t.x.clone(), t.f.clone())),
            }
        }
        let mut out: Canonical = BTreeMap::new();
        for (module, x, f) in groups {
            if f.iter().all(|c| c.is_zero()) || x.iter().all(|c| c.is_zero()) {
                continue;
            }
            for comp in decomposition(&module)?.iter() {
                let d = comp.irrep.dim();
                for (emb, proj) in comp.embeddings.iter().zip(&comp.projections) {
                    let g = emb.transpose().mul_vec(&f);
                    let y = proj.mul_vec(&x);
                    if g.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let entry = out
                        .entry(comp.weight.clone())
                        .or_insert_with(|| ExactMatrix::zeros(d, d));
                    for (a, ga) in g.iter().enumerate() {
                        if ga.is_zero() {
                            continue;
                        }
                        for (b, yb) in y.iter().enumerate() {
                            if !yb.is_zero() {
                                entry.add_to(a, b, &(ga * yb));
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, m| !m.is_zero());
        Ok(out)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.canonical()?.is_empty())
    }

    pub fn equals(&self, other: &MCElement) -> Result<bool> {
        Ok(self.canonical()? == other.canonical()?)
    }

    /// Evaluation through the canonical form.
    pub fn evaluate_canonical(&self, word: &[Generator]) -> Result<LaurentRat> {
        let mut total = LaurentRat::zero();
        let Some(first) = self.terms.first() else {
            return Ok(total);
        };
        let (rs, gens) = (first.module.root_system(), first.module.gens());
        for (mu, m) in self.canonical()? {
            let u = cached_irrep(rs, mu, gens)?.word_matrix(word);
            for (a, b, c) in m.entries() {
                total += &(c * u.get(a, b));
            }
        }
        Ok(total)
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<LaurentRat> {
    let mut v = vec![LaurentRat::zero(); n];
    v[i] = LaurentRat::one();
    v
}

/// Shared modules of one flag context: V, V*, V (x) V* and the trivial module.
#[derive(Clone, Debug)]
pub struct CoeffModel {
    pub n: usize,
    pub lambda_sq: i64,
    pub v: Arc<WeightModule>,
    pub vd: Arc<WeightModule>,
    pub trivial: Arc<WeightModule>,
}

impl CoeffModel {
    pub fn new(ctx: &FlagContext) -> Result<Self> {
        let zero = vec![0; ctx.rs.rank()];
        Ok(CoeffModel {
            n: ctx.n,
            lambda_sq: ctx.lambda_sq,
            v: Arc::new(ctx.v.clone()),
            vd: Arc::new(ctx.vd.clone()),
            trivial: Arc::new(build_irrep(&ctx.rs, &zero)?),
        })
    }

    pub fn unit(&self) -> MCElement {
        MCElement::mc(self.trivial.clone(), vec![LaurentRat::one()], vec![LaurentRat::one()])
    }

    /// c^lambda_{f_i, v_N}.
    pub fn c_fv(&self, i: usize) -> MCElement {
        let n = self.n;
        MCElement::mc(self.v.clone(), unit_vec(n, i), unit_vec(n, n - 1))
    }

    /// c^{-w0 lambda}_{v_j, f_N}, v_j read as a functional on V*.
    pub fn c_vf(&self, j: usize) -> MCElement {
        let n = self.n;
        MCElement::mc(self.vd.clone(), unit_vec(n, j), unit_vec(n, n - 1))
    }

    /// z_ij = c^lambda_{f_i, v_N} c^{-w0 lambda}_{v_j, f_N}.
    pub fn z_generator(&self, i: usize, j: usize) -> MCElement {
        self.c_fv(i).product(&self.c_vf(j))
    }

    /// Element sum a_{pq} z_a z_b of a relation tensor (index a * N^2 + b).
    pub fn quadratic(&self, rel: &[(usize, LaurentRat)], z: &[MCElement]) -> MCElement {
        let n2 = self.n * self.n;
        let mut out = MCElement::zero();
        for (p, c) in rel {
            out = out.add(&z[p / n2].product(&z[p % n2]).scale(c));
        }
        out
    }

    /// c^{-w0 lambda}_{v_i,f_N} c^lambda_{f_j,v_N} minus the right hand side
    /// q^{e} sum m^{ij}_{kl} c^lambda_{f_k,v_N} c^{-w0 lambda}_{v_l,f_N}.
    pub fn straightening_defect(&self, m: &ExactMatrix, e: i64, i: usize, j: usize) -> MCElement {
        let n = self.n;
        let lhs = self.c_vf(i).product(&self.c_fv(j));
        let scale = LaurentRat::q_pow(e);
        let mut rhs = MCElement::zero();
        for (col, x) in m.sparse_row(i * n + j) {
            let (k, l) = (col / n, col % n);
            rhs = rhs.add(&self.c_fv(k).product(&self.c_vf(l)).scale(&(&x * &scale)));
        }
        lhs.sub(&rhs)
    }
}

/// z-relations, normalization, counit values and the straightening identity
/// as identities of matrix coefficients.
pub fn verify_z_relations(ctx: &FlagContext) -> Result<Vec<Check>> {
    verify_relations(ctx, &ctx.coordinate_relations(), &ctx.fam)
}

/// As [`verify_z_relations`] for explicitly supplied relation data.
pub fn verify_relations(
    ctx: &FlagContext,
    rels: &CoordinateRelations,
    fam: &RFamily,
) -> Result<Vec<Check>> {
    let model = CoeffModel::new(ctx)?;
    let n = model.n;
    let z: Vec<MCElement> = (0..n * n)
        .map(|p| model.z_generator(p / n, p % n))
        .collect();
    let mut out = Vec::new();
    for (name, fam_rows) in [("zrel P-hat ra", &rels.family1), ("zrel P-check ra", &rels.family2)] {
        let mut bad = None;
        for (idx, r) in fam_rows.iter().enumerate() {
            if !model.quadratic(r, &z).is_zero()? {
                bad = Some(idx);
                break;
            }
        }
        out.push(Check::from_bool(name, bad.is_none(), || {
            format!("relation {}", bad.unwrap())
        }));
    }
    let norm = MCElement::combination(rels.normalization.iter().zip(&z));
    out.push(Check::from_bool(
        "zrel normalization",
        norm.equals(&model.unit())?,
        || "sum differs from 1".into(),
    ));
    let mut eps_bad = None;
    for (p, zp) in z.iter().enumerate() {
        let want = if p == n * n - 1 { LaurentRat::one() } else { LaurentRat::zero() };
        if zp.evaluate(&[]) != want || zp.evaluate_canonical(&[])? != want {
            eps_bad = Some(p);
            break;
        }
    }
    out.push(Check::from_bool("zrel epsilon", eps_bad.is_none(), || {
        let p = eps_bad.unwrap();
        format!("z{}{}", p / n + 1, p % n + 1)
    }));
    let mut lam_bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if !model
                .straightening_defect(&fam.rg_minus, ctx.lambda_sq, i, j)
                .is_zero()?
            {
                lam_bad = Some((i, j));
                break 'outer;
            }
        }
    }
    out.push(Check::from_bool("c-lamclam", lam_bad.is_none(), || {
        let (i, j) = lam_bad.unwrap();
        format!("(i,j) = ({},{})", i + 1, j + 1)
    }));
    Ok(out)
}
