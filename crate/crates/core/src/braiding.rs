//! Braidings between weight modules and the R-matrix family of V(lambda).
//!
//! Matrix convention for a braiding V (x) W -> W (x) V: the entry in row
//! k * dim V + l, column i * dim W + j is the coefficient of w_k (x) v_l in the
//! image of v_i (x) w_j.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qfield::{ExactMatrix, LaurentRat};
use crate::repkit::{tensor_generator, Generator, WeightModule};
use crate::report::Check;
use crate::rootdata::RootSystem;

#[derive(Clone, Debug)]
pub struct BraidOp {
    pub dim_v: usize,
    pub dim_w: usize,
    pub matrix: ExactMatrix,
}

impl BraidOp {
    /// Coefficient of w_k (x) v_l in the image of v_i (x) w_j.
    pub fn entry(&self, k: usize, l: usize, i: usize, j: usize) -> &LaurentRat {
        self.matrix.get(k * self.dim_v + l, i * self.dim_w + j)
    }
}

/// Order in which basis vectors of `v` are processed: the highest weight
/// vector first, then by depth below it, ties by index.
fn processing_order(v: &WeightModule) -> Result<Vec<usize>> {
    let h = v
        .highest()
        .ok_or_else(|| Error::InvalidArgument("module without a highest weight vector".into()))?;
    let rs = v.root_system();
    let top = v.weight(h).clone();
    let mut order: Vec<(i64, usize)> = Vec::with_capacity(v.dim());
    for b in 0..v.dim() {
        let d = rs
            .depth(&top, v.weight(b))
            .ok_or_else(|| Error::InvalidArgument("weights outside one root coset".into()))?;
        order.push((d, b));
    }
    order.sort();
    Ok(order.into_iter().map(|(_, b)| b).collect())
}

/// The braiding V (x) W -> W (x) V determined by being a module map whose
/// value on v_max (x) w is `lead(wt v_max, wt w)` w (x) v_max.
pub fn braid_with<L>(v: &WeightModule, w: &WeightModule, lead: L) -> Result<BraidOp>
where
    L: Fn(&[i64], &[i64]) -> LaurentRat,
{
    let (dv, dw) = (v.dim(), w.dim());
    let rs = v.root_system().clone();
    let order = processing_order(v)?;
    let h = order[0];
    // blocks[b]: (dw*dv) x dw, the images of v_b (x) w_j
    let mut blocks: Vec<Option<ExactMatrix>> = vec![None; dv];
    let mut top = ExactMatrix::zeros(dw * dv, dw);
    for j in 0..dw {
        top.set(j * dv + h, j, lead(v.weight(h), w.weight(j)));
    }
    blocks[h] = Some(top);
    let gens: Vec<usize> = v.gens().to_vec();
    let delta_wv: Vec<ExactMatrix> = gens
        .iter()
        .map(|&i| tensor_generator(w, v, Generator::F(i)))
        .collect();
    let mut done: Vec<usize> = vec![h];
    for &b in order.iter().skip(1) {
        // write v_b as a combination of F_i v_c with c already processed
        let mut cand: Vec<(usize, usize)> = Vec::new();
        for (si, &i) in gens.iter().enumerate() {
            let ai = rs.simple_root(i);
            for &c in &done {
                let shifted: Vec<i64> = v.weight(c).iter().zip(&ai).map(|(x, a)| x - a).collect();
                if &shifted == v.weight(b) {
                    cand.push((si, c));
                }
            }
        }
        let cols: Vec<Vec<LaurentRat>> = cand
            .iter()
            .map(|&(si, c)| v.f(gens[si]).column(c))
            .collect();
        let a = ExactMatrix::from_columns(&cols, dv);
        let mut target = vec![LaurentRat::zero(); dv];
        target[b] = LaurentRat::one();
        let coeffs = a.solve(&target).map_err(|_| Error::PropagationFailure(b))?;
        let mut block = ExactMatrix::zeros(dw * dv, dw);
        for (&(si, c), x) in cand.iter().zip(&coeffs) {
            if x.is_zero() {
                continue;
            }
            let i = gens[si];
            let prev = blocks[c].as_ref().unwrap();
            let kq = LaurentRat::q_pow(-v.k_exponent(c, i));
            let term = delta_wv[si]
                .mul(prev)
                .sub(&prev.mul(w.f(i)).scale(&kq));
            block = block.add(&term.scale(x));
        }
        blocks[b] = Some(block);
        done.push(b);
    }
    let mut m = ExactMatrix::zeros(dw * dv, dv * dw);
    for (b, block) in blocks.iter().enumerate() {
        let block = block.as_ref().unwrap();
        for (r, j, x) in block.entries() {
            m.set(r, b * dw + j, x.clone());
        }
    }
    for g in v.generators() {
        let lhs = m.mul(&tensor_generator(v, w, g));
        let rhs = tensor_generator(w, v, g).mul(&m);
        if lhs != rhs {
            return Err(Error::PropagationFailure(usize::MAX));
        }
    }
    Ok(BraidOp {
        dim_v: dv,
        dim_w: dw,
        matrix: m,
    })
}

/// The braiding of U_q(g)-modules, leading coefficient q^{(wt v, wt w)}.
pub fn braid(v: &WeightModule, w: &WeightModule) -> Result<BraidOp> {
    let rs = v.root_system().clone();
    let sc = v.exp_scale();
    braid_with(v, w, |a, b| LaurentRat::q_pow(sc * rs.pairing(a, b)))
}

/// Triangularity symbols of the R-matrix table. For an entry X^{ij}_{kl}
/// (row (i,j), column (k,l)) off the swap position (i,j) = (l,k), the symbol
/// requires, with "a > b" meaning wt(v_a) - wt(v_b) is a nonzero sum of
/// positive roots: `Lt`: j>k, l>i; `Gt`: k>j, i>l; `Wedge`: k>j, l>i;
/// `Vee`: j>k, i>l.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangularity {
    Lt,
    Gt,
    Wedge,
    Vee,
}

impl fmt::Display for Triangularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Triangularity::Lt => "<",
            Triangularity::Gt => ">",
            Triangularity::Wedge => "^",
            Triangularity::Vee => "v",
        };
        write!(f, "{s}")
    }
}

/// First entry of an N^2 x N^2 matrix violating `pattern`, given the weights
/// of the v-basis.
pub fn triangularity_violation(
    rs: &RootSystem,
    m: &ExactMatrix,
    weights: &[Vec<i64>],
    pattern: Triangularity,
) -> Option<(usize, usize, usize, usize)> {
    let n = weights.len();
    let above = |a: usize, b: usize| rs.strictly_above(&weights[a], &weights[b]);
    for (r, c, _) in m.entries() {
        let (i, j, k, l) = (r / n, r % n, c / n, c % n);
        if i == l && j == k {
            continue;
        }
        let ok = match pattern {
            Triangularity::Lt => above(j, k) && above(l, i),
            Triangularity::Gt => above(k, j) && above(i, l),
            Triangularity::Wedge => above(k, j) && above(l, i),
            Triangularity::Vee => above(j, k) && above(i, l),
        };
        if !ok {
            return Some((i, j, k, l));
        }
    }
    None
}

/// The eight R-matrices of V = V(lambda) and V*, with v_N the highest weight
/// vector of V and f_N its dual functional.
#[derive(Clone, Debug)]
pub struct RFamily {
    pub n: usize,
    /// (lambda, lambda)
    pub lambda_sq: i64,
    /// (alpha_s, alpha_s)
    pub alpha_sq: i64,
    pub rh: ExactMatrix,
    pub rc: ExactMatrix,
    pub ra_minus: ExactMatrix,
    pub rg_minus: ExactMatrix,
    pub rh_inv: ExactMatrix,
    pub rc_inv: ExactMatrix,
    pub ra: ExactMatrix,
    pub rg: ExactMatrix,
    pub p_hat: ExactMatrix,
    pub q_hat: ExactMatrix,
    pub p_check: ExactMatrix,
    pub q_check: ExactMatrix,
    /// C_{kl} = sum_i (rg^-)^{ii}_{kl}, indexed k * N + l.
    pub c: Vec<LaurentRat>,
}

/// Names accepted by [`RFamily::get`].
pub const RMATRIX_KINDS: [&str; 8] = [
    "rh", "rc", "ra", "raminus", "rg", "rgminus", "rhminus", "rcminus",
];

impl RFamily {
    pub fn new(v: &WeightModule, vd: &WeightModule, lambda_sq: i64, alpha_sq: i64) -> Result<Self> {
        let n = v.dim();
        let rh = braid(v, v)?.matrix;
        let rc = braid(vd, vd)?.matrix;
        let ra_minus = braid(vd, v)?.matrix;
        let rg_minus = braid(v, vd)?.matrix;
        let id = ExactMatrix::identity(n * n);
        let ql = LaurentRat::q_pow(lambda_sq);
        let qla = LaurentRat::q_pow(lambda_sq - alpha_sq);
        let c = (0..n * n)
            .map(|kl| (0..n).map(|i| rg_minus.get(i * n + i, kl).clone()).sum())
            .collect();
        Ok(RFamily {
            n,
            lambda_sq,
            alpha_sq,
            rh_inv: rh.inverse()?,
            rc_inv: rc.inverse()?,
            ra: rg_minus.inverse()?,
            rg: ra_minus.inverse()?,
            p_hat: rh.sub(&id.scale(&ql)),
            q_hat: rh.add(&id.scale(&qla)),
            p_check: rc.sub(&id.scale(&ql)),
            q_check: rc.add(&id.scale(&qla)),
            rh,
            rc,
            ra_minus,
            rg_minus,
            c,
        })
    }

    pub fn get(&self, kind: &str) -> Option<&ExactMatrix> {
        Some(match kind {
            "rh" => &self.rh,
            "rc" => &self.rc,
            "ra" => &self.ra,
            "raminus" => &self.ra_minus,
            "rg" => &self.rg,
            "rgminus" => &self.rg_minus,
            "rhminus" => &self.rh_inv,
            "rcminus" => &self.rc_inv,
            _ => return None,
        })
    }

    /// The braiding between the factors `x`, `y` where `false` is V and
    /// `true` is V*.
    fn braid_of(&self, x: bool, y: bool) -> &ExactMatrix {
        match (x, y) {
            (false, false) => &self.rh,
            (true, true) => &self.rc,
            (true, false) => &self.ra_minus,
            (false, true) => &self.rg_minus,
        }
    }

    /// Adds `delta` to one entry of rh and recomputes the matrices derived
    /// from it. Used for mutation tests.
    pub fn perturb_rh(&mut self, row: usize, col: usize, delta: &LaurentRat) -> Result<()> {
        self.rh.add_to(row, col, delta);
        self.p_hat.add_to(row, col, delta);
        self.q_hat.add_to(row, col, delta);
        self.rh_inv = self.rh.inverse()?;
        Ok(())
    }

    pub fn c_row(&self) -> ExactMatrix {
        ExactMatrix::from_rows(vec![self.c.clone()])
    }

    /// Triangularity symbols of the family in table order rh, rh^-, ra,
    /// ra^-, rc, rc^-, rg, rg^-.
    pub fn triangularity_patterns() -> [(&'static str, Triangularity); 8] {
        use Triangularity::*;
        [
            ("rh", Lt),
            ("rhminus", Gt),
            ("ra", Vee),
            ("raminus", Wedge),
            ("rc", Gt),
            ("rcminus", Lt),
            ("rg", Wedge),
            ("rgminus", Vee),
        ]
    }
}

fn first_diff(a: &ExactMatrix, b: &ExactMatrix) -> Option<String> {
    a.first_difference(b).map(|(r, c)| format!("row {r}, col {c}"))
}

/// Braid relations on triple tensor products: the pure one for R-hat and
/// the mixed ones for every choice of factors from {V, V*}.
pub fn verify_ybe(fam: &RFamily) -> Vec<Check> {
    let n = fam.n;
    let id = ExactMatrix::identity(n);
    let mut out = Vec::new();
    let r12 = fam.rh.kron(&id);
    let r23 = id.kron(&fam.rh);
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    out.push(match first_diff(&lhs, &rhs) {
        None => Check::ok("ybe rh"),
        Some(w) => Check::fail("ybe rh", w),
    });
    for mask in 0..8u8 {
        let u = mask & 4 != 0;
        let v = mask & 2 != 0;
        let w = mask & 1 != 0;
        // (rho_VW x 1)(1 x rho_UW)(rho_UV x 1) = (1 x rho_UV)(rho_UW x 1)(1 x rho_VW)
        let lhs = fam
            .braid_of(v, w)
            .kron(&id)
            .mul(&id.kron(fam.braid_of(u, w)))
            .mul(&fam.braid_of(u, v).kron(&id));
        let rhs = id
            .kron(fam.braid_of(u, v))
            .mul(&fam.braid_of(u, w).kron(&id))
            .mul(&id.kron(fam.braid_of(v, w)));
        let name = format!(
            "braid relation {}{}{}",
            if u { "V*" } else { "V" },
            if v { "V*" } else { "V" },
            if w { "V*" } else { "V" }
        );
        out.push(match first_diff(&lhs, &rhs) {
            None => Check::ok(name),
            Some(wit) => Check::fail(name, wit),
        });
    }
    out
}

/// C_23 rg^-_12 = C_12 rc^-_23 and C_23 rh^-_12 = C_12 rg^-_23 as maps from
/// triple tensors to single factors.
pub fn verify_crels(fam: &RFamily) -> Vec<Check> {
    let id = ExactMatrix::identity(fam.n);
    let c = fam.c_row();
    let first_l = id.kron(&c).mul(&fam.rg_minus.kron(&id));
    let first_r = c.kron(&id).mul(&id.kron(&fam.rc_inv));
    let second_l = id.kron(&c).mul(&fam.rh_inv.kron(&id));
    let second_r = c.kron(&id).mul(&id.kron(&fam.rg_minus));
    vec![
        match first_diff(&first_l, &first_r) {
            None => Check::ok("C23 rg-12 = C12 rc-23"),
            Some(w) => Check::fail("C23 rg-12 = C12 rc-23", w),
        },
        match first_diff(&second_l, &second_r) {
            None => Check::ok("C23 rh-12 = C12 rg-23"),
            Some(w) => Check::fail("C23 rh-12 = C12 rg-23", w),
        },
    ]
}

/// Checks every matrix of the family against its triangularity symbol.
pub fn verify_triangularity(fam: &RFamily, rs: &RootSystem, weights: &[Vec<i64>]) -> Vec<Check> {
    RFamily::triangularity_patterns()
        .iter()
        .map(|(name, pat)| {
            let m = fam.get(name).unwrap();
            let label = format!("triangularity {name} {pat}");
            match triangularity_violation(rs, m, weights, *pat) {
                None => Check::ok(label),
                Some(w) => Check::fail(label, format!("entry {w:?}")),
            }
        })
        .collect()
}

/// Data of one irreducible Levi submodule: the abstract Levi irrep together
/// with its embedding into and idempotent projection from the ambient module.
#[derive(Clone, Debug)]
pub struct LeviPiece<'a> {
    pub irrep: &'a WeightModule,
    pub embedding: &'a ExactMatrix,
    pub projection: &'a ExactMatrix,
}

/// Outcome of the restricted braiding identity.
#[derive(Clone, Debug)]
pub struct RestrictedBraid {
    /// Exponent c with (p_W (x) p_V) rho |_{V'(x)W'} = q^c rho^k.
    pub exponent: Ratio<i64>,
    pub pass: bool,
}

fn levi_form(rs: &RootSystem, levi: &[usize], nu: &[i64], mu: &[i64]) -> Ratio<i64> {
    let s = levi.len();
    if s == 0 {
        return Ratio::zero();
    }
    // B_S = ((a_i, a_j))_{i,j in S}, inverted over the rationals
    let mut m: Vec<Vec<Ratio<i64>>> = (0..s)
        .map(|a| {
            let ra = rs.simple_root(levi[a]);
            let mut row: Vec<Ratio<i64>> = (0..s)
                .map(|b| Ratio::from_integer(rs.pairing(&ra, &rs.simple_root(levi[b]))))
                .collect();
            row.extend((0..s).map(|b| Ratio::from_integer((a == b) as i64)));
            row
        })
        .collect();
    for c in 0..s {
        let p = (c..s).find(|&r| !m[r][c].is_zero()).unwrap();
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..s {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..2 * s {
                    let t = m[c][k] * f;
                    m[r][k] -= t;
                }
            }
        }
    }
    let x: Vec<i64> = levi.iter().map(|&i| rs.pairing_simple(nu, i)).collect();
    let y: Vec<i64> = levi.iter().map(|&i| rs.pairing_simple(mu, i)).collect();
    let mut total = Ratio::zero();
    for a in 0..s {
        for b in 0..s {
            total += m[a][s + b] * x[a] * y[b];
        }
    }
    total
}

/// Compares the projected braiding of V, W on Levi submodules V', W' with
/// the Levi braiding of V', W' rescaled by a power of q.
pub fn restricted_braid_check(
    v: &WeightModule,
    w: &WeightModule,
    levi: &[usize],
    vp: &LeviPiece,
    wp: &LeviPiece,
) -> Result<RestrictedBraid> {
    let rs = v.root_system().clone();
    for (name, piece, amb) in [("V'", vp, v), ("W'", wp, w)] {
        let amb_levi = crate::repkit::levi_restriction(amb, levi).module;
        if !crate::repkit::is_module_map(piece.embedding, piece.irrep, &amb_levi)
            || !crate::repkit::is_module_map(piece.projection, &amb_levi, piece.irrep)
        {
            return Err(Error::NotASubmodule(name.into()));
        }
    }
    let rho = braid(v, w)?.matrix;
    let lhs = wp
        .projection
        .kron(vp.projection)
        .mul(&rho)
        .mul(&vp.embedding.kron(wp.embedding));
    let hv = vp.irrep.weight(vp.irrep.highest().unwrap()).clone();
    let hw = wp.irrep.weight(wp.irrep.highest().unwrap()).clone();
    let exponent = Ratio::from_integer(rs.pairing(&hv, &hw)) - levi_form(&rs, levi, &hv, &hw);
    // work in t = q^{1/d} so that half-integral Levi exponents are Laurent
    let mut d = *exponent.denom();
    for a in vp.irrep.weights() {
        for b in wp.irrep.weights() {
            d = num_integer::lcm(d, *levi_form(&rs, levi, a, b).denom());
        }
    }
    let vt = vp.irrep.rescaled(d);
    let wt = wp.irrep.rescaled(d);
    let rs2 = rs.clone();
    let levi_owned = levi.to_vec();
    let rho_k = braid_with(&vt, &wt, move |a, b| {
        let e = levi_form(&rs2, &levi_owned, a, b) * d;
        LaurentRat::q_pow(e.to_integer())
    })?
    .matrix;
    let scale = LaurentRat::q_pow((exponent * d).to_integer());
    let mut lhs_t = ExactMatrix::zeros(lhs.rows(), lhs.cols());
    for (r, c, x) in lhs.entries() {
        lhs_t.set(r, c, x.scale_exponents(d));
    }
    Ok(RestrictedBraid {
        exponent,
        pass: lhs_t == rho_k.scale(&scale),
    })
}
