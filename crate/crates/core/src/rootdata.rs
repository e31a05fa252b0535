//! Finite root systems, the integrally rescaled invariant form and parabolic data.
//!
//! Weights are integer vectors in fundamental-weight coordinates. Elements of
//! the root lattice that are handed around as "roots" use simple-root
//! coordinates instead; `root_to_weight` converts.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type Q64 = Ratio<i64>;

/// Weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::InvalidArgument(format!("unknown Lie type {other:?}"))),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Dimension of the simple Lie algebra of the given type and rank.
pub fn lie_algebra_dimension(t: LieType, n: usize) -> Option<usize> {
    Some(match t {
        LieType::A => n * (n + 2),
        LieType::B | LieType::C => n * (2 * n + 1),
        LieType::D => n * (2 * n - 1),
        LieType::E => match n {
            6 => 78,
            7 => 133,
            8 => 248,
            _ => return None,
        },
        LieType::F if n == 4 => 52,
        LieType::G if n == 2 => 14,
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    half_norms: Vec<Q64>,
    gram: Vec<Vec<i64>>,
    rescale: i64,
    dprime: Vec<i64>,
    cartan_inv: Vec<Vec<Q64>>,
    positive_roots: Vec<Vec<i64>>,
}

fn valid(t: LieType, n: usize) -> bool {
    match t {
        LieType::A => n >= 1,
        LieType::B => n >= 2,
        LieType::C => n >= 3 || n == 2,
        LieType::D => n >= 4,
        LieType::E => (6..=8).contains(&n),
        LieType::F => n == 4,
        LieType::G => n == 2,
    }
}

/// Dynkin edges (0-based) and half square lengths normalized so that long
/// roots have square length 2.
fn dynkin(t: LieType, n: usize) -> (Vec<(usize, usize)>, Vec<Q64>) {
    let one = Q64::one();
    let half = Q64::new(1, 2);
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match t {
        LieType::A => (chain(n), vec![one; n]),
        LieType::B => {
            let mut d = vec![one; n];
            d[n - 1] = half;
            (chain(n), d)
        }
        LieType::C => {
            let mut d = vec![half; n];
            d[n - 1] = one;
            (chain(n), d)
        }
        LieType::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (e, vec![one; n])
        }
        LieType::E => {
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                e.push((i, i + 1));
            }
            (e, vec![one; n])
        }
        LieType::F => (chain(4), vec![one, one, half, half]),
        LieType::G => (chain(2), vec![Q64::new(1, 3), one]),
    }
}

fn invert_rational(a: &[Vec<i64>]) -> Vec<Vec<Q64>> {
    let n = a.len();
    let mut m: Vec<Vec<Q64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q64> = row.iter().map(|&x| Q64::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q64::one() } else { Q64::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular Cartan matrix");
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..2 * n {
                    let t = m[c][k] * f;
                    m[r][k] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(label: LieType, rank: usize) -> Result<Self> {
        if !valid(label, rank) {
            return Err(Error::InvalidArgument(format!(
                "{label}{rank} is not a finite type"
            )));
        }
        let (edges, d) = dynkin(label, rank);
        // symmetric form on simple roots: (a_i, a_i) = 2 d_i, bonded pairs -max(d)
        let mut b = vec![vec![Q64::zero(); rank]; rank];
        for i in 0..rank {
            b[i][i] = d[i] * 2;
        }
        for &(i, j) in &edges {
            let m = d[i].max(d[j]);
            b[i][j] = -m;
            b[j][i] = -m;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let x = b[i][j] * 2 / b[i][i];
                        assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let cartan_inv = invert_rational(&cartan);
        // Gram matrix of fundamental weights: D A^{-1}
        let g: Vec<Vec<Q64>> = (0..rank)
            .map(|i| (0..rank).map(|j| d[i] * cartan_inv[i][j]).collect())
            .collect();
        let rescale = g
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let gram: Vec<Vec<i64>> = g
            .iter()
            .map(|r| r.iter().map(|x| (*x * rescale).to_integer()).collect())
            .collect();
        let dprime: Vec<i64> = d
            .iter()
            .map(|x| {
                let y = *x * rescale;
                assert!(y.is_integer());
                y.to_integer()
            })
            .collect();
        let mut rs = RootSystem {
            label,
            rank,
            cartan,
            half_norms: d,
            gram,
            rescale,
            dprime,
            cartan_inv,
            positive_roots: Vec::new(),
        };
        rs.positive_roots = rs.enumerate_positive_roots();
        Ok(rs)
    }

    fn enumerate_positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect()];
        let mut all: std::collections::BTreeSet<Vec<i64>> = layers[0].iter().cloned().collect();
        loop {
            let mut next = std::collections::BTreeSet::new();
            for beta in layers.last().unwrap() {
                for i in 0..r {
                    // length of the i-string below beta
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if all.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..r).map(|j| beta[j] * self.cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layers.push(next.into_iter().collect());
        }
        // layers are already height-ordered and lexicographic inside a layer
        layers.into_iter().flatten().collect()
    }

    pub fn label(&self) -> LieType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan entry a_ij = 2(a_i, a_j)/(a_i, a_i), 0-based.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Half square lengths before rescaling (long roots have d = 1).
    pub fn half_norm(&self, i: usize) -> Q64 {
        self.half_norms[i]
    }

    /// Rescaled half square length d_i' = (a_i, a_i)/2; q_i = q^{d_i'}.
    pub fn dprime(&self, i: usize) -> i64 {
        self.dprime[i]
    }

    pub fn dprimes(&self) -> &[i64] {
        &self.dprime
    }

    pub fn rescale_factor(&self) -> i64 {
        self.rescale
    }

    /// Gram matrix ((w_i, w_j)) of the rescaled form.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn pairing(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if mu[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += mu[i] * self.gram[i][j] * nu[j];
            }
        }
        s
    }

    /// (mu, a_i) = mu_i d_i'.
    pub fn pairing_simple(&self, mu: &[i64], i: usize) -> i64 {
        mu[i] * self.dprime[i]
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[i] = 1;
        w
    }

    /// Simple root a_i in weight coordinates (column i of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        (0..self.rank).map(|k| self.cartan[k][i]).collect()
    }

    pub fn root_to_weight(&self, coeffs: &[i64]) -> Weight {
        let mut w = vec![0; self.rank];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for k in 0..self.rank {
                w[k] += c * self.cartan[k][j];
            }
        }
        w
    }

    /// Simple-root coordinates of a weight, if it lies in the root lattice.
    pub fn weight_to_root(&self, w: &[i64]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let x: Q64 = (0..self.rank)
                .map(|k| self.cartan_inv[i][k] * w[k])
                .fold(Q64::zero(), |a, b| a + b);
            if !x.is_integer() {
                return None;
            }
            out.push(x.to_integer());
        }
        Some(out)
    }

    /// Height of the root-lattice element `mu - nu`, if defined.
    pub fn depth(&self, mu: &[i64], nu: &[i64]) -> Option<i64> {
        let diff: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
        self.weight_to_root(&diff).map(|c| c.iter().sum())
    }

    /// True if `mu - nu` is a nonzero element of Q+.
    pub fn strictly_above(&self, mu: &[i64], nu: &[i64]) -> bool {
        let diff: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
        match self.weight_to_root(&diff) {
            Some(c) => c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0),
            None => false,
        }
    }

    /// Positive roots in simple-root coordinates, ordered by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().unwrap()
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        mu.len() == self.rank && mu.iter().all(|&x| x >= 0)
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, mu: &[i64]) -> u128 {
        let rho = self.rho();
        let shifted: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut num = Ratio::<i128>::one();
        for beta in &self.positive_roots {
            let bw = self.root_to_weight(beta);
            let a = self.pairing(&shifted, &bw) as i128;
            let b = self.pairing(&rho, &bw) as i128;
            num *= Ratio::new(a, b);
        }
        assert!(num.is_integer() && !num.is_negative());
        num.to_integer() as u128
    }

    pub fn parabolic(&self, s: usize) -> Result<ParabolicData> {
        ParabolicData::new(self, s)
    }
}

/// Height of an element of Q+ given in simple-root coordinates.
pub fn height(beta: &[i64]) -> Result<i64> {
    if beta.iter().any(|&c| c < 0) {
        return Err(Error::NotInPositiveCone);
    }
    Ok(beta.iter().sum())
}

pub fn format_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parabolic data for the maximal parabolic obtained by crossing node `s`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    /// Crossed node, 1-based.
    pub node: usize,
    /// Levi nodes S (0-based).
    pub levi: Vec<usize>,
    pub levi_roots: Vec<Vec<i64>>,
    /// Positive roots outside the Levi factor, in root order.
    pub complement: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
}

impl ParabolicData {
    fn new(rs: &RootSystem, s: usize) -> Result<Self> {
        if s == 0 || s > rs.rank() {
            return Err(Error::InvalidArgument(format!(
                "node {s} out of range 1..={}",
                rs.rank()
            )));
        }
        let idx = s - 1;
        let coefficient = rs.highest_root()[idx];
        if coefficient != 1 {
            return Err(Error::NotIrreducibleFlag {
                label: format!("{}{}", rs.label(), rs.rank()),
                node: s,
                coefficient,
            });
        }
        let levi: Vec<usize> = (0..rs.rank()).filter(|&i| i != idx).collect();
        let (levi_roots, complement): (Vec<_>, Vec<_>) = rs
            .positive_roots()
            .iter()
            .cloned()
            .partition(|b| b[idx] == 0);
        let heights = complement.iter().map(|b| b.iter().sum()).collect();
        Ok(ParabolicData {
            node: s,
            levi,
            levi_roots,
            complement,
            heights,
        })
    }

    pub fn index(&self) -> usize {
        self.node - 1
    }

    /// Complex dimension M of the flag manifold.
    pub fn m(&self) -> usize {
        self.complement.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_form() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        let w = rs.fundamental_weight(0);
        let a = rs.simple_root(0);
        assert_eq!(rs.pairing(&w, &w), 1);
        assert_eq!(rs.pairing(&a, &a), 4);
        assert_eq!(rs.pairing(&w, &a), 2);
    }

    #[test]
    fn b2_roots() {
        let rs = RootSystem::new(LieType::B, 2).unwrap();
        assert_eq!(
            rs.positive_roots(),
            &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
        );
        assert!(matches!(
            rs.parabolic(2),
            Err(Error::NotIrreducibleFlag { coefficient: 2, .. })
        ));
        assert_eq!(rs.parabolic(1).unwrap().m(), 3);
    }

    #[test]
    fn cartan_reproduced() {
        for (t, n) in [(LieType::B, 3), (LieType::C, 3), (LieType::G, 2), (LieType::F, 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let ai = rs.simple_root(i);
                    let aj = rs.simple_root(j);
                    assert_eq!(2 * rs.pairing(&ai, &aj), rs.cartan(i, j) * rs.pairing(&ai, &ai));
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let rs = RootSystem::new(LieType::B, 2).unwrap();
        assert_eq!(rs.weyl_dimension(&[1, 0]), 5);
        assert_eq!(rs.weyl_dimension(&[0, 1]), 4);
        let g2 = RootSystem::new(LieType::G, 2).unwrap();
        assert_eq!(g2.weyl_dimension(&[1, 0]), 7);
        assert_eq!(g2.weyl_dimension(&[0, 1]), 14);
    }
}
