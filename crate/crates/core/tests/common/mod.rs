#![allow(dead_code)]

use qflag::flagcalc::FlagContext;
use qflag::qfield::{RowEchelon, SparseVec};
use qflag::rootdata::LieType;

pub const CONTEXTS: [(LieType, usize, usize); 5] = [
    (LieType::A, 1, 1),
    (LieType::A, 2, 1),
    (LieType::A, 2, 2),
    (LieType::A, 3, 2),
    (LieType::B, 2, 1),
];

pub fn contexts() -> Vec<FlagContext> {
    CONTEXTS
        .iter()
        .map(|&(t, r, s)| FlagContext::new(t, r, s).unwrap())
        .collect()
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// dim V^{(x)k} - rank of sum_i V^{(x)i} (x) R (x) V^{(x)(k-2-i)}, by direct
/// elimination in the full tensor power.
pub fn brute_force_dim(n: usize, rels: &[SparseVec], k: usize) -> usize {
    let total = n.pow(k as u32);
    if k < 2 {
        return total;
    }
    let mut e = RowEchelon::new(total);
    for i in 0..=k - 2 {
        let left = n.pow(i as u32);
        let right = n.pow((k - 2 - i) as u32);
        for a in 0..left {
            for r in rels {
                for b in 0..right {
                    let row: SparseVec = r
                        .iter()
                        .map(|(p, x)| ((a * n * n + p) * right + b, x.clone()))
                        .collect();
                    e.insert(&row);
                }
            }
        }
    }
    total - e.rank()
}
