mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qflag::coeffmodel::{CoeffModel, MCElement};
use qflag::flagcalc::FlagContext;
use qflag::qfield::{ExactMatrix, LaurentRat};
use qflag::repkit::{build_irrep, Generator};
use qflag::rootdata::{LieType, RootSystem};

// closed-form dimension formulas, fundamental weight coordinates
fn dim_a1(a: i64) -> i64 {
    a + 1
}

fn dim_a2(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (a + b + 2) / 2
}

fn dim_a3(a: i64, b: i64, c: i64) -> i64 {
    (a + 1) * (b + 1) * (c + 1) * (a + b + 2) * (b + c + 2) * (a + b + c + 3) / 12
}

fn dim_b2(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3) / 6
}

#[test]
fn irrep_dimensions_match_closed_forms() {
    let a1 = Arc::new(RootSystem::new(LieType::A, 1).unwrap());
    let a2 = Arc::new(RootSystem::new(LieType::A, 2).unwrap());
    let a3 = Arc::new(RootSystem::new(LieType::A, 3).unwrap());
    let b2 = Arc::new(RootSystem::new(LieType::B, 2).unwrap());
    for a in 0..=4 {
        assert_eq!(build_irrep(&a1, &[a]).unwrap().dim() as i64, dim_a1(a));
    }
    for a in 0..=2 {
        for b in 0..=2 {
            assert_eq!(build_irrep(&a2, &[a, b]).unwrap().dim() as i64, dim_a2(a, b));
            assert_eq!(a2.weyl_dimension(&[a, b]) as i64, dim_a2(a, b));
            assert_eq!(b2.weyl_dimension(&[a, b]) as i64, dim_b2(a, b));
        }
    }
    for (a, b) in [(1, 0), (0, 1), (1, 1), (0, 2)] {
        assert_eq!(build_irrep(&b2, &[a, b]).unwrap().dim() as i64, dim_b2(a, b));
    }
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 2, 0)] {
        assert_eq!(build_irrep(&a3, &[a, b, c]).unwrap().dim() as i64, dim_a3(a, b, c));
    }
}

fn eval_matrix(m: &ExactMatrix, q0: i64) -> Vec<Vec<BigRational>> {
    let q = BigRational::from_integer(BigInt::from(q0));
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).evaluate_at(&q).unwrap()).collect())
        .collect()
}

#[test]
fn r_hat_specializes_to_the_flip() {
    for (t, r, s) in common::CONTEXTS {
        let ctx = FlagContext::new(t, r, s).unwrap();
        let n = ctx.n;
        let m = eval_matrix(&ctx.fam.rh, 1);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let want = if (c, d) == (b, a) { BigRational::one() } else { BigRational::zero() };
                        assert_eq!(m[a * n + b][c * n + d], want, "{} ({a},{b}),({c},{d})", ctx.label());
                    }
                }
            }
        }
    }
}

#[test]
fn a1_r_hat_eigenvalues() {
    let ctx = FlagContext::new(LieType::A, 1, 1).unwrap();
    let rh = &ctx.fam.rh;
    let id = ExactMatrix::identity(4);
    // (lambda, lambda) = 1 and (alpha, alpha) = 4 in the rescaled form
    let p = rh.sub(&id.scale(&LaurentRat::q_pow(1)));
    let q = rh.add(&id.scale(&LaurentRat::q_pow(-3)));
    assert!(p.mul(&q).is_zero());
    assert_eq!(p.kernel().len(), 3);
    assert_eq!(q.kernel().len(), 1);
    assert_eq!(rh.determinant(), -LaurentRat::q_pow(0));
}

#[test]
fn a2_r_hat_is_a_hecke_operator() {
    for s in [1, 2] {
        let ctx = FlagContext::new(LieType::A, 2, s).unwrap();
        let fam = &ctx.fam;
        assert!(fam.p_hat.mul(&fam.q_hat).is_zero());
        assert!(fam.p_check.mul(&fam.q_check).is_zero());
        assert_eq!(fam.p_hat.kernel().len(), 6);
        assert_eq!(fam.q_hat.kernel().len(), 3);
    }
}

#[test]
fn coordinate_ring_dimensions() {
    let cases: [(LieType, usize, usize, fn(i64) -> i64); 5] = [
        (LieType::A, 1, 1, |k| dim_a1(k)),
        (LieType::A, 2, 1, |k| dim_a2(k, 0)),
        (LieType::A, 2, 2, |k| dim_a2(0, k)),
        (LieType::A, 3, 2, |k| dim_a3(0, k, 0)),
        (LieType::B, 2, 1, |k| dim_b2(k, 0)),
    ];
    for (t, r, s, dim) in cases {
        let ctx = FlagContext::new(t, r, s).unwrap();
        let (f, v) = ctx.sqgp_relations();
        let (df, dv) = (f.graded_dims(3), v.graded_dims(3));
        for k in 0..=3 {
            assert_eq!(df.dim(k) as i64, dim(k as i64), "{} k={k}", ctx.label());
            assert_eq!(dv.dim(k), df.dim(k), "{} k={k}", ctx.label());
        }
    }
}

#[test]
fn coordinate_relation_ranks() {
    for (t, r, s, want) in [(LieType::A, 1, 1, 4), (LieType::A, 2, 1, 27)] {
        let ctx = FlagContext::new(t, r, s).unwrap();
        let z = ctx.coordinate_relations();
        assert_eq!((z.rank1(), z.rank2()), (want, want));
        assert!(z.epsilon_check().pass);
    }
}

fn model(r: usize) -> (FlagContext, CoeffModel) {
    let ctx = FlagContext::new(LieType::A, r, 1).unwrap();
    let m = CoeffModel::new(&ctx).unwrap();
    (ctx, m)
}

#[test]
fn a1_product_support() {
    let (_, m) = model(1);
    let mut keys = BTreeSet::new();
    for i in 0..2 {
        for j in 0..2 {
            let z = m.z_generator(i, j);
            keys.extend(z.canonical().unwrap().keys().cloned());
        }
    }
    let want: BTreeSet<Vec<i64>> = [vec![0], vec![2]].into_iter().collect();
    assert_eq!(keys, want);
}

#[test]
fn unit_and_associativity() {
    let (_, m) = model(2);
    let one = m.unit();
    let a = m.c_fv(0).add(&m.c_fv(2).scale(&LaurentRat::q_pow(2)));
    let b = m.c_vf(1);
    let c = m.c_fv(2).sub(&m.c_vf(0));
    assert!(one.product(&a).equals(&a).unwrap());
    assert!(a.product(&one).equals(&a).unwrap());
    let left = a.product(&b).product(&c);
    let right = a.product(&b.product(&c));
    assert!(left.equals(&right).unwrap());
    assert!(a.sub(&a).is_zero().unwrap());
    assert!(MCElement::zero().is_zero().unwrap());
}

fn word(rank: usize) -> impl Strategy<Value = Vec<Generator>> {
    let g = (0..4usize, 0..rank).prop_map(|(k, i)| match k {
        0 => Generator::E(i),
        1 => Generator::F(i),
        2 => Generator::K(i),
        _ => Generator::KInv(i),
    });
    prop::collection::vec(g, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn canonical_form_preserves_evaluation(w in word(2), i in 0usize..3, j in 0usize..3) {
        let (_, m) = model(2);
        let x = m.z_generator(i, j).add(&m.c_fv(j).product(&m.c_vf(i)).scale(&LaurentRat::q_pow(-1)));
        prop_assert_eq!(x.evaluate(&w), x.evaluate_canonical(&w).unwrap());
    }
}
