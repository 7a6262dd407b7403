#![allow(dead_code)]

use jacobi_core::{BigRational, Chart, Expr, MultiVectorField};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub fn xyz() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

pub fn e(s: &str, c: &Chart) -> Expr {
    Expr::parse(s, c).unwrap()
}

pub fn seeded(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0), failure_persistence: None, ..Config::default() }
}

/// Exponent vectors of total degree at most `max` in `dim` variables.
pub fn monomials(dim: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            go(dim, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, max, &mut Vec::new(), &mut out);
    out
}

pub fn poly_expr(coeffs: &[i64], dim: usize, max: u32) -> Expr {
    let mut acc = Expr::zero();
    for (c, exps) in coeffs.iter().zip(monomials(dim, max)) {
        if *c == 0 {
            continue;
        }
        let mut t = Expr::int(*c);
        for (i, k) in exps.iter().enumerate() {
            if *k > 0 {
                t = t * Expr::Var(i).pow(*k as i32);
            }
        }
        acc = acc + t;
    }
    acc
}

/// Sparse small-integer polynomial coefficients.
pub fn sparse_poly(dim: usize, max: u32) -> impl Strategy<Value = Expr> {
    let n = monomials(dim, max).len();
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], n)
        .prop_map(move |c| poly_expr(&c, dim, max))
}

/// Subsets of `0..dim` of size `degree`, in lexicographic order.
pub fn index_sets(dim: usize, degree: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..dim {
            prefix.push(i);
            go(i + 1, dim, left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, degree, &mut Vec::new(), &mut out);
    out
}

/// Random polynomial multivector of the given degree on (x, y, z).
pub fn field(degree: usize, max: u32) -> impl Strategy<Value = MultiVectorField> {
    let sets = index_sets(3, degree);
    prop::collection::vec(sparse_poly(3, max), sets.len()).prop_map(move |coeffs| {
        MultiVectorField::from_components(&xyz(), degree, sets.clone().into_iter().zip(coeffs)).unwrap()
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
