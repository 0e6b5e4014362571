//! Scenario generators and reference portfolios shared by integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tgclaims::majorization::{HFunction, ParamMatrix, TTransform};
use tgclaims::{Baseline, Portfolio};

pub fn pf(base: &Baseline, l: &[f64], p: &[f64]) -> Portfolio {
    Portfolio::new(base.clone(), l.to_vec(), p.to_vec()).unwrap()
}

pub fn t1(w: f64, i: usize, j: usize) -> TTransform {
    TTransform::one_based(w, i, j).unwrap()
}

/// A reference comparison: `a` unstarred, `b` starred.
pub struct Reference {
    pub name: &'static str,
    pub a: Portfolio,
    pub b: Portfolio,
    pub h: Option<HFunction>,
    pub chain: Vec<TTransform>,
    pub largest: bool,
}

pub fn references() -> Vec<Reference> {
    let e05 = Baseline::exponential(0.5).unwrap();
    let e2 = Baseline::exponential(2.0).unwrap();
    let w = Baseline::weibull(0.3, 1.5).unwrap();
    let w2 = Baseline::weibull(2.0, 0.6).unwrap();
    vec![
        Reference {
            name: "exponential largest",
            a: pf(&e05, &[-0.7, 0.8, -0.9], &[0.4, 0.2, 0.7]),
            b: pf(&e05, &[-0.1806, 0.0896, -0.7090], &[0.4345, 0.3698, 0.4711]),
            h: Some(HFunction::LogShift),
            chain: vec![t1(0.9, 2, 3), t1(0.3, 1, 3), t1(0.6, 1, 2)],
            largest: true,
        },
        Reference {
            name: "exponential smallest",
            a: pf(&e2, &[0.1, 0.3, -0.6], &[0.5, 0.3, 0.7]),
            b: pf(&e2, &[0.5, -0.3, 0.1], &[0.3, 0.9, 0.1]),
            h: None,
            chain: vec![],
            largest: false,
        },
        Reference {
            name: "weibull largest",
            a: pf(&w, &[0.7, 0.3, -0.9], &[0.1, 0.4, 0.8]),
            b: pf(&w, &[0.1544, -0.5464, 0.4920], &[0.3506, 0.6295, 0.2124]),
            h: Some(HFunction::Rational),
            chain: vec![t1(0.1, 2, 3), t1(0.4, 1, 3), t1(0.8, 1, 2)],
            largest: true,
        },
        Reference {
            name: "weibull smallest",
            a: pf(&w2, &[0.3, 0.7, 0.5], &[0.6, 0.3, 0.2]),
            b: pf(&w2, &[0.8, 0.4, 0.5], &[0.4, 0.5, 0.1]),
            h: None,
            chain: vec![],
            largest: false,
        },
    ]
}

pub fn random_baseline(rng: &mut ChaCha8Rng) -> Baseline {
    if rng.random_bool(0.5) {
        Baseline::exponential(rng.random_range(0.3..3.0)).unwrap()
    } else {
        Baseline::weibull(rng.random_range(0.4..3.0), rng.random_range(0.5..2.0)).unwrap()
    }
}

pub fn random_h(rng: &mut ChaCha8Rng) -> HFunction {
    if rng.random_bool(0.5) {
        HFunction::LogShift
    } else {
        HFunction::Rational
    }
}

pub fn random_probs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.05..0.95)).collect()
}

pub fn random_lambdas(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

/// A matrix of `S_n` whose second row stays inside `h`'s range: `λ` and `u`
/// are drawn independently and paired anti-monotonically.
pub fn random_s_n(rng: &mut ChaCha8Rng, n: usize, h: &HFunction) -> ParamMatrix {
    let (lo, hi) = h.range();
    let mut lambda = random_lambdas(rng, n);
    let mut u: Vec<f64> = (0..n)
        .map(|_| rng.random_range(lo + 0.01 * (hi - lo)..hi - 0.01 * (hi - lo)))
        .collect();
    lambda.sort_by(|a, b| a.partial_cmp(b).unwrap());
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut idx: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        idx.swap(k, rng.random_range(0..=k));
    }
    ParamMatrix::new(
        idx.iter().map(|&k| lambda[k]).collect(),
        idx.iter().map(|&k| u[k]).collect(),
    )
    .unwrap()
}

pub fn random_t(rng: &mut ChaCha8Rng, n: usize) -> TTransform {
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    TTransform::new(rng.random_range(0.0..=1.0), i, j).unwrap()
}

pub fn random_chain(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<TTransform> {
    (0..len).map(|_| random_t(rng, n)).collect()
}

pub fn portfolio_from_matrix(base: &Baseline, m: &ParamMatrix, h: &HFunction) -> Portfolio {
    Portfolio::new(base.clone(), m.lambda.clone(), m.probs(h).unwrap()).unwrap()
}

/// Two portfolios meeting every dispersive-order hypothesis for the smallest
/// claims over an exponential baseline.
pub fn random_disp_pair(rng: &mut ChaCha8Rng, n: usize) -> (Portfolio, Portfolio) {
    let lb: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=1.0)).collect();
    let mut la = lb.clone();
    for _ in 0..2 {
        random_t(rng, n).apply_row(&mut la).unwrap();
    }
    let shift = rng.random_range(0.0..0.3);
    la.iter_mut().for_each(|l| *l -= shift);
    let pb = random_probs(rng, n);
    let c = rng.random_range(0.3..1.0);
    let pa: Vec<f64> = pb.iter().map(|p| p.powf(c)).collect();
    let prod_b: f64 = pb.iter().product();
    let bound = (1.0 - prod_b) / lb.iter().map(|l| 1.0 + l).sum::<f64>();
    let mean = rng.random_range(1.05..4.0) / bound;
    let base = Baseline::exponential(mean).unwrap();
    (pf(&base, &la, &pa), pf(&base, &lb, &pb))
}
