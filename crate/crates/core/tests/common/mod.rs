#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use wronsk::certify::random_polynomial;
use wronsk::jet::{of_order, WronskianSpec};
use wronsk::{enumerate_multi_indices, QOp, QPolynomial, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn poly<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> QPolynomial {
    random_polynomial(rng, d, max_degree)
}

/// One or two terms with small non-zero integer coefficients.
pub fn sparse_poly<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> QPolynomial {
    loop {
        let terms: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let m = wronsk::MultiIndex::new((0..d).map(|_| rng.gen_range(0..=max_degree)));
                (m, q(rng.gen_range(-9..=9)))
            })
            .collect();
        let p = QPolynomial::from_terms(d, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// Polynomial with rational coefficients, possibly zero.
pub fn rational_poly<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> QPolynomial {
    let terms: Vec<_> = (0..rng.gen_range(0..=4))
        .map(|_| {
            let m = wronsk::MultiIndex::new((0..d).map(|_| rng.gen_range(0..=max_degree)));
            let c = Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=7).into());
            (m, c)
        })
        .collect();
    QPolynomial::from_terms(d, terms).unwrap()
}

/// A strictly valid spec: every order below `order` complete, plus a
/// non-empty random subset of the top order.
pub fn spec<R: Rng>(rng: &mut R, d: usize, order: u32) -> WronskianSpec {
    let mut rows = if order == 0 {
        Vec::new()
    } else {
        enumerate_multi_indices(d, order - 1).unwrap()
    };
    let mut top = of_order(d, order);
    top.shuffle(rng);
    let keep = rng.gen_range(1..=top.len());
    rows.extend(top.into_iter().take(keep));
    WronskianSpec::new(d, rows).unwrap()
}

/// Random operator, sometimes with a prefactor, of size at most `max_size`.
pub fn op<R: Rng>(rng: &mut R, d: usize, max_size: usize) -> QOp {
    loop {
        let order = rng.gen_range(0..=2);
        let s = spec(rng, d, order);
        if s.size() > max_size {
            continue;
        }
        return if rng.gen_bool(0.3) {
            QOp::scaled_wronskian(s, sparse_poly(rng, d, 1)).unwrap()
        } else {
            QOp::wronskian(s)
        };
    }
}

/// A pair whose Jacobiator has arity `≤ max_arity`.
pub fn op_pair<R: Rng>(rng: &mut R, d: usize, max_arity: usize) -> (QOp, QOp) {
    loop {
        let outer = op(rng, d, max_arity);
        let inner = op(rng, d, max_arity);
        if outer.arity() + inner.arity() - 1 <= max_arity {
            return (outer, inner);
        }
    }
}

pub fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}
