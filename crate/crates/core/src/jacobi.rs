//! The insertion action `Δ[∇]` of one antisymmetric bracket on another.
//!
//! For totally antisymmetric `Δ` (arity `N_out`) and `∇` (arity `N_in`),
//!
//! ```text
//! Δ[∇](a_1, …, a_n) = 1/(N_in!·(N_out−1)!) · Σ_{τ ∈ S_n} (−)^τ Δ(∇(a_τ(1), …, a_τ(N_in)), a_τ(N_in+1), …)
//! ```
//!
//! with `n = N_in + N_out − 1`. The permutations in each coset of
//! `S_{N_in} × S_{N_out−1}` contribute identically, so [`insertion_action`]
//! sums one shuffle per coset. [`brute_force_action`] keeps the full sum.

use std::collections::HashMap;

use crate::algebra::Polynomial;
use crate::scalar::Scalar;
use crate::wronskian::{MultiLinearOp, OpError};

/// Largest arity accepted by [`brute_force_action`] (`8! = 40320` terms).
pub const BRUTE_FORCE_MAX_ARITY: usize = 8;

/// One `(N_in, N_out − 1)` shuffle, with 0-based slot positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleTerm {
    pub inner_slots: Vec<usize>,
    pub outer_slots: Vec<usize>,
    /// Parity of the permutation `(inner_slots, outer_slots)`, as ±1.
    pub sign: i8,
}

/// All shuffles of `inner + outer_rest` slots, inner blocks in lexicographic
/// order.
pub fn shuffles(inner: usize, outer_rest: usize) -> Vec<ShuffleTerm> {
    let n = inner + outer_rest;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..inner).collect();
    loop {
        let displacement: usize = chosen.iter().enumerate().map(|(i, &s)| s - i).sum();
        let mut in_block = vec![false; n];
        for &s in &chosen {
            in_block[s] = true;
        }
        out.push(ShuffleTerm {
            inner_slots: chosen.clone(),
            outer_slots: (0..n).filter(|&s| !in_block[s]).collect(),
            sign: if displacement.is_multiple_of(2) { 1 } else { -1 },
        });
        // Next combination in lexicographic order.
        let Some(i) = (0..inner).rev().find(|&i| chosen[i] < n - inner + i) else {
            return out;
        };
        chosen[i] += 1;
        for j in i + 1..inner {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

fn check_pair<T: Scalar>(
    outer: &MultiLinearOp<T>,
    inner: &MultiLinearOp<T>,
    args: &[Polynomial<T>],
) -> Result<(), OpError> {
    if outer.dimension() != inner.dimension() {
        return Err(OpError::Dimension {
            expected: outer.dimension(),
            found: inner.dimension(),
        });
    }
    let arity = outer.arity() + inner.arity() - 1;
    if args.len() != arity {
        return Err(OpError::Arity {
            expected: arity,
            found: args.len(),
        });
    }
    if let Some(bad) = args.iter().find(|a| a.dimension() != outer.dimension()) {
        return Err(OpError::Dimension {
            expected: outer.dimension(),
            found: bad.dimension(),
        });
    }
    Ok(())
}

/// `Δ[∇](args)` computed as a signed sum over shuffles.
pub fn insertion_action<T: Scalar>(
    outer: &MultiLinearOp<T>,
    inner: &MultiLinearOp<T>,
    args: &[Polynomial<T>],
) -> Result<Polynomial<T>, OpError> {
    check_pair(outer, inner, args)?;
    let mut acc = Polynomial::zero(outer.dimension());
    let mut outer_args = Vec::with_capacity(outer.arity());
    for term in shuffles(inner.arity(), outer.arity() - 1) {
        let inner_args: Vec<Polynomial<T>> = term.inner_slots.iter().map(|&s| args[s].clone()).collect();
        let nested = inner.apply(&inner_args)?;
        if nested.is_zero() {
            continue;
        }
        outer_args.clear();
        outer_args.push(nested);
        outer_args.extend(term.outer_slots.iter().map(|&s| args[s].clone()));
        let value = outer.apply(&outer_args)?;
        if term.sign > 0 {
            acc += &value;
        } else {
            acc -= &value;
        }
    }
    Ok(acc)
}

/// `Δ[∇](args)` by the literal normalized sum over the full symmetric group.
pub fn brute_force_action<T: Scalar>(
    outer: &MultiLinearOp<T>,
    inner: &MultiLinearOp<T>,
    args: &[Polynomial<T>],
) -> Result<Polynomial<T>, OpError> {
    check_pair(outer, inner, args)?;
    let n = args.len();
    if n > BRUTE_FORCE_MAX_ARITY {
        return Err(OpError::BruteForceTooLarge {
            arity: n,
            limit: BRUTE_FORCE_MAX_ARITY,
        });
    }
    let n_in = inner.arity();
    let mut acc = Polynomial::zero(outer.dimension());
    // Plain memoization by the ordered inner block; no symmetry is assumed.
    let mut nested: HashMap<Vec<usize>, Polynomial<T>> = HashMap::new();
    let mut visit = |tau: &[usize], even: bool| -> Result<(), OpError> {
        let key = tau[..n_in].to_vec();
        let value = match nested.get(&key) {
            Some(v) => v.clone(),
            None => {
                let inner_args: Vec<Polynomial<T>> = key.iter().map(|&s| args[s].clone()).collect();
                let v = inner.apply(&inner_args)?;
                nested.insert(key, v.clone());
                v
            }
        };
        let mut outer_args = vec![value];
        outer_args.extend(tau[n_in..].iter().map(|&s| args[s].clone()));
        let value = outer.apply(&outer_args)?;
        if even {
            acc += &value;
        } else {
            acc -= &value;
        }
        Ok(())
    };
    // Heap's algorithm: consecutive permutations differ by one transposition.
    let mut tau: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut even = true;
    visit(&tau, even)?;
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                tau.swap(0, i);
            } else {
                tau.swap(counters[i], i);
            }
            even = !even;
            visit(&tau, even)?;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    let normalizer = factorial(n_in) * factorial(outer.arity() - 1);
    let mut inv = T::one();
    inv /= &T::from_count(normalizer);
    Ok(acc.scale(&inv))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
