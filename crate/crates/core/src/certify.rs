//! Deciding whether a Jacobiator vanishes identically.
//!
//! A multilinear operator that differentiates each argument at most `M`
//! times, with polynomial coefficients, is zero iff it vanishes on every
//! tuple drawn from the monomials of total degree `≤ M`: that space is
//! translation invariant, and on the translated monomials `(x − x₀)^β`
//! evaluated at `x₀` only the coefficient of `∂^β` survives. Total
//! antisymmetry reduces the check further to strictly increasing tuples of
//! distinct basis monomials.
//!
//! For the insertion action, `M = k_out + ℓ_in`: an argument fed to the inner
//! bracket is differentiated up to `ℓ_in` times there and `k_out` more times
//! by the outer one.

use std::fmt;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::{MultiIndex, Polynomial};
use crate::det::det_bareiss;
use crate::jacobi::{shuffles, ShuffleTerm};
use crate::jet::{binomial, enumerate_multi_indices};
use crate::scalar::Scalar;
use crate::wronskian::{MultiLinearOp, OpError, OpKind};

/// Default bound on `shuffle terms per tuple × tuples`.
pub const DEFAULT_GUARD: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Clone, PartialEq)]
pub struct Witness<T> {
    /// Position of the tuple in enumeration order.
    pub tuple_index: u128,
    pub args: Vec<Polynomial<T>>,
    pub value: Polynomial<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    Exhaustive { basis_bound: u32, basis_size: usize },
    Random { trials: usize, max_degree: u32, seed: u64 },
}

#[derive(Clone)]
pub struct Certificate<T> {
    pub verdict: Verdict,
    /// Whether a zero verdict is a proof (exhaustive mode) rather than evidence.
    pub certifying: bool,
    pub method: Method,
    pub tuples_checked: u128,
    /// Number of tuples with a non-zero value; `witnesses` keeps the first few.
    pub nonzero_tuples: u128,
    pub witnesses: Vec<Witness<T>>,
    pub elapsed: Duration,
    pub warnings: Vec<String>,
}

impl<T: Scalar> fmt::Debug for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "#{} ({}) -> {}", self.tuple_index, args.join(", "), self.value)
    }
}

impl<T: Scalar> fmt::Debug for Certificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Certificate")
            .field("verdict", &self.verdict)
            .field("certifying", &self.certifying)
            .field("method", &self.method)
            .field("tuples_checked", &self.tuples_checked)
            .field("nonzero_tuples", &self.nonzero_tuples)
            .field("witnesses", &self.witnesses)
            .field("elapsed", &self.elapsed)
            .field("warnings", &self.warnings)
            .finish()
    }
}

impl<T> Certificate<T> {
    pub fn basis_bound(&self) -> Option<u32> {
        match self.method {
            Method::Exhaustive { basis_bound, .. } => Some(basis_bound),
            Method::Random { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("certification needs {required} shuffle-term evaluations, over the guard of {guard}")]
    GuardExceeded { required: u128, guard: u128 },
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Spec(#[from] crate::jet::SpecError),
}

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    pub guard: u128,
    /// How many witnesses (earliest first) a certificate keeps.
    pub witness_limit: usize,
    /// Overrides the per-slot degree bound `M`; only a bound at least the
    /// operator's differential order keeps the verdict certifying.
    pub basis_bound: Option<u32>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            guard: DEFAULT_GUARD,
            witness_limit: 16,
            basis_bound: None,
        }
    }
}

/// Decides `outer[inner] ≡ 0` with the default configuration.
pub fn certify_zero<T: Scalar>(outer: &MultiLinearOp<T>, inner: &MultiLinearOp<T>) -> Result<Certificate<T>, CertifyError> {
    certify_zero_with(outer, inner, &CertifyConfig::default())
}

pub fn certify_zero_with<T: Scalar>(
    outer: &MultiLinearOp<T>,
    inner: &MultiLinearOp<T>,
    config: &CertifyConfig,
) -> Result<Certificate<T>, CertifyError> {
    let jacobiator = MultiLinearOp::insertion(outer.clone(), inner.clone())?;
    certify_operator(&jacobiator, config)
}

/// Shuffle-term evaluations needed per argument tuple.
pub fn cost_per_tuple<T: Scalar>(op: &MultiLinearOp<T>) -> u128 {
    match op.kind() {
        OpKind::Wronskian { .. } => 1,
        OpKind::Insertion { outer, inner } => {
            binomial(op.arity() as u128, inner.arity() as u128).saturating_mul(cost_per_tuple(outer))
        }
        OpKind::Combination(terms) => terms.iter().map(|(_, t)| cost_per_tuple(t)).fold(0u128, u128::saturating_add),
    }
}

/// Decides whether an arbitrary operator vanishes identically by exhaustive
/// evaluation on the monomial basis.
pub fn certify_operator<T: Scalar>(op: &MultiLinearOp<T>, config: &CertifyConfig) -> Result<Certificate<T>, CertifyError> {
    certify_impl(op, config, true)
}

fn certify_impl<T: Scalar>(
    op: &MultiLinearOp<T>,
    config: &CertifyConfig,
    integer_engine: bool,
) -> Result<Certificate<T>, CertifyError> {
    let start = Instant::now();
    let order = op.differential_order();
    let bound = config.basis_bound.unwrap_or(order);
    let d = op.dimension();
    let basis_size = crate::jet::jet_fibre_dim(d, bound);
    let arity = op.arity();
    let tuples = binomial(basis_size, arity as u128);
    let required = tuples.saturating_mul(cost_per_tuple(op));
    if required > config.guard {
        return Err(CertifyError::GuardExceeded {
            required,
            guard: config.guard,
        });
    }
    let mut warnings = Vec::new();
    if bound < order {
        warnings.push(format!(
            "basis bound {bound} is below the differential order {order}; a zero verdict is not a proof"
        ));
    }
    let indices = enumerate_multi_indices(d, bound).expect("operator dimension is at least 1");
    let basis: Vec<Polynomial<T>> = indices.iter().map(|m| Polynomial::monomial(m.clone(), T::one())).collect();
    let ctx = Context {
        basis: &basis,
        indices: &indices,
        ranks: RankTable::new(basis.len(), arity),
    };
    let scan = |eval: &(dyn Fn(&[usize]) -> Result<Polynomial<T>, EvalError> + Sync)| {
        (0..tuples)
            .into_par_iter()
            .map(|index| -> Result<Found<T>, EvalError> {
                let slots = ctx.ranks.unrank(index, arity);
                let value = eval(&slots)?;
                Ok(if value.is_zero() {
                    Found::default()
                } else {
                    Found {
                        count: 1,
                        first: vec![(index, slots, value)],
                    }
                })
            })
            .try_reduce(Found::default, |a, b| Ok(a.merge(b, config.witness_limit)))
    };
    let fast = IntEngine::new(op, &ctx).filter(|_| integer_engine).and_then(|engine| match scan(&|slots| engine.eval(&ctx, slots)) {
        Err(EvalError::Inexact) => None,
        other => Some(other),
    });
    let found = match fast {
        Some(found) => found,
        None => {
            let plan = Plan::new(op);
            scan(&|slots| plan.eval(&ctx, slots).map_err(EvalError::Op))
        }
    };
    let found = found.map_err(|e| match e {
        EvalError::Op(e) => CertifyError::Op(e),
        EvalError::Inexact => unreachable!("the generic engine is exact"),
    })?;
    let witnesses = found
        .first
        .into_iter()
        .map(|(tuple_index, slots, value)| Witness {
            tuple_index,
            args: slots.iter().map(|&s| basis[s].clone()).collect(),
            value,
        })
        .collect();
    Ok(Certificate {
        verdict: if found.count == 0 { Verdict::Zero } else { Verdict::Nonzero },
        certifying: bound >= order,
        method: Method::Exhaustive {
            basis_bound: bound,
            basis_size: basis.len(),
        },
        tuples_checked: tuples,
        nonzero_tuples: found.count,
        witnesses,
        elapsed: start.elapsed(),
        warnings,
    })
}

type Slots = SmallVec<[usize; 16]>;

struct Found<T> {
    count: u128,
    first: Vec<(u128, Slots, Polynomial<T>)>,
}

impl<T> Default for Found<T> {
    fn default() -> Self {
        Found { count: 0, first: Vec::new() }
    }
}

impl<T> Found<T> {
    /// Commutative merge: totals add, the earliest witnesses are kept.
    fn merge(mut self, other: Self, limit: usize) -> Self {
        self.count += other.count;
        self.first.extend(other.first);
        self.first.sort_by_key(|w| w.0);
        self.first.truncate(limit);
        self
    }
}

/// Binomial coefficients for ranking and unranking combinations.
struct RankTable {
    n: usize,
    table: Vec<Vec<u128>>,
}

impl RankTable {
    fn new(n: usize, k_max: usize) -> Self {
        let table = (0..=n)
            .map(|m| (0..=k_max).map(|k| binomial(m as u128, k as u128)).collect())
            .collect();
        RankTable { n, table }
    }

    fn choose(&self, m: usize, k: usize) -> u128 {
        self.table[m][k]
    }

    /// Colexicographic rank of a strictly increasing subset; unique among
    /// subsets of the same size.
    fn rank(&self, subset: &[usize]) -> u128 {
        subset.iter().enumerate().map(|(i, &s)| self.choose(s, i + 1)).sum()
    }

    /// The `index`-th `k`-subset of `0..n` in lexicographic order.
    fn unrank(&self, mut index: u128, k: usize) -> Slots {
        let mut out = Slots::new();
        let mut next = 0;
        for i in 0..k {
            let mut c = next;
            loop {
                let rest = self.choose(self.n - 1 - c, k - 1 - i);
                if index < rest {
                    break;
                }
                index -= rest;
                c += 1;
            }
            out.push(c);
            next = c + 1;
        }
        out
    }
}

struct Context<'a, T> {
    basis: &'a [Polynomial<T>],
    indices: &'a [MultiIndex],
    ranks: RankTable,
}

enum EvalError {
    Op(OpError),
    /// A coefficient left the machine-integer range; retry generically.
    Inexact,
}

/// Largest lazily filled cache the integer engine allocates up front.
const INT_CACHE_LIMIT: u128 = 1 << 22;

enum Slot {
    Zero,
    Values(Box<[i64]>),
    Inexact,
}

/// `outer[inner]` for two plain Wronskians on monomial arguments.
///
/// Every shuffle term of a tuple lands on the same monomial, namely the sum
/// of the argument exponents minus the sum of all rows of both specs, so only
/// integer coefficients need to be tracked.
struct IntEngine<'a, T> {
    inner: &'a MultiLinearOp<T>,
    outer_rows: &'a [MultiIndex],
    shuffles: Vec<ShuffleTerm>,
    shift: Vec<i64>,
    inner_cache: Vec<OnceLock<Slot>>,
    minor_cache: Vec<OnceLock<Slot>>,
}

impl<'a, T: Scalar> IntEngine<'a, T> {
    fn new(op: &'a MultiLinearOp<T>, ctx: &Context<'_, T>) -> Option<Self> {
        let OpKind::Insertion { outer, inner } = op.kind() else {
            return None;
        };
        let OpKind::Wronskian { spec: outer_spec, rho: None } = outer.kind() else {
            return None;
        };
        let OpKind::Wronskian { spec: inner_spec, rho: None } = inner.kind() else {
            return None;
        };
        let b = ctx.basis.len();
        let inner_subsets = ctx.ranks.choose(b, inner.arity());
        let outer_subsets = ctx.ranks.choose(b, outer.arity() - 1);
        if inner_subsets > INT_CACHE_LIMIT || outer_subsets > INT_CACHE_LIMIT {
            return None;
        }
        let mut shift = vec![0i64; op.dimension()];
        for row in outer_spec.rows().iter().chain(inner_spec.rows()) {
            for (s, &e) in shift.iter_mut().zip(row.entries()) {
                *s += e as i64;
            }
        }
        Some(IntEngine {
            inner,
            outer_rows: outer_spec.rows(),
            shuffles: shuffles(inner.arity(), outer.arity() - 1),
            shift,
            inner_cache: (0..inner_subsets).map(|_| OnceLock::new()).collect(),
            minor_cache: (0..outer_subsets).map(|_| OnceLock::new()).collect(),
        })
    }

    fn eval(&self, ctx: &Context<'_, T>, slots: &[usize]) -> Result<Polynomial<T>, EvalError> {
        let mut acc: i128 = 0;
        let mut inner_slots = Slots::new();
        let mut outer_slots = Slots::new();
        for term in &self.shuffles {
            inner_slots.clear();
            inner_slots.extend(term.inner_slots.iter().map(|&p| slots[p]));
            let nested = match self.inner_cache[ctx.ranks.rank(&inner_slots) as usize]
                .get_or_init(|| self.inner_values(ctx, &inner_slots))
            {
                Slot::Zero => continue,
                Slot::Inexact => return Err(EvalError::Inexact),
                Slot::Values(v) => v,
            };
            outer_slots.clear();
            outer_slots.extend(term.outer_slots.iter().map(|&p| slots[p]));
            let minors = match self.minor_cache[ctx.ranks.rank(&outer_slots) as usize]
                .get_or_init(|| to_slot(cofactor_minors(self.outer_rows, ctx, &outer_slots)))
            {
                Slot::Zero => continue,
                Slot::Inexact => return Err(EvalError::Inexact),
                Slot::Values(v) => v,
            };
            let mut dot: i128 = 0;
            for (&a, &b) in nested.iter().zip(minors.iter()) {
                dot = dot.checked_add(a as i128 * b as i128).ok_or(EvalError::Inexact)?;
            }
            acc = if term.sign > 0 { acc.checked_add(dot) } else { acc.checked_sub(dot) }.ok_or(EvalError::Inexact)?;
        }
        let d = self.shift.len();
        if acc == 0 {
            return Ok(Polynomial::zero(d));
        }
        let mut exponents = self.shift.iter().map(|s| -s).collect::<Vec<i64>>();
        for &s in slots {
            for (e, &b) in exponents.iter_mut().zip(ctx.indices[s].entries()) {
                *e += b as i64;
            }
        }
        if exponents.iter().any(|&e| e < 0) {
            return Err(EvalError::Inexact);
        }
        let c = T::from_i128(acc).ok_or(EvalError::Inexact)?;
        Ok(Polynomial::monomial(MultiIndex::new(exponents.into_iter().map(|e| e as u32)), c))
    }

    fn inner_values(&self, ctx: &Context<'_, T>, inner_slots: &[usize]) -> Slot {
        let args: Vec<Polynomial<T>> = inner_slots.iter().map(|&s| ctx.basis[s].clone()).collect();
        let Ok(value) = self.inner.apply(&args) else {
            return Slot::Inexact;
        };
        if value.is_zero() {
            return Slot::Zero;
        }
        to_slot(Some(
            self.outer_rows
                .iter()
                .enumerate()
                .map(|(i, sigma)| {
                    let derivative = value.derive_exponents(sigma.exponents());
                    if i % 2 == 0 {
                        derivative
                    } else {
                        -derivative
                    }
                })
                .collect(),
        ))
    }
}

/// Single-term (or zero) polynomials to their integer coefficients.
fn to_slot<T: Scalar>(values: Option<Vec<Polynomial<T>>>) -> Slot {
    let Some(values) = values else {
        return Slot::Zero;
    };
    let mut out = Vec::with_capacity(values.len());
    for p in &values {
        match p.len() {
            0 => out.push(0),
            1 => match p.terms().next().and_then(|(_, c)| c.to_exact_i64()) {
                Some(c) => out.push(c),
                None => return Slot::Inexact,
            },
            _ => return Slot::Inexact,
        }
    }
    if out.iter().all(|&c| c == 0) {
        Slot::Zero
    } else {
        Slot::Values(out.into())
    }
}

type Cache<T> = DashMap<u128, Option<Arc<Vec<Polynomial<T>>>>>;

fn cached<T: Scalar>(
    cache: &Cache<T>,
    key: u128,
    compute: impl FnOnce() -> Result<Option<Vec<Polynomial<T>>>, OpError>,
) -> Result<Option<Arc<Vec<Polynomial<T>>>>, OpError> {
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    let value = compute()?.map(Arc::new);
    // Concurrent writers compute identical values, so either insert wins.
    Ok(cache.entry(key).or_insert(value).clone())
}

enum Plan<'a, T> {
    Direct(&'a MultiLinearOp<T>),
    Insertion(Box<InsertionPlan<'a, T>>),
    Combination(Vec<(&'a T, Plan<'a, T>)>),
}

struct InsertionPlan<'a, T> {
    inner: Plan<'a, T>,
    outer: OuterPlan<'a, T>,
    shuffles: Vec<ShuffleTerm>,
    /// Per inner subset: `[(−1)^i ∂^{σ_i} ∇(…)]` for the cofactor path, or
    /// `[∇(…)]` otherwise. `None` when the inner value vanishes.
    inner_cache: Cache<T>,
}

enum OuterPlan<'a, T> {
    /// Wronskian outer expanded along its first column; the minors depend
    /// only on the outer-slot subset.
    Cofactor {
        rows: &'a [MultiIndex],
        rho: Option<&'a Polynomial<T>>,
        minors: Cache<T>,
    },
    Generic(&'a MultiLinearOp<T>),
}

impl<'a, T: Scalar> Plan<'a, T> {
    fn new(op: &'a MultiLinearOp<T>) -> Self {
        match op.kind() {
            OpKind::Wronskian { .. } => Plan::Direct(op),
            OpKind::Insertion { outer, inner } => {
                let outer_plan = match outer.kind() {
                    OpKind::Wronskian { spec, rho } => OuterPlan::Cofactor {
                        rows: spec.rows(),
                        rho: rho.as_ref(),
                        minors: DashMap::new(),
                    },
                    _ => OuterPlan::Generic(outer),
                };
                Plan::Insertion(Box::new(InsertionPlan {
                    inner: Plan::new(inner),
                    outer: outer_plan,
                    shuffles: shuffles(inner.arity(), outer.arity() - 1),
                    inner_cache: DashMap::new(),
                }))
            }
            OpKind::Combination(terms) => Plan::Combination(terms.iter().map(|(c, t)| (c, Plan::new(t))).collect()),
        }
    }

    fn eval(&self, ctx: &Context<'_, T>, slots: &[usize]) -> Result<Polynomial<T>, OpError> {
        let d = ctx.basis[0].dimension();
        match self {
            Plan::Direct(op) => {
                let args: Vec<Polynomial<T>> = slots.iter().map(|&s| ctx.basis[s].clone()).collect();
                op.apply(&args)
            }
            Plan::Combination(terms) => {
                let mut acc = Polynomial::zero(d);
                for (c, plan) in terms {
                    acc += &plan.eval(ctx, slots)?.scale(c);
                }
                Ok(acc)
            }
            Plan::Insertion(plan) => plan.eval(ctx, slots),
        }
    }
}

impl<'a, T: Scalar> InsertionPlan<'a, T> {
    fn eval(&self, ctx: &Context<'_, T>, slots: &[usize]) -> Result<Polynomial<T>, OpError> {
        let d = ctx.basis[0].dimension();
        let mut acc = Polynomial::zero(d);
        let mut inner_slots = Slots::new();
        let mut outer_slots = Slots::new();
        for term in &self.shuffles {
            inner_slots.clear();
            inner_slots.extend(term.inner_slots.iter().map(|&p| slots[p]));
            let Some(nested) = cached(&self.inner_cache, ctx.ranks.rank(&inner_slots), || {
                self.inner_values(ctx, &inner_slots)
            })?
            else {
                continue;
            };
            outer_slots.clear();
            outer_slots.extend(term.outer_slots.iter().map(|&p| slots[p]));
            let value = match &self.outer {
                OuterPlan::Cofactor { rows, minors, .. } => {
                    let Some(minors) = cached(minors, ctx.ranks.rank(&outer_slots), || {
                        Ok(cofactor_minors(rows, ctx, &outer_slots))
                    })?
                    else {
                        continue;
                    };
                    let mut dot = Polynomial::zero(d);
                    for (a, b) in nested.iter().zip(minors.iter()) {
                        if !a.is_zero() && !b.is_zero() {
                            dot += &(a * b);
                        }
                    }
                    dot
                }
                OuterPlan::Generic(op) => {
                    let mut args = Vec::with_capacity(op.arity());
                    args.push(nested[0].clone());
                    args.extend(outer_slots.iter().map(|&s| ctx.basis[s].clone()));
                    op.apply(&args)?
                }
            };
            if term.sign > 0 {
                acc += &value;
            } else {
                acc -= &value;
            }
        }
        if let OuterPlan::Cofactor { rho: Some(rho), .. } = &self.outer {
            if !acc.is_zero() {
                acc = &acc * rho;
            }
        }
        Ok(acc)
    }

    fn inner_values(&self, ctx: &Context<'_, T>, inner_slots: &[usize]) -> Result<Option<Vec<Polynomial<T>>>, OpError> {
        let value = self.inner.eval(ctx, inner_slots)?;
        if value.is_zero() {
            return Ok(None);
        }
        Ok(Some(match &self.outer {
            OuterPlan::Cofactor { rows, .. } => rows
                .iter()
                .enumerate()
                .map(|(i, sigma)| {
                    let derivative = value.derive_exponents(sigma.exponents());
                    if i % 2 == 0 {
                        derivative
                    } else {
                        -derivative
                    }
                })
                .collect(),
            OuterPlan::Generic(_) => vec![value],
        }))
    }
}

/// `C_i = det(∂^{σ_r} a_j)` over rows `r ≠ i` and the outer-slot arguments.
fn cofactor_minors<T: Scalar>(rows: &[MultiIndex], ctx: &Context<'_, T>, outer_slots: &[usize]) -> Option<Vec<Polynomial<T>>> {
    let d = ctx.basis[0].dimension();
    if outer_slots.is_empty() {
        return Some(vec![Polynomial::one(d)]);
    }
    let full: Vec<Vec<Polynomial<T>>> = rows
        .iter()
        .map(|sigma| {
            outer_slots
                .iter()
                .map(|&s| ctx.basis[s].derive_exponents(sigma.exponents()))
                .collect()
        })
        .collect();
    let minors: Vec<Polynomial<T>> = (0..rows.len())
        .map(|skip| {
            let m: Vec<Vec<Polynomial<T>>> = full
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != skip)
                .map(|(_, row)| row.clone())
                .collect();
            det_bareiss(&m).expect("minor is square")
        })
        .collect();
    minors.iter().any(|m| !m.is_zero()).then_some(minors)
}

/// Evaluates `outer[inner]` on `trials` random argument tuples. A non-zero
/// verdict is definitive; a zero verdict is evidence only.
pub fn random_check<T: Scalar>(
    outer: &MultiLinearOp<T>,
    inner: &MultiLinearOp<T>,
    trials: usize,
    max_degree: u32,
    seed: u64,
) -> Result<Certificate<T>, OpError> {
    let op = MultiLinearOp::insertion(outer.clone(), inner.clone())?;
    random_check_operator(&op, trials, max_degree, seed, CertifyConfig::default().witness_limit)
}

pub fn random_check_operator<T: Scalar>(
    op: &MultiLinearOp<T>,
    trials: usize,
    max_degree: u32,
    seed: u64,
    witness_limit: usize,
) -> Result<Certificate<T>, OpError> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let order = op.differential_order();
    if max_degree < order {
        warnings.push(format!(
            "max degree {max_degree} is below the recommended {order} (sum of the differential orders)"
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Vec<Polynomial<T>>> = (0..trials)
        .map(|_| {
            (0..op.arity())
                .map(|_| random_polynomial(&mut rng, op.dimension(), max_degree))
                .collect()
        })
        .collect();
    let values = tuples
        .par_iter()
        .map(|args| op.apply(args))
        .collect::<Result<Vec<_>, _>>()?;
    let mut nonzero_tuples = 0u128;
    let mut witnesses = Vec::new();
    for (i, (args, value)) in tuples.into_iter().zip(values).enumerate() {
        if value.is_zero() {
            continue;
        }
        nonzero_tuples += 1;
        if witnesses.len() < witness_limit {
            witnesses.push(Witness {
                tuple_index: i as u128,
                args,
                value,
            });
        }
    }
    Ok(Certificate {
        verdict: if nonzero_tuples == 0 { Verdict::Zero } else { Verdict::Nonzero },
        certifying: false,
        method: Method::Random {
            trials,
            max_degree,
            seed,
        },
        tuples_checked: trials as u128,
        nonzero_tuples,
        witnesses,
        elapsed: start.elapsed(),
        warnings,
    })
}

/// One to four distinct terms with non-zero integer coefficients in
/// `[−9, 9]`, each variable's exponent at most `max_degree`.
pub fn random_polynomial<T: Scalar, R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> Polynomial<T> {
    let possible = (max_degree as u128 + 1).saturating_pow(d as u32);
    let wanted = rng.gen_range(1..=4u128).min(possible) as usize;
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < wanted {
        seen.insert(MultiIndex::new((0..d).map(|_| rng.gen_range(0..=max_degree))));
    }
    let terms: Vec<(MultiIndex, T)> = seen
        .into_iter()
        .map(|m| {
            let c = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (m, T::from_int(c))
        })
        .collect();
    Polynomial::from_terms(d, terms).expect("dimension is positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{parse_rows, WronskianSpec};
    use crate::{QOp, Rational};

    fn op(d: usize, text: &str) -> QOp {
        QOp::wronskian(WronskianSpec::new(d, parse_rows(d, text).unwrap()).unwrap())
    }

    #[test]
    fn unranking_is_lexicographic_and_rank_is_injective() {
        let table = RankTable::new(6, 3);
        let all: Vec<Slots> = (0..20).map(|i| table.unrank(i, 3)).collect();
        assert_eq!(all[0].as_slice(), &[0, 1, 2]);
        assert_eq!(all[1].as_slice(), &[0, 1, 3]);
        assert_eq!(all[19].as_slice(), &[3, 4, 5]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let mut ranks: Vec<u128> = all.iter().map(|s| table.rank(s)).collect();
        ranks.sort();
        assert_eq!(ranks, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn ternary_bracket_is_certified() {
        let w = op(2, "1,x,y");
        let cert = certify_zero(&w, &w).unwrap();
        assert_eq!(cert.verdict, Verdict::Zero);
        assert!(cert.certifying);
        assert_eq!(cert.basis_bound(), Some(2));
        assert_eq!(cert.tuples_checked, 6);
    }

    #[test]
    fn incomplete_pair_has_witness() {
        let cert = certify_zero(&op(2, "1,y"), &op(2, "1,x")).unwrap();
        assert_eq!(cert.verdict, Verdict::Nonzero);
        let first = &cert.witnesses[0];
        assert_eq!(first.tuple_index, 0);
        let args: Vec<String> = first.args.iter().map(|a| a.to_string()).collect();
        assert_eq!(args, ["1", "x", "y"]);
        assert_eq!(first.value.to_string(), "2");
    }

    #[test]
    fn integer_engine_matches_generic_engine() {
        let config = CertifyConfig {
            witness_limit: usize::MAX,
            ..CertifyConfig::default()
        };
        for (d, outer, inner) in [
            (2, "1,y", "1,x"),
            (2, "1,x,y", "1,x,y,xx"),
            (2, "1,x,y,yy", "1,x,y,xy"),
            (1, "1,x,xxx", "1,x"),
            (2, "1", "1,x,y"),
        ] {
            let jacobiator = QOp::insertion(
                QOp::wronskian(WronskianSpec::relaxed(d, parse_rows(d, outer).unwrap()).unwrap_or_else(|_| {
                    WronskianSpec::new(d, parse_rows(d, outer).unwrap()).unwrap()
                })),
                op(d, inner),
            )
            .unwrap();
            let fast = certify_impl(&jacobiator, &config, true).unwrap();
            let slow = certify_impl(&jacobiator, &config, false).unwrap();
            assert_eq!(fast.verdict, slow.verdict, "{outer} / {inner}");
            assert_eq!(fast.witnesses, slow.witnesses, "{outer} / {inner}");
        }
    }

    #[test]
    fn guard_is_reported() {
        let w = WronskianSpec::complete(2, 2).unwrap();
        let w = QOp::wronskian(w);
        let config = CertifyConfig {
            guard: 1000,
            ..CertifyConfig::default()
        };
        assert_eq!(
            certify_zero_with(&w, &w, &config).unwrap_err(),
            CertifyError::GuardExceeded {
                required: 1365 * 462,
                guard: 1000
            }
        );
    }

    #[test]
    fn random_check_edge_cases() {
        let w = op(2, "1,x,y");
        let empty = random_check(&w, &w, 0, 3, 7).unwrap();
        assert_eq!((empty.verdict, empty.tuples_checked, empty.certifying), (Verdict::Zero, 0, false));
        let low = random_check(&w, &w, 2, 1, 7).unwrap();
        assert_eq!(low.warnings.len(), 1);
        let a = random_check(&op(2, "1,y"), &op(2, "1,x"), 5, 2, 11).unwrap();
        let b = random_check(&op(2, "1,y"), &op(2, "1,x"), 5, 2, 11).unwrap();
        assert_eq!(a.verdict, Verdict::Nonzero);
        assert_eq!(a.witnesses, b.witnesses);
    }

    #[test]
    fn random_polynomials_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p: Polynomial<Rational> = random_polynomial(&mut rng, 2, 3);
            assert!(!p.is_zero() && p.len() <= 4);
            for (m, c) in p.terms() {
                assert!(m.exponents().entries().iter().all(|&e| e <= 3));
                assert!(c.numer().magnitude() <= &9u32.into() && c.is_integer());
            }
        }
    }
}
