//! The pinned regression suite and the single-pair verification driver used
//! by the command line.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{certify_operator, random_check_operator, CertifyConfig, CertifyError, Verdict};
use crate::jet::{classify_pair, enumerate_multi_indices, of_order, parse_rows, TheoremTag, WronskianSpec};
use crate::report::{Evaluation, VerificationReport};
use crate::wronskian::{apply_orthant, Orthant, OrthantFamily};
use crate::{parse_polynomial, QOp, QPolynomial, Rational};

/// How [`verify_pair`] decides the Jacobiator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Certify,
    Random { trials: usize, max_degree: Option<u32> },
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub guard: u128,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: VerifyMode::Certify,
            guard: crate::certify::DEFAULT_GUARD,
            seed: DEFAULT_SEED,
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;

fn op(spec: &WronskianSpec, rho: Option<&QPolynomial>) -> QOp {
    match rho {
        None => QOp::wronskian(spec.clone()),
        Some(rho) => QOp::scaled_wronskian(spec.clone(), rho.clone()).expect("rho lives over the spec dimension"),
    }
}

/// Classifies and decides `outer[inner]`, optionally with prefactors.
pub fn verify_pair(
    label: impl Into<String>,
    outer: &WronskianSpec,
    inner: &WronskianSpec,
    outer_rho: Option<&QPolynomial>,
    inner_rho: Option<&QPolynomial>,
    options: &VerifyOptions,
) -> Result<VerificationReport, CertifyError> {
    let case = classify_pair(outer, inner)?;
    let jacobiator = QOp::insertion(op(outer, outer_rho), op(inner, inner_rho))?;
    let cert = match options.mode {
        VerifyMode::Certify => certify_operator(
            &jacobiator,
            &CertifyConfig {
                guard: options.guard,
                ..CertifyConfig::default()
            },
        )?,
        VerifyMode::Random { trials, max_degree } => random_check_operator(
            &jacobiator,
            trials,
            max_degree.unwrap_or_else(|| jacobiator.differential_order()),
            options.seed,
            CertifyConfig::default().witness_limit,
        )?,
    };
    let mut label = label.into();
    if let Some(rho) = outer_rho {
        label.push_str(&format!(" outer_rho={rho}"));
    }
    if let Some(rho) = inner_rho {
        label.push_str(&format!(" inner_rho={rho}"));
    }
    Ok(VerificationReport::from_certificate(label, outer, inner, &case, &cert))
}

/// Evaluates one Wronskian on explicit arguments.
pub fn evaluate_wronskian(
    label: impl Into<String>,
    spec: &WronskianSpec,
    rho: Option<&QPolynomial>,
    args: &[QPolynomial],
) -> Result<VerificationReport, crate::OpError> {
    let start = Instant::now();
    let value = op(spec, rho).apply(args)?;
    Ok(VerificationReport::from_evaluations(
        label,
        spec,
        vec![Evaluation {
            label: "W".into(),
            value: value.to_string(),
        }],
        start.elapsed().as_millis() as u64,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeanoCase {
    /// `W{1,x}(x², x|x|)` on the two half-lines.
    OneD,
    /// `W{1,x,y}(x²y², x|x|·y², x²·y|y|)` on the four quadrants.
    TwoD,
}

impl PeanoCase {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "1d" => Some(PeanoCase::OneD),
            "2d" => Some(PeanoCase::TwoD),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PeanoCase::OneD => "1d",
            PeanoCase::TwoD => "2d",
        }
    }

    /// The pinned spec and piecewise-polynomial arguments.
    pub fn family(&self) -> (WronskianSpec, Vec<OrthantFamily<Rational>>) {
        let d = match self {
            PeanoCase::OneD => 1,
            PeanoCase::TwoD => 2,
        };
        let spec = WronskianSpec::complete(d, 1).expect("d is positive");
        let base: QPolynomial = match self {
            PeanoCase::OneD => parse_polynomial("x^2", 1),
            PeanoCase::TwoD => parse_polynomial("x^2*y^2", 2),
        }
        .expect("pinned expression");
        // |x^a| · x^a = ε_a · (x^a)²
        let signed = |axes: &[usize]| {
            OrthantFamily::from_fn(d, |o| {
                let sign: i64 = axes.iter().map(|&a| o.sign(a)).product();
                base.scale(&Rational::from_integer(sign.into()))
            })
            .expect("all orthants are covered")
        };
        let families = match self {
            PeanoCase::OneD => vec![signed(&[]), signed(&[0])],
            PeanoCase::TwoD => vec![signed(&[]), signed(&[0]), signed(&[1])],
        };
        (spec, families)
    }
}

pub fn peano_report(case: PeanoCase) -> VerificationReport {
    let start = Instant::now();
    let (spec, families) = case.family();
    let values = apply_orthant(&spec, &families).expect("pinned family matches its spec");
    let evaluations = values
        .iter()
        .map(|(o, p): (&Orthant, &QPolynomial)| Evaluation {
            label: format!("orthant {o}"),
            value: p.to_string(),
        })
        .collect();
    VerificationReport::from_evaluations(
        format!("peano {}", case.name()),
        &spec,
        evaluations,
        start.elapsed().as_millis() as u64,
    )
}

/// Suite groups in run order; `stretch` only runs when requested.
pub const GROUPS: &[&str] = &[
    "baseline",
    "peano",
    "ternary",
    "d1-table",
    "sweep",
    "rho",
    "counterexample",
    "stretch",
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub only: Option<String>,
    pub stretch: bool,
    pub guard: u128,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            only: None,
            stretch: false,
            guard: crate::certify::DEFAULT_GUARD,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    /// One line per expectation that did not hold.
    pub failures: Vec<String>,
}

/// The admissible `d = 2`, order-2 specs: all lower rows plus a non-empty
/// subset of `{xx, xy, yy}`, in subset-mask order.
pub fn order_two_specs() -> Vec<WronskianSpec> {
    let top = of_order(2, 2);
    (1u32..8)
        .map(|mask| {
            let rows = enumerate_multi_indices(2, 1)
                .expect("d is positive")
                .into_iter()
                .chain(top.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, r)| r.clone()));
            WronskianSpec::new(2, rows).expect("lower orders are complete")
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepPair {
    pub outer: WronskianSpec,
    pub inner: WronskianSpec,
    pub predicted: TheoremTag,
}

/// The `d = 2, ℓ_in = 2` sweep: inners are [`order_two_specs`]; outers are the
/// complete first-order spec followed by the same seven specs.
pub fn sweep_pairs() -> Vec<SweepPair> {
    let inners = order_two_specs();
    let outers: Vec<WronskianSpec> = std::iter::once(WronskianSpec::complete(2, 1).expect("d is positive"))
        .chain(order_two_specs())
        .collect();
    let mut pairs = Vec::new();
    for outer in &outers {
        for inner in &inners {
            // Threshold rule read off the row counts: 3 top indices at order 2.
            let kept = inner.rows().iter().filter(|r| r.order() == 2).count();
            let outer_full = outer.size() == 3 || outer.size() == 6;
            let predicted = if kept == 3 {
                if outer_full {
                    TheoremTag::CompleteComplete
                } else {
                    TheoremTag::CompleteInner
                }
            } else if outer.size() - 1 > 3 - kept {
                TheoremTag::EnoughOuter
            } else {
                TheoremTag::InsufficientOuter
            };
            pairs.push(SweepPair {
                outer: outer.clone(),
                inner: inner.clone(),
                predicted,
            });
        }
    }
    pairs
}

/// A random prefactor of total degree at most 2 with small integer
/// coefficients, never zero.
pub fn random_rho<R: Rng>(rng: &mut R, d: usize) -> QPolynomial {
    let basis = enumerate_multi_indices(d, 2).expect("d is positive");
    loop {
        let mut terms = Vec::new();
        for m in &basis {
            if rng.gen_bool(0.5) {
                terms.push((m.clone(), Rational::from_integer(rng.gen_range(-9i64..=9).into())));
            }
        }
        let rho = QPolynomial::from_terms(d, terms).expect("d is positive");
        if !rho.is_zero() {
            return rho;
        }
    }
}

/// The sweep pairs rerun with prefactors, as `(outer, inner, rho on outer, rho on inner)`.
pub fn rho_cases(seed: u64) -> Vec<(WronskianSpec, WronskianSpec, Option<QPolynomial>, Option<QPolynomial>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k1 = WronskianSpec::complete(2, 1).expect("d is positive");
    let twos = order_two_specs();
    let (xx, xx_yy, full) = (twos[0].clone(), twos[4].clone(), twos[6].clone());
    vec![
        (k1.clone(), k1.clone(), Some(random_rho(&mut rng, 2)), Some(random_rho(&mut rng, 2))),
        (k1.clone(), xx, Some(random_rho(&mut rng, 2)), None),
        (k1, full, None, Some(random_rho(&mut rng, 2))),
        (twos[0].clone(), xx_yy, Some(random_rho(&mut rng, 2)), Some(random_rho(&mut rng, 2))),
    ]
}

fn spec(d: usize, text: &str) -> WronskianSpec {
    WronskianSpec::new(d, parse_rows(d, text).expect("pinned spec")).expect("pinned spec")
}

/// Runs the suite, handing each report to `sink` as soon as it is ready.
pub fn run_suite(config: &SuiteConfig, mut sink: impl FnMut(&VerificationReport)) -> Result<SuiteOutcome, CertifyError> {
    let wanted = |group: &str| match &config.only {
        Some(only) => only == group,
        None => group != "stretch" || config.stretch,
    };
    let options = VerifyOptions {
        mode: VerifyMode::Certify,
        guard: config.guard,
        seed: config.seed,
    };
    let mut outcome = SuiteOutcome::default();
    let mut record = |report: VerificationReport, extra: Option<String>, outcome: &mut SuiteOutcome| {
        if let Some(expected) = report.expected {
            if report.verdict != expected {
                outcome.failures.push(format!(
                    "{}: expected {:?}, got {:?}",
                    report.case_label, expected, report.verdict
                ));
            }
        }
        if let Some(extra) = extra {
            outcome.failures.push(format!("{}: {extra}", report.case_label));
        }
        sink(&report);
        outcome.reports.push(report);
    };

    if wanted("baseline") {
        let args: Vec<QPolynomial> = ["x", "x^2"].iter().map(|s| parse_polynomial(s, 1).expect("pinned")).collect();
        let report = evaluate_wronskian("baseline W{1,x}(x, x^2)", &spec(1, "1,x"), None, &args)?
            .with_expected(Verdict::Nonzero);
        let extra = (report.evaluations[0].value != "x^2").then(|| format!("value {}", report.evaluations[0].value));
        record(report, extra, &mut outcome);
    }
    if wanted("peano") {
        for case in [PeanoCase::OneD, PeanoCase::TwoD] {
            record(peano_report(case).with_expected(Verdict::Zero), None, &mut outcome);
        }
    }
    if wanted("ternary") {
        let k1 = WronskianSpec::complete(2, 1).expect("d is positive");
        let report = verify_pair("ternary", &k1, &k1, None, None, &options)?.with_expected(Verdict::Zero);
        let extra = (report.tuples_checked != 6 || report.parameters.basis_bound != Some(2))
            .then(|| format!("expected M = 2 and 6 tuples, got {:?} and {}", report.parameters.basis_bound, report.tuples_checked));
        record(report, extra, &mut outcome);
    }
    if wanted("d1-table") {
        for k in 1..=3 {
            for l in 1..=3 {
                let outer = WronskianSpec::complete(1, k).expect("d is positive");
                let inner = WronskianSpec::complete(1, l).expect("d is positive");
                let report = verify_pair(format!("d1-table k={k} l={l}"), &outer, &inner, None, None, &options)?
                    .with_expected(Verdict::Zero);
                record(report, None, &mut outcome);
            }
        }
    }
    if wanted("sweep") {
        for (i, pair) in sweep_pairs().iter().enumerate() {
            let report = verify_pair(format!("sweep #{i}"), &pair.outer, &pair.inner, None, None, &options)?
                .with_expected(Verdict::Zero);
            let extra = (report.classification != Some(pair.predicted))
                .then(|| format!("classified {:?}, predicted {}", report.classification, pair.predicted));
            record(report, extra, &mut outcome);
        }
    }
    if wanted("rho") {
        for (i, (outer, inner, outer_rho, inner_rho)) in rho_cases(config.seed).iter().enumerate() {
            let report = verify_pair(format!("rho #{i}"), outer, inner, outer_rho.as_ref(), inner_rho.as_ref(), &options)?
                .with_expected(Verdict::Zero);
            record(report, None, &mut outcome);
        }
    }
    if wanted("counterexample") {
        let (outer, inner) = (spec(2, "1,y"), spec(2, "1,x"));
        let report = verify_pair("counterexample", &outer, &inner, None, None, &options)?.with_expected(Verdict::Nonzero);
        let extra = match report.witnesses.first() {
            Some(w) if w.args == ["1", "x", "y"] && w.value == "2" => None,
            other => Some(format!("first witness {other:?}")),
        };
        record(report, extra, &mut outcome);
        let report = counterexample_identity(&options)?.with_expected(Verdict::Zero);
        let extra = (report.tuples_checked != 20).then(|| format!("{} tuples", report.tuples_checked));
        record(report, extra, &mut outcome);
    }
    if wanted("stretch") {
        let k2 = WronskianSpec::complete(2, 2).expect("d is positive");
        let report = verify_pair("stretch k=2 l=2", &k2, &k2, None, None, &options)?.with_expected(Verdict::Zero);
        record(report, None, &mut outcome);
    }
    Ok(outcome)
}

/// Certifies `(1∧∂y)[1∧∂x] − 2·W{1,x,y} ≡ 0` on the monomial basis.
pub fn counterexample_identity(options: &VerifyOptions) -> Result<VerificationReport, CertifyError> {
    let (outer, inner) = (spec(2, "1,y"), spec(2, "1,x"));
    let jacobiator = QOp::insertion(QOp::wronskian(outer.clone()), QOp::wronskian(inner.clone()))?;
    let ternary = QOp::wronskian(WronskianSpec::complete(2, 1).expect("d is positive"));
    let difference = QOp::combination(vec![
        (Rational::from_integer(1.into()), jacobiator),
        (Rational::from_integer((-2).into()), ternary),
    ])?;
    let cert = certify_operator(
        &difference,
        &CertifyConfig {
            guard: options.guard,
            ..CertifyConfig::default()
        },
    )?;
    let case = classify_pair(&outer, &inner).expect("same dimension");
    Ok(VerificationReport::from_certificate(
        "counterexample identity: (1,y)[(1,x)] - 2*W{1,x,y}",
        &outer,
        &inner,
        &case,
        &cert,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_shape() {
        let pairs = sweep_pairs();
        assert_eq!(pairs.len(), 56);
        assert_eq!(order_two_specs()[6], WronskianSpec::complete(2, 2).unwrap());
        let count = |tag| pairs.iter().filter(|p| p.predicted == tag).count();
        assert_eq!(count(TheoremTag::CompleteComplete), 2);
        assert_eq!(count(TheoremTag::CompleteInner), 6);
        // Only the first-order outer (N_out − 1 = 2) against a single kept top index.
        assert_eq!(count(TheoremTag::InsufficientOuter), 3);
    }

    #[test]
    fn peano_cases_vanish() {
        for case in [PeanoCase::OneD, PeanoCase::TwoD] {
            let report = peano_report(case);
            assert_eq!(report.verdict, Verdict::Zero);
            assert_eq!(report.evaluations.len(), if case == PeanoCase::OneD { 2 } else { 4 });
        }
        let (spec, families) = PeanoCase::TwoD.family();
        // Any two of the three arguments are proportional on every quadrant,
        // so two branches have to be replaced.
        let quadrant = Orthant::all(2).last().unwrap();
        let broken: Vec<_> = families
            .into_iter()
            .enumerate()
            .map(|(i, f)| match i {
                1 => f.with_branch(quadrant, parse_polynomial("x*y", 2).unwrap()),
                2 => f.with_branch(quadrant, parse_polynomial("y^3", 2).unwrap()),
                _ => f,
            })
            .collect();
        let values = apply_orthant(&spec, &broken).unwrap();
        assert_eq!(values.values().filter(|p| !p.is_zero()).count(), 1);
        assert!(!values[&quadrant].is_zero());
    }

    #[test]
    fn quick_groups_pass() {
        for group in ["baseline", "ternary", "counterexample"] {
            let config = SuiteConfig {
                only: Some(group.into()),
                ..SuiteConfig::default()
            };
            let outcome = run_suite(&config, |_| {}).unwrap();
            assert!(outcome.failures.is_empty(), "{:?}", outcome.failures);
        }
    }
}
