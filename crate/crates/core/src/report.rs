//! Serializable outcome of one verification run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certify::{Certificate, Method, Verdict};
use crate::jet::{TheoremCase, TheoremTag, WronskianSpec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Certify,
    Random,
    /// Direct evaluation of a Wronskian, no Jacobiator involved.
    Evaluate,
}

/// `basis_bound` in certify mode, `(trials, max_degree, seed)` in random mode.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderedWitness {
    pub args: Vec<String>,
    pub value: String,
}

/// A labelled value in evaluate mode (a Wronskian, or one orthant branch).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evaluation {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub case_label: String,
    pub d: usize,
    pub outer_spec: String,
    pub inner_spec: Option<String>,
    pub classification: Option<TheoremTag>,
    pub mode: Mode,
    pub parameters: Parameters,
    pub verdict: Verdict,
    pub certifying: bool,
    pub witnesses: Vec<RenderedWitness>,
    pub tuples_checked: u64,
    pub elapsed_ms: u64,
    /// Set when either spec was built under relaxed validity.
    #[serde(default)]
    pub experimental: bool,
    /// The verdict a regression suite expects, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<Evaluation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn from_certificate<T: Scalar>(
        case_label: impl Into<String>,
        outer: &WronskianSpec,
        inner: &WronskianSpec,
        case: &TheoremCase,
        cert: &Certificate<T>,
    ) -> Self {
        let (mode, parameters) = match cert.method {
            Method::Exhaustive { basis_bound, .. } => (
                Mode::Certify,
                Parameters {
                    basis_bound: Some(basis_bound),
                    ..Parameters::default()
                },
            ),
            Method::Random {
                trials,
                max_degree,
                seed,
            } => (
                Mode::Random,
                Parameters {
                    trials: Some(trials as u64),
                    max_degree: Some(max_degree),
                    seed: Some(seed),
                    ..Parameters::default()
                },
            ),
        };
        VerificationReport {
            case_label: case_label.into(),
            d: outer.dimension(),
            outer_spec: outer.to_text(),
            inner_spec: Some(inner.to_text()),
            classification: Some(case.tag),
            mode,
            parameters,
            verdict: cert.verdict,
            certifying: cert.certifying && cert.verdict == Verdict::Zero,
            witnesses: cert
                .witnesses
                .iter()
                .map(|w| RenderedWitness {
                    args: w.args.iter().map(|a| a.to_string()).collect(),
                    value: w.value.to_string(),
                })
                .collect(),
            tuples_checked: cert.tuples_checked.min(u64::MAX as u128) as u64,
            elapsed_ms: cert.elapsed.as_millis() as u64,
            experimental: outer.validity() != crate::jet::Validity::Strict || inner.validity() != crate::jet::Validity::Strict,
            expected: None,
            evaluations: Vec::new(),
            warnings: cert.warnings.clone(),
        }
    }

    /// A report for direct evaluations; the verdict is zero iff every value is.
    pub fn from_evaluations(
        case_label: impl Into<String>,
        spec: &WronskianSpec,
        evaluations: Vec<Evaluation>,
        elapsed_ms: u64,
    ) -> Self {
        let verdict = if evaluations.iter().all(|e| e.value == "0") {
            Verdict::Zero
        } else {
            Verdict::Nonzero
        };
        VerificationReport {
            case_label: case_label.into(),
            d: spec.dimension(),
            outer_spec: spec.to_text(),
            inner_spec: None,
            classification: None,
            mode: Mode::Evaluate,
            parameters: Parameters::default(),
            verdict,
            certifying: false,
            witnesses: Vec::new(),
            tuples_checked: evaluations.len() as u64,
            elapsed_ms,
            experimental: spec.validity() != crate::jet::Validity::Strict,
            expected: None,
            evaluations,
            warnings: Vec::new(),
        }
    }

    pub fn with_expected(mut self, expected: Verdict) -> Self {
        self.expected = Some(expected);
        self
    }

    /// Checks the schema invariants that serde cannot express.
    pub fn validate(&self) -> Result<(), String> {
        if self.certifying && self.mode != Mode::Certify {
            return Err("only certify mode can be certifying".into());
        }
        if self.mode != Mode::Evaluate {
            if self.inner_spec.is_none() || self.classification.is_none() {
                return Err("Jacobiator reports need an inner spec and a classification".into());
            }
            if (self.verdict == Verdict::Nonzero) != !self.witnesses.is_empty() {
                return Err("nonzero verdict iff witnesses are present".into());
            }
            if self.witnesses.iter().any(|w| w.value.is_empty() || w.value == "0") {
                return Err("witness values must be non-zero polynomials".into());
            }
        }
        let params_ok = match self.mode {
            Mode::Certify => self.parameters.basis_bound.is_some() && self.parameters.trials.is_none(),
            Mode::Random => {
                self.parameters.basis_bound.is_none()
                    && self.parameters.trials.is_some()
                    && self.parameters.max_degree.is_some()
                    && self.parameters.seed.is_some()
            }
            Mode::Evaluate => self.parameters == Parameters::default(),
        };
        if !params_ok {
            return Err(format!("parameters do not match mode {:?}", self.mode));
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Zero => "zero",
            Verdict::Nonzero => "nonzero",
        };
        let _ = write!(out, "[{}] d={} outer={{{}}}", self.case_label, self.d, self.outer_spec);
        if let Some(inner) = &self.inner_spec {
            let _ = write!(out, " inner={{{inner}}}");
        }
        let _ = write!(out, " -> {verdict}");
        match self.mode {
            Mode::Certify if self.certifying => out.push_str(" (certified)"),
            Mode::Certify => out.push_str(" (not certifying)"),
            Mode::Random => out.push_str(" (random, not certifying)"),
            Mode::Evaluate => {}
        }
        if let Some(tag) = self.classification {
            let _ = write!(out, "\n  classification: {tag}");
        }
        if self.experimental {
            out.push_str("\n  experimental: relaxed validity");
        }
        match self.mode {
            Mode::Certify => {
                let _ = write!(
                    out,
                    "\n  M = {}, tuples checked: {}",
                    self.parameters.basis_bound.unwrap_or_default(),
                    self.tuples_checked
                );
            }
            Mode::Random => {
                let _ = write!(
                    out,
                    "\n  trials: {}, max degree: {}, seed: {}",
                    self.parameters.trials.unwrap_or_default(),
                    self.parameters.max_degree.unwrap_or_default(),
                    self.parameters.seed.unwrap_or_default()
                );
            }
            Mode::Evaluate => {}
        }
        for e in &self.evaluations {
            let _ = write!(out, "\n  {}: {}", e.label, e.value);
        }
        for w in &self.witnesses {
            let _ = write!(out, "\n  witness ({}) -> {}", w.args.join(", "), w.value);
        }
        for w in &self.warnings {
            let _ = write!(out, "\n  warning: {w}");
        }
        let _ = write!(out, "\n  elapsed: {} ms", self.elapsed_ms);
        out
    }
}
