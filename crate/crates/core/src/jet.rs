//! Jet-fibre multi-indices, Wronskian row sets and theorem-case classification.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use crate::algebra::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("the ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("a Wronskian needs at least one row")]
    Empty,
    #[error("row {0} has the wrong length for dimension {1}")]
    Length(MultiIndex, usize),
    #[error("row {0} appears more than once")]
    Duplicate(MultiIndex),
    #[error("row {missing} of order {} is missing; exclusion is allowed only for the highest-order derivatives", missing.order())]
    MissingLowerOrder { missing: MultiIndex },
    #[error("row {missing} is missing; relaxed specs must still be complete at orders <= 1")]
    MissingLowOrder { missing: MultiIndex },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot read multi-index at offset {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// Number of jet coordinates `u_σ` with `|σ| ≤ k` over a `d`-dimensional base.
pub fn jet_fibre_dim(d: usize, k: u32) -> u128 {
    binomial(d as u128 + k as u128, d as u128)
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// All multi-indices of order `≤ k` in canonical order (∅ first).
pub fn enumerate_multi_indices(d: usize, k: u32) -> Result<Vec<MultiIndex>, SpecError> {
    if d == 0 {
        return Err(SpecError::ZeroDimension);
    }
    Ok((0..=k).flat_map(|order| of_order(d, order)).collect())
}

/// Multi-indices of exactly the given order, in canonical order.
pub fn of_order(d: usize, order: u32) -> Vec<MultiIndex> {
    fn fill(entries: &mut Vec<u32>, axis: usize, left: u32, out: &mut Vec<MultiIndex>) {
        let d = entries.len();
        if axis == d - 1 {
            entries[axis] = left;
            out.push(MultiIndex::new(entries.iter().copied()));
            return;
        }
        for e in (0..=left).rev() {
            entries[axis] = e;
            fill(entries, axis + 1, left - e, out);
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        fill(&mut vec![0; d], 0, order, &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Validity {
    /// Every order below the top is complete.
    Strict,
    /// Complete at orders `≤ 1` only; intermediate orders may be gapped.
    Relaxed,
}

/// The ordered row set of a generalized Wronskian.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WronskianSpec {
    dimension: usize,
    rows: Vec<MultiIndex>,
    order: u32,
    validity: Validity,
}

impl WronskianSpec {
    /// Validates a row set: no duplicates, and every multi-index of order
    /// below the top order present.
    pub fn new(dimension: usize, rows: impl IntoIterator<Item = MultiIndex>) -> Result<Self, SpecError> {
        Self::build(dimension, rows, Validity::Strict)
    }

    /// Like [`WronskianSpec::new`] but only demands completeness at orders
    /// `≤ 1`. Such specs lie outside the proven theorems.
    pub fn relaxed(dimension: usize, rows: impl IntoIterator<Item = MultiIndex>) -> Result<Self, SpecError> {
        Self::build(dimension, rows, Validity::Relaxed)
    }

    /// The complete spec `1 ∧ ∂_{x¹} ∧ … ∧ ∂^k_{xᵈ}`.
    pub fn complete(dimension: usize, order: u32) -> Result<Self, SpecError> {
        Self::new(dimension, enumerate_multi_indices(dimension, order)?)
    }

    fn build(dimension: usize, rows: impl IntoIterator<Item = MultiIndex>, validity: Validity) -> Result<Self, SpecError> {
        if dimension == 0 {
            return Err(SpecError::ZeroDimension);
        }
        let mut set = BTreeSet::new();
        for row in rows {
            if row.dimension() != dimension {
                return Err(SpecError::Length(row, dimension));
            }
            if set.contains(&row) {
                return Err(SpecError::Duplicate(row));
            }
            set.insert(row);
        }
        let order = set.iter().next_back().ok_or(SpecError::Empty)?.order();
        let required = match validity {
            Validity::Strict => order,
            Validity::Relaxed => order.min(2),
        };
        for below in 0..required {
            for idx in of_order(dimension, below) {
                if !set.contains(&idx) {
                    return Err(match validity {
                        Validity::Strict => SpecError::MissingLowerOrder { missing: idx },
                        Validity::Relaxed => SpecError::MissingLowOrder { missing: idx },
                    });
                }
            }
        }
        let strict_ok = (0..order).all(|o| of_order(dimension, o).iter().all(|i| set.contains(i)));
        Ok(WronskianSpec {
            dimension,
            rows: set.into_iter().collect(),
            order,
            validity: if strict_ok { Validity::Strict } else { validity },
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Rows in canonical order; row `i` of the Wronskian matrix is `rows()[i]`.
    pub fn rows(&self) -> &[MultiIndex] {
        &self.rows
    }

    /// Top differential order `k`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    /// True when some order below the top is incomplete (relaxed specs only).
    pub fn is_gapped(&self) -> bool {
        self.validity == Validity::Relaxed
    }

    pub fn is_complete(&self) -> bool {
        self.rows.len() as u128 == jet_fibre_dim(self.dimension, self.order)
    }

    /// Condition that every first-order derivative `∂/∂x^a` is present.
    pub fn is_admissible(&self) -> bool {
        self.order >= 1
            && (0..self.dimension).all(|a| self.rows.binary_search(&MultiIndex::unit(self.dimension, a)).is_ok())
    }

    /// Number of top-order multi-indices absent from the rows.
    pub fn missing_top_count(&self) -> usize {
        let present = self.rows.iter().filter(|r| r.order() == self.order).count();
        of_order(self.dimension, self.order).len() - present
    }

    /// Comma-separated text form, e.g. `1,x,y,xx`.
    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for WronskianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WronskianSpec[d={}]({})", self.dimension, self.to_text())
    }
}

impl fmt::Display for WronskianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Reads the comma-separated multi-index list used on the command line.
///
/// Entries are words in `x, y, z` (`1` or the empty word for ∅) when
/// `d ≤ 3`, or integer tuples such as `(2,0,1)` in any dimension.
pub fn parse_rows(d: usize, text: &str) -> Result<Vec<MultiIndex>, SpecError> {
    if d == 0 {
        return Err(SpecError::ZeroDimension);
    }
    let mut rows = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ','))) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| SpecError::Syntax {
                    position: i,
                    message: "unbalanced `)`".into(),
                })?
            }
            ',' if depth == 0 => {
                rows.push(parse_entry(d, &text[start..i], start)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(SpecError::Syntax {
            position: text.len(),
            message: "unbalanced `(`".into(),
        });
    }
    Ok(rows)
}

fn parse_entry(d: usize, raw: &str, offset: usize) -> Result<MultiIndex, SpecError> {
    let lead = raw.len() - raw.trim_start().len();
    let word = raw.trim();
    let position = offset + lead;
    let syntax = |message: String| SpecError::Syntax { position, message };
    if let Some(body) = word.strip_prefix('(') {
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| syntax(format!("unterminated tuple `{word}`")))?;
        let entries = body
            .split(',')
            .map(|e| e.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| syntax(format!("tuple `{word}` must hold non-negative integers")))?;
        if entries.len() != d {
            return Err(syntax(format!("tuple `{word}` has {} entries, expected {d}", entries.len())));
        }
        return Ok(MultiIndex::new(entries));
    }
    if word.is_empty() || word == "1" {
        return Ok(MultiIndex::zero(d));
    }
    if d > 3 {
        return Err(syntax(format!("use tuple notation for d = {d}, got `{word}`")));
    }
    let mut entries = vec![0u32; d];
    for ch in word.chars() {
        let axis = match ch {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            _ => return Err(syntax(format!("unknown variable letter {ch:?} in `{word}`"))),
        };
        if axis >= d {
            return Err(syntax(format!("variable {ch:?} does not exist for d = {d}")));
        }
        entries[axis] += 1;
    }
    Ok(MultiIndex::new(entries))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremTag {
    /// Both Wronskians complete.
    #[serde(rename = "Thm_complete_complete")]
    CompleteComplete,
    /// Senior (inner) Wronskian complete, the other arbitrary admissible.
    #[serde(rename = "Thm_complete_inner")]
    CompleteInner,
    /// Inner incomplete; `N_out − 1` exceeds its missing top count.
    #[serde(rename = "Thm_enough_outer")]
    EnoughOuter,
    /// Inner incomplete; `N_out − 1` at most its missing top count.
    #[serde(rename = "Thm_insufficient_outer")]
    InsufficientOuter,
    #[serde(rename = "NotCovered")]
    NotCovered,
}

impl TheoremTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremTag::CompleteComplete => "Thm_complete_complete",
            TheoremTag::CompleteInner => "Thm_complete_inner",
            TheoremTag::EnoughOuter => "Thm_enough_outer",
            TheoremTag::InsufficientOuter => "Thm_insufficient_outer",
            TheoremTag::NotCovered => "NotCovered",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub tag: TheoremTag,
    /// Outer and inner were exchanged so that the inner order is the larger.
    pub swapped: bool,
    /// Missing top-order count of the (post-swap) inner spec.
    pub missing_top: usize,
}

/// Decides which vanishing theorem covers `outer[inner]`.
pub fn classify_pair(outer: &WronskianSpec, inner: &WronskianSpec) -> Result<TheoremCase, SpecError> {
    if outer.dimension != inner.dimension {
        return Err(SpecError::DimensionMismatch(outer.dimension, inner.dimension));
    }
    let swapped = inner.order < outer.order;
    let (outer, inner) = if swapped { (inner, outer) } else { (outer, inner) };
    let missing_top = inner.missing_top_count();
    let tag = if !outer.is_admissible() || !inner.is_admissible() || outer.is_gapped() || inner.is_gapped() {
        TheoremTag::NotCovered
    } else if inner.is_complete() {
        if outer.is_complete() {
            TheoremTag::CompleteComplete
        } else {
            TheoremTag::CompleteInner
        }
    } else if outer.size() - 1 > missing_top {
        TheoremTag::EnoughOuter
    } else {
        TheoremTag::InsufficientOuter
    };
    Ok(TheoremCase {
        tag,
        swapped,
        missing_top,
    })
}
