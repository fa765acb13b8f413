use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u32; 4]>;

/// A d-tuple of non-negative integers naming the mixed partial derivative
/// `∂^|σ| / ∂(x¹)^σ¹ … ∂(xᵈ)^σᵈ`.
///
/// The ordering is the canonical row order of a Wronskian: by total order
/// first, then with heavier powers of earlier variables first, so that over
/// `d = 2` the jet fibre of order 2 reads `∅, x, y, xx, xy, yy`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Exponents);

impl MultiIndex {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        MultiIndex(entries.into_iter().collect())
    }

    /// The empty derivative `∅` (all entries zero).
    pub fn zero(dimension: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, dimension))
    }

    /// First-order index `∂/∂x^axis` (axis is 0-based).
    pub fn unit(dimension: usize, axis: usize) -> Self {
        let mut entries = SmallVec::from_elem(0, dimension);
        entries[axis] = 1;
        MultiIndex(entries)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Differential order `|σ|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub(crate) fn exponents(&self) -> &Exponents {
        &self.0
    }

    pub(crate) fn from_exponents(e: Exponents) -> Self {
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Word form (`1`, `x`, `xy`, …) for `d ≤ 3`, tuple form `(2,0,1,0)` otherwise.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 3 {
            if self.order() == 0 {
                return f.write_str("1");
            }
            for (axis, &e) in self.0.iter().enumerate() {
                let letter = ['x', 'y', 'z'][axis];
                for _ in 0..e {
                    write!(f, "{letter}")?;
                }
            }
            Ok(())
        } else {
            f.write_str("(")?;
            for (i, e) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")
        }
    }
}

/// The power product `x^β`. Ordered graded-lexicographically with
/// `x¹ > x² > … > xᵈ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(MultiIndex);

impl Monomial {
    pub fn new(exponents: MultiIndex) -> Self {
        Monomial(exponents)
    }

    pub fn one(dimension: usize) -> Self {
        Monomial(MultiIndex::zero(dimension))
    }

    pub fn exponents(&self) -> &MultiIndex {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.dimension()
    }

    pub fn degree(&self) -> u32 {
        self.0.order()
    }

    pub fn is_one(&self) -> bool {
        self.0 .0.iter().all(|&e| e == 0)
    }

    pub(crate) fn raw(&self) -> &Exponents {
        &self.0 .0
    }

    pub(crate) fn product(&self, other: &Monomial) -> Monomial {
        Monomial(MultiIndex(
            self.raw().iter().zip(other.raw()).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self / other` when `other` divides `self`.
    pub(crate) fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !other.0.divides(&self.0) {
            return None;
        }
        Some(Monomial(MultiIndex(
            self.raw().iter().zip(other.raw()).map(|(a, b)| a - b).collect(),
        )))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.raw().cmp(other.raw()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.raw().as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_order_lists_heavier_leading_variables_first() {
        let mut rows = [
            MultiIndex::new([0, 2]),
            MultiIndex::new([1, 0]),
            MultiIndex::new([1, 1]),
            MultiIndex::new([0, 0]),
            MultiIndex::new([2, 0]),
            MultiIndex::new([0, 1]),
        ];
        rows.sort();
        let words: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
        assert_eq!(words, ["1", "x", "y", "xx", "xy", "yy"]);
    }

    #[test]
    fn graded_lex_monomials() {
        let x = Monomial::new(MultiIndex::new([1, 0]));
        let y = Monomial::new(MultiIndex::new([0, 1]));
        let xy = Monomial::new(MultiIndex::new([1, 1]));
        let one = Monomial::one(2);
        assert!(x > y);
        assert!(xy > x);
        assert!(y > one);
        assert_eq!(xy.quotient(&x), Some(y.clone()));
        assert_eq!(x.quotient(&y), None);
    }

    #[test]
    fn wide_dimensions_use_tuples() {
        assert_eq!(MultiIndex::new([2, 0, 1, 0]).to_string(), "(2,0,1,0)");
        assert_eq!(MultiIndex::new([0, 1, 1]).to_string(), "yz");
    }
}
