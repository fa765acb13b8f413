use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::monomial::{Exponents, Monomial, MultiIndex};
use super::AlgebraError;
use crate::scalar::Scalar;

/// Sparse polynomial in `ℚ[x¹,…,xᵈ]` (or over any other [`Scalar`]).
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<T> {
    dimension: usize,
    terms: Vec<(Monomial, T)>,
}

impl<T: Scalar> Polynomial<T> {
    /// # Panics
    /// If `dimension == 0`.
    pub fn zero(dimension: usize) -> Self {
        assert!(dimension > 0, "polynomial ring needs at least one variable");
        Polynomial {
            dimension,
            terms: Vec::new(),
        }
    }

    pub fn one(dimension: usize) -> Self {
        Self::constant(dimension, T::one())
    }

    pub fn constant(dimension: usize, c: T) -> Self {
        Self::term(Monomial::one(dimension), c)
    }

    /// The coordinate function `x^{axis+1}`.
    ///
    /// # Panics
    /// If `axis >= dimension`.
    pub fn variable(dimension: usize, axis: usize) -> Self {
        assert!(axis < dimension, "axis {axis} out of range for d = {dimension}");
        Self::term(
            Monomial::new(MultiIndex::unit(dimension, axis)),
            T::one(),
        )
    }

    pub fn monomial(exponents: MultiIndex, c: T) -> Self {
        Self::term(Monomial::new(exponents), c)
    }

    fn term(m: Monomial, c: T) -> Self {
        let mut p = Self::zero(m.dimension());
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms, canonicalizing the result.
    pub fn from_terms(
        dimension: usize,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self, AlgebraError> {
        if dimension == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        let mut raw = Vec::new();
        for (m, c) in terms {
            if m.dimension() != dimension {
                return Err(AlgebraError::IndexLength {
                    expected: dimension,
                    found: m.dimension(),
                });
            }
            raw.push((Monomial::new(m), c));
        }
        Ok(Self::canonical(dimension, raw))
    }

    fn canonical(dimension: usize, mut raw: Vec<(Monomial, T)>) -> Self {
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Monomial, T)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => {
                    if let Some((_, acc)) = terms.last() {
                        if acc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, acc)) = terms.last() {
            if acc.is_zero() {
                terms.pop();
            }
        }
        Polynomial { dimension, terms }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, exponents: &MultiIndex) -> T {
        let key = Monomial::new(exponents.clone());
        match self.terms.binary_search_by(|(m, _)| m.cmp(&key)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &T)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    fn check_dimension(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.dimension != other.dimension {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dimension(other)?;
        Ok(self.merged(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dimension(other)?;
        Ok(self.merged(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dimension(other)?;
        Ok(self.product(other))
    }

    fn merged(&self, other: &Self, subtract: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(signed(&b[j], subtract));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if subtract {
                        c -= &b[j].1;
                    } else {
                        c += &b[j].1;
                    }
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| signed(t, subtract)));
        Polynomial {
            dimension: self.dimension,
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dimension);
        }
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.len() == 1 {
            let (m, c) = &short.terms[0];
            return long.mul_term(m, c);
        }
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut c = ca.clone();
                c *= cb;
                raw.push((ma.product(mb), c));
            }
        }
        Self::canonical(self.dimension, raw)
    }

    /// Multiplication by `c·m`; preserves term order since graded-lex is a
    /// monomial order.
    fn mul_term(&self, m: &Monomial, c: &T) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(mi, ci)| {
                let mut v = ci.clone();
                v *= c;
                (!v.is_zero()).then(|| (mi.product(m), v))
            })
            .collect();
        Polynomial {
            dimension: self.dimension,
            terms,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.dimension);
        }
        self.mul_term(&Monomial::one(self.dimension), c)
    }

    pub fn pow(&self, mut exponent: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.dimension);
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc.product(&base);
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Formal partial derivative along the 0-based `axis`.
    pub fn partial(&self, axis: usize) -> Result<Self, AlgebraError> {
        if axis >= self.dimension {
            return Err(AlgebraError::InvalidAxis {
                axis,
                dimension: self.dimension,
            });
        }
        let mut sigma = SmallVec::from_elem(0, self.dimension);
        sigma[axis] = 1;
        Ok(self.derive_exponents(&sigma))
    }

    /// Iterated partial derivative `∂^|σ| p / ∂x^σ`.
    pub fn derive_multi(&self, sigma: &MultiIndex) -> Result<Self, AlgebraError> {
        if sigma.dimension() != self.dimension {
            return Err(AlgebraError::IndexLength {
                expected: self.dimension,
                found: sigma.dimension(),
            });
        }
        Ok(self.derive_exponents(sigma.exponents()))
    }

    pub(crate) fn derive_exponents(&self, sigma: &Exponents) -> Self {
        if sigma.iter().all(|&s| s == 0) {
            return self.clone();
        }
        // Shifting every surviving exponent by the same σ keeps graded-lex order.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let beta = m.raw();
                if beta.iter().zip(sigma).any(|(b, s)| b < s) {
                    return None;
                }
                let mut coeff = c.clone();
                coeff *= &falling_factorial_product::<T>(beta, sigma);
                let shifted: Exponents = beta.iter().zip(sigma).map(|(b, s)| b - s).collect();
                Some((Monomial::new(MultiIndex::from_exponents(shifted)), coeff))
            })
            .collect();
        Polynomial {
            dimension: self.dimension,
            terms,
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_m, lead_c) = divisor.terms.last()?;
        if self.dimension != divisor.dimension {
            return None;
        }
        if divisor.len() == 1 {
            let mut inv = T::one();
            inv /= lead_c;
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                let q = m.quotient(lead_m)?;
                let mut v = c.clone();
                v *= &inv;
                terms.push((q, v));
            }
            return Some(Polynomial {
                dimension: self.dimension,
                terms,
            });
        }
        let mut remainder = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = remainder.terms.last() {
            let q = m.quotient(lead_m)?;
            let mut qc = c.clone();
            qc /= lead_c;
            remainder = remainder.merged(&divisor.mul_term(&q, &qc), true);
            quotient.push((q, qc));
        }
        quotient.reverse();
        Some(Polynomial {
            dimension: self.dimension,
            terms: quotient,
        })
    }
}

fn signed<T: Scalar>(t: &(Monomial, T), negate: bool) -> (Monomial, T) {
    if negate {
        (t.0.clone(), -t.1.clone())
    } else {
        t.clone()
    }
}

/// `∏_a β_a! / (β_a − σ_a)!`, assuming `σ ≤ β`.
fn falling_factorial_product<T: Scalar>(beta: &[u32], sigma: &[u32]) -> T {
    let mut small: Option<u128> = Some(1);
    for (&b, &s) in beta.iter().zip(sigma) {
        for factor in (b - s + 1)..=b {
            small = small.and_then(|v| v.checked_mul(factor as u128));
        }
    }
    if let Some(v) = small {
        return T::from_count(v);
    }
    let mut acc = T::one();
    for (&b, &s) in beta.iter().zip(sigma) {
        for factor in (b - s + 1)..=b {
            acc *= &T::from_count(factor as u128);
        }
    }
    acc
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    /// # Panics
    /// On dimension mismatch; use [`Polynomial::checked_add`] to recover.
    fn add(self, rhs: Self) -> Polynomial<T> {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|t| signed(t, true)).collect(),
        }
    }
}

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(mut self) -> Polynomial<T> {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl<T: Scalar> std::ops::AddAssign<&Polynomial<T>> for Polynomial<T> {
    fn add_assign(&mut self, rhs: &Polynomial<T>) {
        assert_eq!(self.dimension, rhs.dimension, "polynomial dimension mismatch");
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = rhs.terms.clone();
            return;
        }
        *self = self.merged(rhs, false);
    }
}

impl<T: Scalar> std::ops::SubAssign<&Polynomial<T>> for Polynomial<T> {
    fn sub_assign(&mut self, rhs: &Polynomial<T>) {
        assert_eq!(self.dimension, rhs.dimension, "polynomial dimension mismatch");
        if !rhs.is_zero() {
            *self = self.merged(rhs, true);
        }
    }
}

pub(crate) fn variable_name(dimension: usize, axis: usize) -> String {
    if dimension <= 3 {
        ["x", "y", "z"][axis].to_string()
    } else {
        format!("x{}", axis + 1)
    }
}

/// Canonical rendering: terms from the graded-lex leading term down,
/// coefficients as `n` or `n/m`, explicit `*` and `^`.
impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut factors = Vec::new();
            if m.is_one() || !magnitude.is_one() {
                factors.push(magnitude.to_string());
            }
            for (axis, &e) in m.raw().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(variable_name(self.dimension, axis)),
                    _ => factors.push(format!("{}^{}", variable_name(self.dimension, axis), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[d={}]({})", self.dimension, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn x() -> P {
        P::variable(2, 0)
    }
    fn y() -> P {
        P::variable(2, 1)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&x() + &(-x())).is_zero());
    }

    #[test]
    fn like_terms_combine() {
        let x2y = &(&x() * &x()) * &y();
        let sum = &x2y + &x2y;
        assert_eq!(sum, x2y.scale(&q(2, 1)));
        let halves = &x().scale(&q(1, 2)) + &x().scale(&q(1, 3));
        assert_eq!(halves, x().scale(&q(5, 6)));
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&x() + &y()) * &(&x() - &y());
        let rhs = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(lhs, rhs);
        assert!((&lhs * &P::zero(2)).is_zero());
        assert_eq!(&lhs * &P::one(2), lhs);
    }

    #[test]
    fn partial_derivatives() {
        let x2y = &(&x() * &x()) * &y();
        assert_eq!(x2y.partial(0).unwrap(), (&x() * &y()).scale(&q(2, 1)));
        assert!((&x() * &x()).partial(1).unwrap().is_zero());
        let p = &(&x() * &x()) + &x().scale(&q(3, 1));
        assert_eq!(p.partial(0).unwrap(), &x().scale(&q(2, 1)) + &P::constant(2, q(3, 1)));
        assert!(matches!(p.partial(2), Err(AlgebraError::InvalidAxis { axis: 2, dimension: 2 })));
    }

    #[test]
    fn multi_derivatives() {
        let x2y2 = P::monomial(MultiIndex::new([2, 2]), q(1, 1));
        assert_eq!(
            x2y2.derive_multi(&MultiIndex::new([1, 1])).unwrap(),
            (&x() * &y()).scale(&q(4, 1))
        );
        assert_eq!(x2y2.derive_multi(&MultiIndex::zero(2)).unwrap(), x2y2);
        assert_eq!(x2y2.derive_multi(&MultiIndex::new([2, 2])).unwrap(), P::constant(2, q(4, 1)));
        assert!(x2y2.derive_multi(&MultiIndex::new([1])).is_err());
    }

    #[test]
    fn zero_tests() {
        assert!(P::zero(3).is_zero());
        assert!((&x() - &x()).is_zero());
        assert!(!(&x() * &x()).is_zero());
    }

    #[test]
    fn dimension_checks() {
        let a = P::variable(1, 0);
        assert!(a.checked_add(&x()).is_err());
        assert!(a.checked_mul(&x()).is_err());
        assert_eq!(P::from_terms(0, []), Err(AlgebraError::ZeroDimension));
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &y()) * &(&x() - &y().scale(&q(2, 3)));
        let b = &x() + &y();
        assert_eq!(a.div_exact(&b), Some(&x() - &y().scale(&q(2, 3))));
        assert_eq!((&a + &P::one(2)).div_exact(&b), None);
        assert_eq!(a.div_exact(&P::zero(2)), None);
    }

    #[test]
    fn rendering() {
        let p = &(&(&x() * &x()) * &y()).scale(&q(2, 1)) - &P::constant(2, q(1, 3));
        assert_eq!(p.to_string(), "2*x^2*y - 1/3");
        assert_eq!(P::zero(2).to_string(), "0");
        let w = P::variable(4, 3).scale(&q(-3, 2));
        assert_eq!(w.to_string(), "-3/2*x4");
    }
}
