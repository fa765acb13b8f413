//! Determinants of square matrices over the polynomial ring.

use std::collections::HashMap;

use crate::algebra::Polynomial;
use crate::scalar::Scalar;

/// Largest matrix accepted by [`det_laplace`].
pub const LAPLACE_MAX_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DetError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix size {size} exceeds the cofactor-expansion limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("matrix entries live in different dimensions")]
    DimensionMismatch,
}

fn check_square<T: Scalar>(matrix: &[Vec<Polynomial<T>>]) -> Result<usize, DetError> {
    let n = matrix.len();
    if n == 0 {
        return Err(DetError::Empty);
    }
    let d = matrix[0].first().map(|p| p.dimension());
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(DetError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        if entries.iter().any(|p| Some(p.dimension()) != d) {
            return Err(DetError::DimensionMismatch);
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) elimination. Every intermediate division is exact
/// in the polynomial ring; zero pivots are handled by row exchange.
pub fn det_bareiss<T: Scalar>(matrix: &[Vec<Polynomial<T>>]) -> Result<Polynomial<T>, DetError> {
    let n = check_square(matrix)?;
    // Exact division can only fail over inexact scalars.
    Ok(bareiss(matrix.to_vec(), n).unwrap_or_else(|| laplace(matrix, n)))
}

fn bareiss<T: Scalar>(mut m: Vec<Vec<Polynomial<T>>>, n: usize) -> Option<Polynomial<T>> {
    let dim = m[0][0].dimension();
    if n == 1 {
        return m.pop()?.pop();
    }
    let mut negate = false;
    let mut prev: Option<Polynomial<T>> = None;
    for k in 0..n - 1 {
        // Prefer the sparsest non-zero pivot to limit expression swell.
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].len());
        let Some(p) = pivot else {
            return Some(Polynomial::zero(dim));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let factor = std::mem::replace(&mut row[k], Polynomial::zero(dim));
            for j in k + 1..n {
                let mut num = &row[j] * &pivot_row[k];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    num -= &(&factor * &pivot_row[j]);
                }
                row[j] = match &prev {
                    None => num,
                    Some(prev) => num.div_exact(prev)?,
                };
            }
        }
        prev = Some(m[k][k].clone());
    }
    let det = m.pop()?.pop()?;
    Some(if negate { -det } else { det })
}

/// Cofactor expansion along rows, memoizing minors by their column subset.
/// Independent of [`det_bareiss`]; limited to `n ≤ LAPLACE_MAX_SIZE`.
pub fn det_laplace<T: Scalar>(matrix: &[Vec<Polynomial<T>>]) -> Result<Polynomial<T>, DetError> {
    let n = check_square(matrix)?;
    if n > LAPLACE_MAX_SIZE {
        return Err(DetError::TooLarge {
            size: n,
            limit: LAPLACE_MAX_SIZE,
        });
    }
    Ok(laplace(matrix, n))
}

fn laplace<T: Scalar>(matrix: &[Vec<Polynomial<T>>], n: usize) -> Polynomial<T> {
    fn minor<T: Scalar>(
        m: &[Vec<Polynomial<T>>],
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, Polynomial<T>>,
    ) -> Polynomial<T> {
        if row == m.len() {
            return Polynomial::one(m[0][0].dimension());
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = Polynomial::zero(m[0][0].dimension());
        let mut position = 0;
        for j in 0..m.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let sub = minor(m, row + 1, cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let term = &m[row][j] * &sub;
                    if position % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    minor(matrix, 0, (1u32 << n) - 1, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;
    use crate::QPolynomial;

    fn matrix(d: usize, rows: &[&[&str]]) -> Vec<Vec<QPolynomial>> {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_polynomial(s, d).unwrap()).collect())
            .collect()
    }

    #[test]
    fn identity_and_repeated_rows() {
        let id = matrix(2, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(det_bareiss(&id).unwrap(), QPolynomial::one(2));
        assert_eq!(det_laplace(&id).unwrap(), QPolynomial::one(2));
        let rep = matrix(2, &[&["x", "y", "1"], &["x", "y", "1"], &["x^2", "3", "y"]]);
        assert!(det_bareiss(&rep).unwrap().is_zero());
    }

    #[test]
    fn small_wronskian_matrix() {
        // rows ∅, x, y applied to (1, x, y²)
        let m = matrix(2, &[&["1", "x", "y^2"], &["0", "1", "0"], &["0", "0", "2*y"]]);
        let expected = parse_polynomial("2*y", 2).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), expected);
        assert_eq!(det_laplace(&m).unwrap(), expected);
    }

    #[test]
    fn zero_leading_pivot_needs_exchange() {
        let m = matrix(1, &[&["0", "x"], &["1", "x^2"]]);
        assert_eq!(det_bareiss(&m).unwrap(), parse_polynomial("-x", 1).unwrap());
        let m = matrix(1, &[&["0", "x", "1"], &["0", "1", "x"], &["0", "2", "3"]]);
        assert!(det_bareiss(&m).unwrap().is_zero());
    }

    #[test]
    fn row_permutation_flips_sign() {
        let m = matrix(2, &[&["x", "y", "1"], &["x*y", "2", "y^2"], &["1", "x", "x - y"]]);
        let mut swapped = m.clone();
        swapped.swap(0, 2);
        assert_eq!(det_laplace(&swapped).unwrap(), -det_laplace(&m).unwrap());
        assert_eq!(det_bareiss(&m).unwrap(), det_laplace(&m).unwrap());
    }

    #[test]
    fn shape_errors() {
        let one = QPolynomial::one(1);
        assert_eq!(det_bareiss::<crate::Rational>(&[]), Err(DetError::Empty));
        let ragged = vec![vec![one.clone(), one.clone()], vec![one.clone()]];
        assert!(matches!(det_bareiss(&ragged), Err(DetError::NotSquare { row: 1, .. })));
        let big = vec![vec![one.clone(); 9]; 9];
        assert!(matches!(det_laplace(&big), Err(DetError::TooLarge { size: 9, .. })));
        assert_eq!(det_laplace(&[vec![one.clone()]]).unwrap(), one);
    }
}
