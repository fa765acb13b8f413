//! Generalized Wronskians as totally antisymmetric multilinear operators.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Polynomial;
use crate::det::{det_bareiss, DetError};
use crate::jacobi;
use crate::jet::WronskianSpec;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("operator takes {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("dimension mismatch: operator lives over d = {expected}, argument over d = {found}")]
    Dimension { expected: usize, found: usize },
    #[error("a linear combination needs at least one operator")]
    EmptyCombination,
    #[error("brute-force expansion is limited to arity {limit}, got {arity}")]
    BruteForceTooLarge { arity: usize, limit: usize },
    #[error("orthant family: {0}")]
    Orthant(String),
    #[error(transparent)]
    Det(#[from] DetError),
}

#[derive(Clone, PartialEq)]
pub enum OpKind<T> {
    /// `ρ · det(∂^{σ_i} f_j)`, with `ρ = 1` when absent.
    Wronskian { spec: WronskianSpec, rho: Option<Polynomial<T>> },
    /// The insertion action `outer[inner]`.
    Insertion { outer: Box<MultiLinearOp<T>>, inner: Box<MultiLinearOp<T>> },
    /// `Σ c_i · op_i` over operators of equal arity.
    Combination(Vec<(T, MultiLinearOp<T>)>),
}

/// A totally antisymmetric N-ary operator on polynomials.
#[derive(Clone, PartialEq)]
pub struct MultiLinearOp<T> {
    kind: OpKind<T>,
    arity: usize,
    dimension: usize,
}

impl<T: Scalar> MultiLinearOp<T> {
    pub fn wronskian(spec: WronskianSpec) -> Self {
        MultiLinearOp {
            arity: spec.size(),
            dimension: spec.dimension(),
            kind: OpKind::Wronskian { spec, rho: None },
        }
    }

    /// The Wronskian pre-multiplied by the factor `rho`.
    pub fn scaled_wronskian(spec: WronskianSpec, rho: Polynomial<T>) -> Result<Self, OpError> {
        if rho.dimension() != spec.dimension() {
            return Err(OpError::Dimension {
                expected: spec.dimension(),
                found: rho.dimension(),
            });
        }
        Ok(MultiLinearOp {
            arity: spec.size(),
            dimension: spec.dimension(),
            kind: OpKind::Wronskian { spec, rho: Some(rho) },
        })
    }

    pub fn insertion(outer: Self, inner: Self) -> Result<Self, OpError> {
        if outer.dimension != inner.dimension {
            return Err(OpError::Dimension {
                expected: outer.dimension,
                found: inner.dimension,
            });
        }
        Ok(MultiLinearOp {
            arity: outer.arity + inner.arity - 1,
            dimension: outer.dimension,
            kind: OpKind::Insertion {
                outer: Box::new(outer),
                inner: Box::new(inner),
            },
        })
    }

    pub fn combination(terms: Vec<(T, Self)>) -> Result<Self, OpError> {
        let (_, first) = terms.first().ok_or(OpError::EmptyCombination)?;
        let (arity, dimension) = (first.arity, first.dimension);
        for (_, op) in &terms {
            if op.arity != arity {
                return Err(OpError::Arity {
                    expected: arity,
                    found: op.arity,
                });
            }
            if op.dimension != dimension {
                return Err(OpError::Dimension {
                    expected: dimension,
                    found: op.dimension,
                });
            }
        }
        Ok(MultiLinearOp {
            kind: OpKind::Combination(terms),
            arity,
            dimension,
        })
    }

    pub fn kind(&self) -> &OpKind<T> {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The row spec, for plain (possibly scaled) Wronskians.
    pub fn spec(&self) -> Option<&WronskianSpec> {
        match &self.kind {
            OpKind::Wronskian { spec, .. } => Some(spec),
            _ => None,
        }
    }

    /// Upper bound on the order to which any single argument is
    /// differentiated.
    pub fn differential_order(&self) -> u32 {
        match &self.kind {
            OpKind::Wronskian { spec, .. } => spec.order(),
            OpKind::Insertion { outer, inner } => outer.differential_order() + inner.differential_order(),
            OpKind::Combination(terms) => terms.iter().map(|(_, op)| op.differential_order()).max().unwrap_or(0),
        }
    }

    pub(crate) fn check_args(&self, args: &[Polynomial<T>]) -> Result<(), OpError> {
        if args.len() != self.arity {
            return Err(OpError::Arity {
                expected: self.arity,
                found: args.len(),
            });
        }
        if let Some(bad) = args.iter().find(|a| a.dimension() != self.dimension) {
            return Err(OpError::Dimension {
                expected: self.dimension,
                found: bad.dimension(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, args: &[Polynomial<T>]) -> Result<Polynomial<T>, OpError> {
        self.check_args(args)?;
        match &self.kind {
            OpKind::Wronskian { spec, rho } => {
                let det = det_bareiss(&wronskian_matrix(spec, args))?;
                Ok(match rho {
                    Some(rho) if !det.is_zero() => &det * rho,
                    _ => det,
                })
            }
            OpKind::Insertion { outer, inner } => jacobi::insertion_action(outer, inner, args),
            OpKind::Combination(terms) => {
                let mut acc = Polynomial::zero(self.dimension);
                for (c, op) in terms {
                    acc += &op.apply(args)?.scale(c);
                }
                Ok(acc)
            }
        }
    }
}

/// `M[i][j] = ∂^{σ_i} f_j`.
pub fn wronskian_matrix<T: Scalar>(spec: &WronskianSpec, args: &[Polynomial<T>]) -> Vec<Vec<Polynomial<T>>> {
    spec.rows()
        .iter()
        .map(|sigma| {
            args.iter()
                .map(|f| f.derive_exponents(sigma.exponents()))
                .collect()
        })
        .collect()
}

impl<T: Scalar> fmt::Debug for MultiLinearOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OpKind::Wronskian { spec, rho: None } => write!(f, "W[{spec}]"),
            OpKind::Wronskian { spec, rho: Some(rho) } => write!(f, "({rho})·W[{spec}]"),
            OpKind::Insertion { outer, inner } => write!(f, "{outer:?}[{inner:?}]"),
            OpKind::Combination(terms) => {
                let parts: Vec<String> = terms.iter().map(|(c, op)| format!("{c}·{op:?}")).collect();
                write!(f, "({})", parts.join(" + "))
            }
        }
    }
}

/// An open coordinate orthant, named by the set of negative axes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orthant {
    negative: u32,
    dimension: u8,
}

impl Orthant {
    pub const MAX_DIMENSION: usize = 16;

    /// All `2ᵈ` orthants, the all-positive one first.
    pub fn all(dimension: usize) -> impl Iterator<Item = Orthant> {
        assert!(dimension <= Self::MAX_DIMENSION, "too many orthants");
        (0..1u32 << dimension).map(move |negative| Orthant {
            negative,
            dimension: dimension as u8,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension as usize
    }

    pub fn is_negative(&self, axis: usize) -> bool {
        self.negative & (1 << axis) != 0
    }

    /// `ε_a = sign(x^a)` on this orthant.
    pub fn sign(&self, axis: usize) -> i64 {
        if self.is_negative(axis) {
            -1
        } else {
            1
        }
    }

    fn index(&self) -> usize {
        self.negative as usize
    }
}

impl fmt::Display for Orthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in 0..self.dimension() {
            f.write_str(if self.is_negative(axis) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Orthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orthant({self})")
    }
}

/// A function given on each open orthant by a polynomial, such as
/// `x|x| = ε_x·x²`.
#[derive(Clone, PartialEq)]
pub struct OrthantFamily<T> {
    dimension: usize,
    branches: Vec<Polynomial<T>>,
}

impl<T: Scalar> fmt::Debug for OrthantFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(Orthant::all(self.dimension).zip(self.branches.iter().map(|p| p.to_string())))
            .finish()
    }
}

impl<T: Scalar> OrthantFamily<T> {
    pub fn new(dimension: usize, branches: impl IntoIterator<Item = (Orthant, Polynomial<T>)>) -> Result<Self, OpError> {
        if dimension == 0 || dimension > Orthant::MAX_DIMENSION {
            return Err(OpError::Orthant(format!("unsupported dimension {dimension}")));
        }
        let mut slots: Vec<Option<Polynomial<T>>> = vec![None; 1 << dimension];
        for (orthant, p) in branches {
            if orthant.dimension() != dimension || p.dimension() != dimension {
                return Err(OpError::Orthant(format!("branch {orthant} has the wrong dimension")));
            }
            slots[orthant.index()] = Some(p);
        }
        let branches = slots
            .into_iter()
            .zip(Orthant::all(dimension))
            .map(|(p, o)| p.ok_or_else(|| OpError::Orthant(format!("missing branch for orthant {o}"))))
            .collect::<Result<_, _>>()?;
        Ok(OrthantFamily { dimension, branches })
    }

    pub fn from_fn(dimension: usize, mut f: impl FnMut(Orthant) -> Polynomial<T>) -> Result<Self, OpError> {
        Self::new(dimension, Orthant::all(dimension).map(|o| (o, f(o))).collect::<Vec<_>>())
    }

    /// A globally polynomial function.
    pub fn uniform(p: Polynomial<T>) -> Result<Self, OpError> {
        let d = p.dimension();
        Self::from_fn(d, |_| p.clone())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn branch(&self, orthant: Orthant) -> &Polynomial<T> {
        &self.branches[orthant.index()]
    }

    pub fn with_branch(mut self, orthant: Orthant, p: Polynomial<T>) -> Self {
        self.branches[orthant.index()] = p;
        self
    }
}

/// Evaluates the Wronskian orthant by orthant on piecewise-polynomial
/// arguments. Coordinate hyperplanes are not modelled.
pub fn apply_orthant<T: Scalar>(
    spec: &WronskianSpec,
    families: &[OrthantFamily<T>],
) -> Result<BTreeMap<Orthant, Polynomial<T>>, OpError> {
    if families.len() != spec.size() {
        return Err(OpError::Arity {
            expected: spec.size(),
            found: families.len(),
        });
    }
    if let Some(bad) = families.iter().find(|f| f.dimension != spec.dimension()) {
        return Err(OpError::Dimension {
            expected: spec.dimension(),
            found: bad.dimension,
        });
    }
    let op = MultiLinearOp::wronskian(spec.clone());
    Orthant::all(spec.dimension())
        .map(|o| {
            let args: Vec<Polynomial<T>> = families.iter().map(|f| f.branch(o).clone()).collect();
            Ok((o, op.apply(&args)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::parse_rows;
    use crate::parser::parse_polynomial;
    use crate::{QPolynomial, Rational};

    fn spec(d: usize, text: &str) -> WronskianSpec {
        WronskianSpec::new(d, parse_rows(d, text).unwrap()).unwrap()
    }

    fn polys(d: usize, src: &[&str]) -> Vec<QPolynomial> {
        src.iter().map(|s| parse_polynomial(s, d).unwrap()).collect()
    }

    #[test]
    fn classical_wronskian() {
        let w = MultiLinearOp::<Rational>::wronskian(spec(1, "1,x"));
        assert_eq!(w.apply(&polys(1, &["x", "x^2"])).unwrap().to_string(), "x^2");
    }

    #[test]
    fn ternary_bracket_values() {
        let w = MultiLinearOp::<Rational>::wronskian(spec(2, "1,x,y"));
        assert_eq!(w.apply(&polys(2, &["1", "x", "y"])).unwrap().to_string(), "1");
        assert_eq!(w.apply(&polys(2, &["1", "x", "y^2"])).unwrap().to_string(), "2*y");
        assert!(w.apply(&polys(2, &["x*y + 1", "x*y + 1", "y^3"])).unwrap().is_zero());
    }

    #[test]
    fn rho_scaling_and_argument_checks() {
        let rho = parse_polynomial("x", 2).unwrap();
        let w = MultiLinearOp::scaled_wronskian(spec(2, "1,x,y"), rho).unwrap();
        assert_eq!(w.apply(&polys(2, &["1", "x", "y"])).unwrap().to_string(), "x");
        assert_eq!(
            w.apply(&polys(2, &["1", "x"])),
            Err(OpError::Arity { expected: 3, found: 2 })
        );
        assert!(matches!(w.apply(&polys(1, &["1", "x", "x^2"])), Err(OpError::Dimension { .. })));
        let bad_rho: QPolynomial = parse_polynomial("x", 1).unwrap();
        assert!(MultiLinearOp::scaled_wronskian(spec(2, "1,x,y"), bad_rho).is_err());
    }

    #[test]
    fn peano_one_dimensional() {
        let x2 = parse_polynomial::<Rational>("x^2", 1).unwrap();
        let f = OrthantFamily::uniform(x2.clone()).unwrap();
        let g = OrthantFamily::from_fn(1, |o| x2.scale(&Rational::from_integer(o.sign(0).into()))).unwrap();
        let out = apply_orthant(&spec(1, "1,x"), &[f.clone(), g.clone()]).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.values().all(|p| p.is_zero()));
        let broken = g.with_branch(Orthant::all(1).nth(1).unwrap(), parse_polynomial("x^3", 1).unwrap());
        let out = apply_orthant(&spec(1, "1,x"), &[f, broken]).unwrap();
        assert!(out.values().next().unwrap().is_zero());
        assert!(!out.values().nth(1).unwrap().is_zero());
    }

    #[test]
    fn orthant_family_validation() {
        let p = parse_polynomial::<Rational>("x", 2).unwrap();
        let only_one = OrthantFamily::new(2, Orthant::all(2).take(3).map(|o| (o, p.clone())).collect::<Vec<_>>());
        assert!(only_one.is_err());
        let f = OrthantFamily::uniform(p).unwrap();
        assert!(apply_orthant(&spec(2, "1,x,y"), &[f.clone(), f]).is_err());
        assert_eq!(Orthant::all(2).map(|o| o.to_string()).collect::<Vec<_>>(), ["++", "-+", "+-", "--"]);
    }
}
