//! Polynomial expression parser.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! sum      := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' integer)?
//! base     := rational | variable | '(' sum ')'
//! rational := integer ('/' integer)?
//! ```
//!
//! Variables are `x1 … xd`, with `x, y, z` accepted as aliases when `d ≤ 3`.
//! Multiplication must be explicit.

use std::fmt;

use crate::algebra::Polynomial;
use crate::scalar::Scalar;

const MAX_NESTING: usize = 200;
const MAX_EXPONENT: u32 = 65_535;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Integer,
    Slash,
    Variable,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprToken {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character.
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnknownVariable,
    MalformedExponent,
    DivisionByZero,
    InvalidDimension,
    NestingTooDeep,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at offset {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            position,
            kind,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

pub fn tokenize(source: &str) -> Result<Vec<ExprToken>, ParseError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Integer
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                TokenKind::Variable
            }
            _ => {
                i += 1;
                match c {
                    b'/' => TokenKind::Slash,
                    b'+' => TokenKind::Plus,
                    b'-' => TokenKind::Minus,
                    b'*' => TokenKind::Star,
                    b'^' => TokenKind::Caret,
                    b'(' => TokenKind::LParen,
                    b')' => TokenKind::RParen,
                    _ => {
                        let ch = source[start..].chars().next().unwrap_or('?');
                        return Err(ParseError::new(
                            ParseErrorKind::UnexpectedToken,
                            start,
                            "token",
                            format!("character {ch:?}"),
                        ));
                    }
                }
            }
        };
        tokens.push(ExprToken {
            kind,
            lexeme: source[start..i].to_string(),
            position: start,
        });
    }
    Ok(tokens)
}

/// Parses `source` into a canonical polynomial in `dimension` variables.
pub fn parse_polynomial<T: Scalar>(source: &str, dimension: usize) -> Result<Polynomial<T>, ParseError> {
    if dimension == 0 {
        return Err(ParseError::new(
            ParseErrorKind::InvalidDimension,
            0,
            "dimension d >= 1",
            "d = 0",
        ));
    }
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: source.len(),
        dimension,
        depth: 0,
    };
    let value = parser.sum()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            tok.position,
            "operator or end of input",
            describe(Some(tok)),
        ));
    }
    Ok(value)
}

/// Canonical text form; `parse_polynomial(&render(p), d) == p`.
pub fn render<T: Scalar>(p: &Polynomial<T>) -> String {
    p.to_string()
}

/// Parses a fixture listing: one expression per line, `#` starts a comment,
/// blank lines are skipped. Errors carry the 1-based line number.
pub fn parse_fixture<T: Scalar>(text: &str, dimension: usize) -> Result<Vec<Polynomial<T>>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_polynomial(body, dimension).map_err(|e| (n + 1, e))?);
    }
    Ok(out)
}

fn describe(tok: Option<&ExprToken>) -> String {
    match tok {
        None => "end of input".to_string(),
        Some(t) => format!("`{}`", t.lexeme),
    }
}

struct Parser<'a> {
    tokens: &'a [ExprToken],
    pos: usize,
    end: usize,
    dimension: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a ExprToken> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn bump(&mut self) -> Option<&'a ExprToken> {
        let tok = self.tokens.get(self.pos);
        self.pos += 1;
        tok
    }

    fn sum<T: Scalar>(&mut self) -> Result<Polynomial<T>, ParseError> {
        let negate = if self.peek_kind() == Some(TokenKind::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek_kind() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Scalar>(&mut self) -> Result<Polynomial<T>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek_kind() == Some(TokenKind::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor<T: Scalar>(&mut self) -> Result<Polynomial<T>, ParseError> {
        let base = self.base()?;
        if self.peek_kind() != Some(TokenKind::Caret) {
            return Ok(base);
        }
        self.bump();
        let position = self.here();
        match self.bump() {
            Some(tok) if tok.kind == TokenKind::Integer => match tok.lexeme.parse::<u32>() {
                Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => Err(ParseError::new(
                    ParseErrorKind::MalformedExponent,
                    position,
                    format!("exponent at most {MAX_EXPONENT}"),
                    describe(Some(tok)),
                )),
            },
            tok => Err(ParseError::new(
                ParseErrorKind::MalformedExponent,
                position,
                "non-negative integer exponent",
                describe(tok),
            )),
        }
    }

    fn base<T: Scalar>(&mut self) -> Result<Polynomial<T>, ParseError> {
        let position = self.here();
        let Some(tok) = self.bump() else {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                position,
                "term",
                "end of input",
            ));
        };
        match tok.kind {
            TokenKind::Integer => {
                let mut value = integer::<T>(&tok.lexeme);
                if self.peek_kind() == Some(TokenKind::Slash) {
                    self.bump();
                    let den_pos = self.here();
                    match self.bump() {
                        Some(den) if den.kind == TokenKind::Integer => {
                            let d = integer::<T>(&den.lexeme);
                            if d.is_zero() {
                                return Err(ParseError::new(
                                    ParseErrorKind::DivisionByZero,
                                    den_pos,
                                    "positive denominator",
                                    describe(Some(den)),
                                ));
                            }
                            value /= &d;
                        }
                        other => {
                            return Err(ParseError::new(
                                ParseErrorKind::UnexpectedToken,
                                den_pos,
                                "integer denominator",
                                describe(other),
                            ))
                        }
                    }
                }
                Ok(Polynomial::constant(self.dimension, value))
            }
            TokenKind::Variable => match variable_axis(&tok.lexeme, self.dimension) {
                Some(axis) => Ok(Polynomial::variable(self.dimension, axis)),
                None => Err(ParseError::new(
                    ParseErrorKind::UnknownVariable,
                    position,
                    known_variables(self.dimension),
                    describe(Some(tok)),
                )),
            },
            TokenKind::LParen => {
                if self.depth >= MAX_NESTING {
                    return Err(ParseError::new(
                        ParseErrorKind::NestingTooDeep,
                        position,
                        format!("at most {MAX_NESTING} nested parentheses"),
                        "`(`",
                    ));
                }
                self.depth += 1;
                let inner = self.sum()?;
                self.depth -= 1;
                let close = self.here();
                match self.bump() {
                    Some(t) if t.kind == TokenKind::RParen => Ok(inner),
                    other => Err(ParseError::new(
                        ParseErrorKind::UnexpectedToken,
                        close,
                        "`)`",
                        describe(other),
                    )),
                }
            }
            _ => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                position,
                "term",
                describe(Some(tok)),
            )),
        }
    }
}

fn integer<T: Scalar>(digits: &str) -> T {
    // Chunks of 18 digits fit in an i64.
    let mut acc = T::zero();
    for chunk in digits.as_bytes().chunks(18) {
        let chunk = std::str::from_utf8(chunk).expect("digits are ASCII");
        let shift = T::from_int(10i64.pow(chunk.len() as u32));
        acc *= &shift;
        acc += &T::from_int(chunk.parse().expect("lexer only produces decimal digit runs"));
    }
    acc
}

fn variable_axis(name: &str, dimension: usize) -> Option<usize> {
    if dimension <= 3 {
        if let Some(axis) = ["x", "y", "z"].iter().position(|v| *v == name) {
            return (axis < dimension).then_some(axis);
        }
    }
    let digits = name.strip_prefix('x')?;
    let k: usize = digits.parse().ok()?;
    (k >= 1 && k <= dimension && digits == k.to_string()).then(|| k - 1)
}

fn known_variables(dimension: usize) -> String {
    let mut names: Vec<String> = Vec::new();
    if dimension <= 3 {
        names.extend(["x", "y", "z"][..dimension].iter().map(|s| s.to_string()));
    }
    names.extend((1..=dimension).map(|k| format!("x{k}")));
    format!("a variable ({})", names.join(", "))
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiIndex;
    use crate::{QPolynomial, Rational};

    fn parse(s: &str, d: usize) -> Result<QPolynomial, ParseError> {
        parse_polynomial(s, d)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn monomial_product() {
        let p = parse("x^2*y^2", 2).unwrap();
        assert_eq!(p, QPolynomial::monomial(MultiIndex::new([2, 2]), q(1, 1)));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse("3/2*x - y^2", 2).unwrap();
        let expected = QPolynomial::from_terms(
            2,
            [(MultiIndex::new([1, 0]), q(3, 2)), (MultiIndex::new([0, 2]), q(-1, 1))],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn dangling_operator_reports_position() {
        let err = parse("x +", 2).unwrap_err();
        assert_eq!(err.position, 3);
        assert_eq!(err.expected, "term");
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);
    }

    #[test]
    fn error_cases() {
        assert_eq!(parse("z", 2).unwrap_err().kind, ParseErrorKind::UnknownVariable);
        assert_eq!(parse("x4", 3).unwrap_err().kind, ParseErrorKind::UnknownVariable);
        assert_eq!(parse("x^-1", 1).unwrap_err().kind, ParseErrorKind::MalformedExponent);
        assert_eq!(parse("x^y", 2).unwrap_err().kind, ParseErrorKind::MalformedExponent);
        let zero = parse("1/0", 1).unwrap_err();
        assert_eq!((zero.kind, zero.position), (ParseErrorKind::DivisionByZero, 2));
        assert_eq!(parse("--x", 1).unwrap_err().position, 1);
        assert_eq!(parse("2x", 1).unwrap_err().position, 1);
        assert_eq!(parse("(x", 1).unwrap_err().expected, "`)`");
        assert_eq!(parse("x.5", 1).unwrap_err().position, 1);
        assert_eq!(parse("", 1).unwrap_err().position, 0);
    }

    #[test]
    fn aliases_and_indexed_names_agree() {
        assert_eq!(parse("x*y + z", 3).unwrap(), parse("x1*x2 + x3", 3).unwrap());
        assert_eq!(parse("x4^2", 4).unwrap().to_string(), "x4^2");
    }

    #[test]
    fn parentheses_and_powers() {
        let p = parse("(x + y)^2 - (x - y)^2", 2).unwrap();
        assert_eq!(p, parse("4*x*y", 2).unwrap());
        assert_eq!(parse("-(x - 1)", 1).unwrap(), parse("1 - x", 1).unwrap());
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&QPolynomial::zero(2)), "0");
        assert_eq!(render(&parse("x^2 - 1/3", 1).unwrap()), "x^2 - 1/3");
        assert_eq!(render(&parse("y - 2*x*y + x^2", 2).unwrap()), "x^2 - 2*x*y + y");
    }

    #[test]
    fn fixtures_skip_comments() {
        let text = "# functions\nx\n\n  x^2 # square\n";
        let fs: Vec<QPolynomial> = parse_fixture(text, 1).unwrap();
        assert_eq!(fs.len(), 2);
        let err = parse_fixture::<Rational>("x\nx +\n", 1).unwrap_err();
        assert_eq!(err.0, 2);
    }

    #[test]
    fn token_positions_increase() {
        let toks = tokenize(" 3/2 * x1 ^ 2 ").unwrap();
        assert!(toks.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(toks[0].kind, TokenKind::Integer);
        assert_eq!(toks[1].kind, TokenKind::Slash);
    }
}
