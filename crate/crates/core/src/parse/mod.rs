//! Text front-end: an LL(1) recursive-descent parser for expressions and the
//! small stanza format describing an ODE.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ['-'] atom ['^' '(' rational ')' | '^' integer]
//! atom   := number | symbol | '(' expr ')'
//! ```

mod lexer;
mod ode;

pub use ode::{jet_symbol, parse_ode, OdeError, OdeSpec, MAX_ORDER, MIN_ORDER};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::Expr;
use lexer::{tokenize, Tok, Token};

/// A syntax error with its 1-based position and the tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

const ATOM_START: [&str; 3] = ["number", "symbol", "`(`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn continuation(&self) -> Vec<&'static str> {
        let mut v = vec!["`+`", "`-`", "`*`", "`/`", "`^`"];
        v.push(if self.depth > 0 { "`)`" } else { "end of input" });
        v
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(-self.term()?);
                }
                _ => return Ok(Expr::sum(terms)),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    factors.push(self.factor()?.recip());
                }
                _ => return Ok(Expr::product(factors)),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let base = self.atom()?;
        let value = if self.peek().tok == Tok::Caret {
            self.bump();
            let exponent = self.exponent()?;
            Expr::pow(&base, &exponent)
        } else {
            base
        };
        Ok(if negate { -value } else { value })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match &self.peek().tok {
            Tok::Number(q) if q.is_integer() => {
                let v = q.to_integer();
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        match self.peek().tok {
            Tok::Number(_) => Ok(BigRational::from_integer(self.integer()?)),
            Tok::LParen => {
                self.bump();
                let negative = if self.peek().tok == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = self.integer()?;
                let den = if self.peek().tok == Tok::Slash {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(ParseError {
                            line: at.line,
                            column: at.column,
                            expected: vec!["nonzero integer".into()],
                            found: "`0`".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                if self.peek().tok != Tok::RParen {
                    return Err(self.error(&["`/`", "`)`"]));
                }
                self.bump();
                let q = BigRational::new(num, den);
                Ok(if negative { -q } else { q })
            }
            _ => Err(self.error(&["integer", "`(`"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok.clone() {
            Tok::Number(q) => {
                self.bump();
                Ok(Expr::constant(q))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::symbol(&name))
            }
            Tok::LParen => {
                self.bump();
                self.depth += 1;
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error(&self.continuation()));
                }
                self.depth -= 1;
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}

/// Parses `text` whose first character sits at the given 1-based position.
pub(crate) fn parse_expr_at(text: &str, line: usize, column: usize) -> Result<Expr, ParseError> {
    let tokens = tokenize(text, line, column)?;
    let mut p = Parser { tokens, pos: 0, depth: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(&p.continuation()));
    }
    Ok(e)
}

/// Parses an expression such as `5*y4^2/(3*y3)` or `y4^(5/4)`.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_at(text, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ExprKind;
    use crate::scalar::rat;

    #[test]
    fn quotient_becomes_product() {
        let e = parse_expr("5*y4^2/(3*y3)").unwrap();
        let ExprKind::Product(xs) = e.kind() else { panic!("{e}") };
        assert_eq!(xs.len(), 3);
        assert_eq!(xs[0].as_constant(), Some(&rat(5, 3)));
        assert!(xs.contains(&Expr::symbol("y4").powi(2)));
        assert!(xs.contains(&Expr::symbol("y3").powi(-1)));
    }

    #[test]
    fn rational_exponent() {
        let e = parse_expr("y4^(5/4)").unwrap();
        assert!(matches!(e.kind(), ExprKind::Power(b, r) if *b == Expr::symbol("y4") && *r == rat(5, 4)));
    }

    #[test]
    fn unbalanced_paren_position() {
        let err = parse_expr("(").unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        assert!(err.expected.contains(&"symbol".to_string()));
    }

    #[test]
    fn precedence() {
        let y = Expr::symbol("y");
        assert_eq!(parse_expr("-y^2").unwrap(), -y.powi(2));
        assert_eq!(parse_expr("2*y^(-1/2)").unwrap(), Expr::int(2) * y.pow_frac(-1, 2));
        assert_eq!(parse_expr("1 - 2 - 3").unwrap(), Expr::int(-4));
        assert_eq!(parse_expr("12/4/3").unwrap(), Expr::int(1));
        assert_eq!(parse_expr("0.25").unwrap(), Expr::rational(1, 4));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let err = parse_expr("5y4").unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        assert!(parse_expr("y^2^3").is_err());
        assert!(parse_expr("y^(1/0)").is_err());
        assert!(parse_expr("y $ 2").is_err());
    }
}
