use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use super::{parse_expr_at, ParseError};
use crate::expr::{Expr, Symbol};

pub const MIN_ORDER: usize = 3;
pub const MAX_ORDER: usize = 9;

/// Errors from reading an ODE description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("validation error: {0}")]
    Validation(String),
}

/// An ODE `y^(n) = F(x, y, y1, ..., y_{n-1})`.
#[derive(Clone, Debug)]
pub struct OdeSpec {
    pub order: usize,
    /// Right-hand side with every auxiliary definition substituted.
    pub f: Expr,
    pub name: Option<String>,
    /// Auxiliary definitions in the order they were given, as written.
    pub aux: Vec<(Symbol, Expr)>,
}

/// The name of the jet coordinate `y_k` (`y` for `k = 0`).
pub fn jet_symbol(k: usize) -> Symbol {
    if k == 0 {
        Symbol::new("y")
    } else {
        Symbol::new(&format!("y{k}"))
    }
}

fn jet_index(name: &str) -> Option<usize> {
    if name == "y" {
        return Some(0);
    }
    let digits = name.strip_prefix('y')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

impl OdeSpec {
    /// Validates `f` against the jet coordinates of order `order`.
    pub fn new(order: usize, f: Expr) -> Result<OdeSpec, OdeError> {
        check_order(order)?;
        check_symbols(order, &f, &HashSet::new(), "F")?;
        Ok(OdeSpec { order, f, name: None, aux: Vec::new() })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Coordinates `x, y, y1, ..., y_{n-1}`.
    pub fn jet_symbols(&self) -> Vec<Symbol> {
        let mut v = vec![Symbol::new("x")];
        v.extend((0..self.order).map(jet_symbol));
        v
    }

    /// Partial derivative `F_k = dF/dy_k` (`k = 0` gives `F_y`).
    pub fn f_partial(&self, k: usize) -> Expr {
        self.f.diff(&jet_symbol(k))
    }
}

impl fmt::Display for OdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "name = {n}")?;
        }
        writeln!(f, "order = {}", self.order)?;
        for (s, e) in &self.aux {
            writeln!(f, "let {s} = {e}")?;
        }
        write!(f, "F = {}", self.f)
    }
}

fn check_order(order: usize) -> Result<(), OdeError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(OdeError::Validation(format!("order {order} is outside {MIN_ORDER}..={MAX_ORDER}")));
    }
    Ok(())
}

fn check_symbols(order: usize, e: &Expr, defined: &HashSet<Symbol>, context: &str) -> Result<(), OdeError> {
    for s in e.symbols() {
        if s.name() == "x" || defined.contains(&s) {
            continue;
        }
        match jet_index(s.name()) {
            Some(k) if k < order => {}
            Some(_) => {
                return Err(OdeError::Validation(format!(
                    "`{s}` in {context} is not a jet coordinate of an order {order} equation"
                )))
            }
            None => return Err(OdeError::Validation(format!("undefined symbol `{s}` in {context}"))),
        }
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Reads an ODE description:
///
/// ```text
/// name = ex54
/// order = 5
/// let r = y3
/// F = 5*y4^2/(4*r)
/// ```
pub fn parse_ode(text: &str) -> Result<OdeSpec, OdeError> {
    let mut order: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut lets: Vec<(Symbol, Expr, usize)> = Vec::new();
    let mut rhs: Option<(Expr, usize)> = None;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let Some(eq) = line.find('=') else {
            return Err(ParseError {
                line: line_no,
                column: line.trim_end().chars().count() + 1,
                expected: vec!["`=`".into()],
                found: "end of line".into(),
            }
            .into());
        };
        let key = line[..eq].trim();
        let value = &line[eq + 1..];
        let value_col = line[..eq + 1].chars().count() + 1;
        let mut words = key.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("order"), None, _) => {
                let v = value.trim();
                let n = v.parse::<usize>().map_err(|_| ParseError {
                    line: line_no,
                    column: value_col + (value.len() - value.trim_start().len()),
                    expected: vec!["integer".into()],
                    found: format!("`{v}`"),
                })?;
                if order.replace(n).is_some() {
                    return Err(OdeError::Validation("duplicate `order` stanza".into()));
                }
            }
            (Some("name"), None, _) => {
                let v = value.trim().trim_matches('"').to_string();
                name = Some(v);
            }
            (Some("let"), Some(sym), None) => {
                if !is_identifier(sym) {
                    return Err(OdeError::Validation(format!("`{sym}` is not a valid symbol name")));
                }
                let e = parse_expr_at(value, line_no, value_col)?;
                lets.push((Symbol::new(sym), e, line_no));
            }
            (Some("F"), None, _) => {
                if rhs.is_some() {
                    return Err(OdeError::Validation("duplicate `F` stanza".into()));
                }
                rhs = Some((parse_expr_at(value, line_no, value_col)?, line_no));
            }
            _ => {
                return Err(ParseError {
                    line: line_no,
                    column: indent + 1,
                    expected: vec!["`order`".into(), "`name`".into(), "`let <symbol>`".into(), "`F`".into()],
                    found: format!("`{key}`"),
                }
                .into())
            }
        }
    }
    let order = order.ok_or_else(|| OdeError::Validation("missing `order` stanza".into()))?;
    check_order(order)?;
    let (f, _) = rhs.ok_or_else(|| OdeError::Validation("missing `F` stanza".into()))?;

    let mut defined: HashSet<Symbol> = HashSet::new();
    let mut expansions: HashMap<Symbol, Expr> = HashMap::new();
    for (sym, e, line_no) in &lets {
        if sym.name() == "x" || jet_index(sym.name()).is_some() || sym.name() == "F" {
            return Err(OdeError::Validation(format!("`let {sym}` on line {line_no} shadows a reserved name")));
        }
        if defined.contains(sym) {
            return Err(OdeError::Validation(format!("`{sym}` is defined twice")));
        }
        if e.symbols().contains(sym) {
            return Err(OdeError::Validation(format!("definition of `{sym}` refers to itself")));
        }
        check_symbols(order, e, &defined, &format!("the definition of `{sym}`"))?;
        expansions.insert(sym.clone(), e.substitute(&expansions));
        defined.insert(sym.clone());
    }
    check_symbols(order, &f, &defined, "F")?;
    let f = f.substitute(&expansions);
    Ok(OdeSpec { order, f, name, aux: lets.into_iter().map(|(s, e, _)| (s, e)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    #[test]
    fn flat_equation() {
        let spec = parse_ode("order=5\nF=0").unwrap();
        assert_eq!(spec.order, 5);
        assert!(spec.f.is_zero_constant());
    }

    #[test]
    fn rational_example() {
        let spec = parse_ode("order=5\nF=5*y4^2/(4*y3)").unwrap();
        assert_eq!(spec.f, parse_expr("5/4*y4^2*y3^(-1)").unwrap());
    }

    #[test]
    fn out_of_range_jet_symbol() {
        match parse_ode("order=5\nF=y5") {
            Err(OdeError::Validation(msg)) => assert!(msg.contains("y5"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_stanzas() {
        assert!(matches!(parse_ode("F=y1"), Err(OdeError::Validation(m)) if m.contains("order")));
        assert!(matches!(parse_ode("order = 4"), Err(OdeError::Validation(m)) if m.contains("F")));
        assert!(matches!(parse_ode("order = 2\nF = 0"), Err(OdeError::Validation(_))));
    }

    #[test]
    fn auxiliary_definitions_are_inlined() {
        let text = "# sample\nname = \"demo\"\norder = 5\nlet s = y3 + y2\nlet w = s^(1/2)\nF = w*y4";
        let spec = parse_ode(text).unwrap();
        assert_eq!(spec.name.as_deref(), Some("demo"));
        assert_eq!(spec.aux.len(), 2);
        assert_eq!(spec.f, parse_expr("(y3 + y2)^(1/2)*y4").unwrap());
    }

    #[test]
    fn forward_reference_is_rejected() {
        let err = parse_ode("order = 5\nlet a = b\nlet b = y1\nF = a").unwrap_err();
        assert!(matches!(err, OdeError::Validation(m) if m.contains("`b`")));
    }

    #[test]
    fn expression_errors_carry_file_position() {
        match parse_ode("order = 5\nF = y4 + (") {
            Err(OdeError::Parse(e)) => assert_eq!((e.line, e.column), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_stanza() {
        assert!(matches!(parse_ode("order = 5\nG = 1\nF = 0"), Err(OdeError::Parse(e)) if e.line == 2));
    }
}
