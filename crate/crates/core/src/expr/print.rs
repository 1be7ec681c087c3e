//! Parseable text rendering of expressions.

use std::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Expr, ExprKind};

fn write_rational(q: &BigRational, out: &mut String) {
    if q.denom().is_one() {
        write!(out, "{}", q.numer()).unwrap();
    } else {
        write!(out, "{}/{}", q.numer(), q.denom()).unwrap();
    }
}

fn write_exponent(q: &BigRational, out: &mut String) {
    if q.denom().is_one() && !q.is_negative() {
        write!(out, "^{}", q.numer()).unwrap();
    } else {
        out.push_str("^(");
        write_rational(q, out);
        out.push(')');
    }
}

fn is_negative_term(e: &Expr) -> bool {
    match e.kind() {
        ExprKind::Constant(q) => q.is_negative(),
        ExprKind::Product(xs) => xs[0].as_constant().is_some_and(Signed::is_negative),
        _ => false,
    }
}

fn write_negated(e: &Expr, out: &mut String) {
    match e.kind() {
        ExprKind::Constant(q) => write_rational(&-q, out),
        ExprKind::Product(xs) => {
            let c = -xs[0].as_constant().expect("negative coefficient");
            let rest = &xs[1..];
            if c.is_one() {
                write_factors(rest, out);
            } else {
                write_rational(&c, out);
                out.push('*');
                write_factors(rest, out);
            }
        }
        _ => unreachable!("only constants and products carry a sign"),
    }
}

fn write_factors(xs: &[Expr], out: &mut String) {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        match x.kind() {
            ExprKind::Sum(_) => {
                out.push('(');
                write_expr(x, out);
                out.push(')');
            }
            _ => write_expr(x, out),
        }
    }
}

fn write_base(b: &Expr, out: &mut String) {
    match b.kind() {
        ExprKind::Symbol(s) => out.push_str(s.name()),
        ExprKind::Constant(q) if q.denom().is_one() && !q.is_negative() => write_rational(q, out),
        _ => {
            out.push('(');
            write_expr(b, out);
            out.push(')');
        }
    }
}

pub(crate) fn write_expr(e: &Expr, out: &mut String) {
    match e.kind() {
        ExprKind::Constant(q) => write_rational(q, out),
        ExprKind::Symbol(s) => out.push_str(s.name()),
        ExprKind::Sum(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i == 0 {
                    write_expr(x, out);
                } else if is_negative_term(x) {
                    out.push_str(" - ");
                    write_negated(x, out);
                } else {
                    out.push_str(" + ");
                    write_expr(x, out);
                }
            }
        }
        ExprKind::Product(xs) => write_factors(xs, out),
        ExprKind::Power(b, r) => {
            write_base(b, out);
            write_exponent(r, out);
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(self, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
