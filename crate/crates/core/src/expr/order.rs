//! Deterministic total order and structural equality on expressions.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use super::{Expr, ExprKind};

fn rank(e: &Expr) -> u8 {
    match e.kind() {
        ExprKind::Constant(_) => 0,
        ExprKind::Symbol(_) => 1,
        ExprKind::Power(..) => 2,
        ExprKind::Product(_) => 3,
        ExprKind::Sum(_) => 4,
    }
}

fn split_power(e: &Expr) -> (&Expr, Option<&BigRational>) {
    match e.kind() {
        ExprKind::Power(b, x) => (b, Some(x)),
        _ => (e, None),
    }
}

/// Order used for children of sums and products: constants first, then factors
/// grouped by base (so `y3^-1` sorts next to `y3`), then compound terms by hash.
pub(crate) fn cmp_expr(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    let (ba, ea) = split_power(a);
    let (bb, eb) = split_power(b);
    if ea.is_some() || eb.is_some() {
        let one = BigRational::one();
        let c = cmp_plain(ba, bb);
        if c != Ordering::Equal {
            return c;
        }
        return ea.unwrap_or(&one).cmp(eb.unwrap_or(&one));
    }
    cmp_plain(a, b)
}

fn cmp_plain(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    match (a.kind(), b.kind()) {
        (ExprKind::Constant(x), ExprKind::Constant(y)) => x.cmp(y),
        (ExprKind::Symbol(x), ExprKind::Symbol(y)) => x.name().cmp(y.name()),
        _ => rank(a)
            .cmp(&rank(b))
            .then_with(|| a.structure_hash().cmp(&b.structure_hash()))
            .then_with(|| cmp_deep(a, b)),
    }
}

fn cmp_deep(a: &Expr, b: &Expr) -> Ordering {
    match (a.kind(), b.kind()) {
        (ExprKind::Sum(xs), ExprKind::Sum(ys)) | (ExprKind::Product(xs), ExprKind::Product(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                let c = cmp_expr(x, y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (ExprKind::Power(x, p), ExprKind::Power(y, q)) => cmp_expr(x, y).then_with(|| p.cmp(q)),
        _ => rank(a).cmp(&rank(b)),
    }
}

pub(crate) fn structurally_equal(a: &Expr, b: &Expr) -> bool {
    if a.ptr_eq(b) {
        return true;
    }
    if a.structure_hash() != b.structure_hash() {
        return false;
    }
    match (a.kind(), b.kind()) {
        (ExprKind::Constant(x), ExprKind::Constant(y)) => x == y,
        (ExprKind::Symbol(x), ExprKind::Symbol(y)) => x == y,
        (ExprKind::Sum(xs), ExprKind::Sum(ys)) | (ExprKind::Product(xs), ExprKind::Product(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| structurally_equal(x, y))
        }
        (ExprKind::Power(x, p), ExprKind::Power(y, q)) => p == q && structurally_equal(x, y),
        _ => false,
    }
}
