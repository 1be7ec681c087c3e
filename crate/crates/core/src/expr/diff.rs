use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::{Expr, ExprKind, Symbol};

/// Partial derivative with memoization over shared subtrees.
pub(crate) fn diff(e: &Expr, s: &Symbol) -> Expr {
    let mut memo = HashMap::new();
    diff_rec(e, s, &mut memo)
}

fn diff_rec(e: &Expr, s: &Symbol, memo: &mut HashMap<usize, Expr>) -> Expr {
    if !e.may_contain(s) {
        return Expr::zero();
    }
    if let Some(d) = memo.get(&e.node_id()) {
        return d.clone();
    }
    let out = match e.kind() {
        ExprKind::Constant(_) => Expr::zero(),
        ExprKind::Symbol(x) => {
            if x == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        ExprKind::Sum(xs) => {
            let terms: Vec<Expr> = xs.iter().map(|x| diff_rec(x, s, memo)).collect();
            Expr::sum(terms)
        }
        ExprKind::Product(xs) => {
            let mut terms = Vec::new();
            for i in 0..xs.len() {
                let d = diff_rec(&xs[i], s, memo);
                if d.is_zero_constant() {
                    continue;
                }
                let mut factors: Vec<Expr> = Vec::with_capacity(xs.len());
                for (j, x) in xs.iter().enumerate() {
                    factors.push(if i == j { d.clone() } else { x.clone() });
                }
                terms.push(Expr::product(factors));
            }
            Expr::sum(terms)
        }
        ExprKind::Power(b, r) => {
            let db = diff_rec(b, s, memo);
            if db.is_zero_constant() {
                Expr::zero()
            } else {
                let lowered = Expr::pow(b, &(r - BigRational::one()));
                Expr::product([Expr::constant(r.clone()), lowered, db])
            }
        }
    };
    memo.insert(e.node_id(), out.clone());
    out
}
