use std::collections::HashMap;

use super::{Expr, ExprKind, Symbol};

pub(crate) fn substitute(e: &Expr, map: &HashMap<Symbol, Expr>) -> Expr {
    let mut memo = HashMap::new();
    let mask = map.keys().fold(0u64, |m, s| m | Expr::symbol(s.name()).0.mask);
    subst_rec(e, map, mask, &mut memo)
}

fn subst_rec(e: &Expr, map: &HashMap<Symbol, Expr>, mask: u64, memo: &mut HashMap<usize, Expr>) -> Expr {
    if e.0.mask & mask == 0 {
        return e.clone();
    }
    if let Some(r) = memo.get(&e.node_id()) {
        return r.clone();
    }
    let out = match e.kind() {
        ExprKind::Constant(_) => e.clone(),
        ExprKind::Symbol(s) => map.get(s).cloned().unwrap_or_else(|| e.clone()),
        ExprKind::Sum(xs) => Expr::sum(xs.iter().map(|x| subst_rec(x, map, mask, memo)).collect::<Vec<_>>()),
        ExprKind::Product(xs) => Expr::product(xs.iter().map(|x| subst_rec(x, map, mask, memo)).collect::<Vec<_>>()),
        ExprKind::Power(b, r) => Expr::pow(&subst_rec(b, map, mask, memo), r),
    };
    memo.insert(e.node_id(), out.clone());
    out
}
