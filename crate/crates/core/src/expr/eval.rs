use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Signed;

use super::{Expr, ExprKind, Symbol};
use crate::scalar::{digits_to_bits, EvalError, Number, PowScalar};

/// Values assigned to symbols.
pub type Assignment<S> = HashMap<Symbol, S>;

/// Side information gathered while evaluating.
#[derive(Clone, Debug)]
pub struct EvalStats {
    /// Smallest magnitude of any base raised to a negative power.
    pub min_denominator: f64,
}

impl Default for EvalStats {
    fn default() -> Self {
        EvalStats { min_denominator: f64::INFINITY }
    }
}

/// Memoizing evaluator over a fixed assignment. Shared subtrees are computed once.
pub struct Evaluator<'a, S> {
    env: &'a Assignment<S>,
    bits: usize,
    memo: HashMap<usize, (Expr, S)>,
    /// Values by structure, for equal subtrees built as distinct nodes.
    structural: HashMap<Expr, S>,
    pub stats: EvalStats,
}

impl<'a, S: PowScalar> Evaluator<'a, S> {
    pub fn new(env: &'a Assignment<S>, bits: usize) -> Self {
        Evaluator { env, bits, memo: HashMap::new(), structural: HashMap::new(), stats: EvalStats::default() }
    }

    pub fn eval(&mut self, root: &Expr) -> Result<S, EvalError> {
        if let Some((_, v)) = self.memo.get(&root.node_id()) {
            return Ok(v.clone());
        }
        let mut stack: Vec<(Expr, bool)> = vec![(root.clone(), false)];
        while let Some((e, expanded)) = stack.pop() {
            if self.memo.contains_key(&e.node_id()) {
                continue;
            }
            if !expanded {
                if let Some(v) = self.structural.get(&e) {
                    let v = v.clone();
                    self.memo.insert(e.node_id(), (e, v));
                    continue;
                }
                stack.push((e.clone(), true));
                match e.kind() {
                    ExprKind::Sum(xs) | ExprKind::Product(xs) => {
                        for x in xs {
                            if !self.memo.contains_key(&x.node_id()) {
                                stack.push((x.clone(), false));
                            }
                        }
                    }
                    ExprKind::Power(b, _) => {
                        if !self.memo.contains_key(&b.node_id()) {
                            stack.push((b.clone(), false));
                        }
                    }
                    _ => {}
                }
                continue;
            }
            let v = self.combine(&e)?;
            if !matches!(e.kind(), ExprKind::Constant(_) | ExprKind::Symbol(_)) {
                self.structural.insert(e.clone(), v.clone());
            }
            self.memo.insert(e.node_id(), (e, v));
        }
        Ok(self.memo[&root.node_id()].1.clone())
    }

    fn value(&self, e: &Expr) -> &S {
        &self.memo[&e.node_id()].1
    }

    fn combine(&mut self, e: &Expr) -> Result<S, EvalError> {
        Ok(match e.kind() {
            ExprKind::Constant(q) => S::from_rational(q),
            ExprKind::Symbol(s) => self.env.get(s).cloned().ok_or_else(|| EvalError::Unbound(s.name().to_string()))?,
            ExprKind::Sum(xs) => {
                let mut acc = self.value(&xs[0]).clone();
                for x in &xs[1..] {
                    acc = acc.plus(self.value(x));
                }
                acc
            }
            ExprKind::Product(xs) => {
                let mut acc = self.value(&xs[0]).clone();
                for x in &xs[1..] {
                    acc = acc.times(self.value(x));
                }
                acc
            }
            ExprKind::Power(b, r) => {
                let base = self.value(b).clone();
                if r.is_negative() {
                    let m = base.value_magnitude();
                    if m < self.stats.min_denominator {
                        self.stats.min_denominator = m;
                    }
                }
                base.pow_rational(r, self.bits)?
            }
        })
    }

    /// Sum of magnitudes of the top-level terms, a natural scale for cancellation tests.
    pub fn term_scale(&mut self, e: &Expr) -> Result<f64, EvalError> {
        match e.kind() {
            ExprKind::Sum(xs) => {
                let mut total = 0.0;
                for x in xs {
                    total += self.eval(x)?.value_magnitude();
                }
                Ok(total)
            }
            _ => Ok(self.eval(e)?.value_magnitude()),
        }
    }
}

/// Evaluates with exact rationals where possible and `digits`-digit floats otherwise.
pub fn eval(e: &Expr, assignment: &Assignment<BigRational>, digits: usize) -> Result<Number, EvalError> {
    let env: Assignment<Number> = assignment.iter().map(|(k, v)| (k.clone(), Number::Exact(v.clone()))).collect();
    eval_number(e, &env, digits)
}

pub fn eval_number(e: &Expr, env: &Assignment<Number>, digits: usize) -> Result<Number, EvalError> {
    Evaluator::new(env, digits_to_bits(digits)).eval(e)
}
