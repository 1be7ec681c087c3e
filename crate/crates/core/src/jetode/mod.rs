//! Jet-space calculus for `y^(n) = F`: the total derivative, the Wünschmann
//! conditions for orders 3 to 7 and the fifth-order classification predicates.

mod conditions;
#[cfg(test)]
mod tests;

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{eval, is_zero, Assignment, EvalError, Expr, Symbol, Verdict, VerdictKind, Witness, ZeroTestConfig};
use crate::parse::{jet_symbol, parse_expr, OdeSpec};
use crate::scalar::Number;

/// Highest order for which the conditions are available.
pub const MAX_WUNSCHMANN_ORDER: usize = 7;

#[derive(Debug, Clone, Error)]
pub enum JetError {
    #[error("Wünschmann conditions are not available for order {0} (supported: 3..=7)")]
    UnsupportedOrder(usize),
    #[error("expected an equation of order {expected}, found order {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("a jet point of order {expected} needs {} coordinates, found {found}", expected + 1)]
    Arity { expected: usize, found: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("malformed condition table: {0}")]
    Table(String),
}

/// The two stored encodings of the conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Flat,
    Grouped,
}

/// A point `(x, y, y1, ..., y_{n-1})` of the jet space of an order `n` equation.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint {
    coords: Vec<BigRational>,
}

impl JetPoint {
    /// `coords` lists `x, y, y1, ..., y_{order-1}`.
    pub fn new(order: usize, coords: Vec<BigRational>) -> Result<JetPoint, JetError> {
        if coords.len() != order + 1 {
            return Err(JetError::Arity { expected: order, found: coords.len() });
        }
        Ok(JetPoint { coords })
    }

    pub fn from_ints(order: usize, coords: &[i64]) -> Result<JetPoint, JetError> {
        JetPoint::new(order, coords.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn order(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn x(&self) -> &BigRational {
        &self.coords[0]
    }

    /// `y_k`, with `k = 0` giving `y`.
    pub fn y(&self, k: usize) -> &BigRational {
        &self.coords[k + 1]
    }

    pub fn assignment(&self) -> Assignment<BigRational> {
        let mut env = HashMap::new();
        env.insert(Symbol::new("x"), self.coords[0].clone());
        for (k, v) in self.coords[1..].iter().enumerate() {
            env.insert(jet_symbol(k), v.clone());
        }
        env
    }
}

/// Applies `D = d/dx + y1 d/dy + ... + y_{n-1} d/dy_{n-2} + F d/dy_{n-1}`.
pub fn total_derivative(e: &Expr, spec: &OdeSpec) -> Expr {
    let n = spec.order;
    let mut terms = vec![e.diff(&Symbol::new("x"))];
    for k in 0..n {
        let s = jet_symbol(k);
        if !e.may_contain(&s) {
            continue;
        }
        let coefficient = if k + 1 < n { Expr::from_symbol(&jet_symbol(k + 1)) } else { spec.f.clone() };
        terms.push(Expr::product([coefficient, e.diff(&s)]));
    }
    Expr::sum(terms)
}

fn flat_to_expr(table: &[(i64, &str)]) -> Result<Expr, JetError> {
    let mut terms = Vec::with_capacity(table.len());
    for (coefficient, factors) in table {
        let mut parts = vec![Expr::int(*coefficient)];
        for factor in factors.split_whitespace() {
            let (name, power) = match factor.split_once('^') {
                Some((name, p)) => (name, p.parse::<i64>().map_err(|_| JetError::Table(factor.to_string()))?),
                None => (factor, 1),
            };
            parts.push(Expr::symbol(name).powi(power));
        }
        terms.push(Expr::product(parts));
    }
    Ok(Expr::sum(terms))
}

/// The conditions of order `order` over the placeholder symbols `Fy`, `Fk`,
/// `DFk` and `D2Fk`.
pub fn condition_templates(order: usize, encoding: Encoding) -> Result<Vec<Expr>, JetError> {
    match encoding {
        Encoding::Flat => {
            let tables = conditions::flat(order).ok_or(JetError::UnsupportedOrder(order))?;
            tables.iter().map(|t| flat_to_expr(t)).collect()
        }
        Encoding::Grouped => {
            let texts = conditions::grouped(order).ok_or(JetError::UnsupportedOrder(order))?;
            texts.iter().map(|t| parse_expr(t).map_err(|e| JetError::Table(e.to_string()))).collect()
        }
    }
}

/// Weight of a placeholder under `w(F_k) = n - k`, `w(F_y) = n`, `w(D) = 1`.
#[cfg(test)]
pub(crate) fn placeholder_weight(name: &str, order: usize) -> Option<usize> {
    if name == "Fy" {
        return Some(order);
    }
    let (shift, index) = if let Some(rest) = name.strip_prefix("D2F") {
        (2, rest)
    } else if let Some(rest) = name.strip_prefix("DF") {
        (1, rest)
    } else {
        (0, name.strip_prefix('F')?)
    };
    let k: usize = index.parse().ok()?;
    (1..order).contains(&k).then(|| order - k + shift)
}

struct Instantiator<'a> {
    spec: &'a OdeSpec,
    cache: HashMap<String, Expr>,
}

impl<'a> Instantiator<'a> {
    fn new(spec: &'a OdeSpec) -> Self {
        Instantiator { spec, cache: HashMap::new() }
    }

    fn get(&mut self, name: &str) -> Result<Expr, JetError> {
        if let Some(e) = self.cache.get(name) {
            return Ok(e.clone());
        }
        let value = if name == "Fy" {
            self.spec.f_partial(0)
        } else if let Some(rest) = name.strip_prefix("D2F") {
            let inner = self.get(&format!("DF{rest}"))?;
            total_derivative(&inner, self.spec)
        } else if let Some(rest) = name.strip_prefix("DF") {
            let inner = self.get(&format!("F{rest}"))?;
            total_derivative(&inner, self.spec)
        } else if let Some(k) = name.strip_prefix('F').and_then(|r| r.parse::<usize>().ok()) {
            self.spec.f_partial(k)
        } else {
            return Err(JetError::Table(format!("unknown placeholder {name}")));
        };
        self.cache.insert(name.to_string(), value.clone());
        Ok(value)
    }

    fn instantiate(&mut self, template: &Expr) -> Result<Expr, JetError> {
        let mut map = HashMap::new();
        for s in template.symbols() {
            let value = self.get(s.name())?;
            map.insert(s, value);
        }
        Ok(template.substitute(&map))
    }
}

/// The `n - 2` Wünschmann conditions instantiated with the right-hand side of `spec`.
pub fn wunschmann_conditions(spec: &OdeSpec) -> Result<Vec<Expr>, JetError> {
    let templates = condition_templates(spec.order, Encoding::Flat)?;
    let mut inst = Instantiator::new(spec);
    templates.iter().map(|t| inst.instantiate(t)).collect()
}

/// Values of the conditions at a jet point.
pub fn evaluate_conditions(spec: &OdeSpec, point: &JetPoint, digits: usize) -> Result<Vec<Number>, JetError> {
    if point.order() != spec.order {
        return Err(JetError::OrderMismatch { expected: spec.order, found: point.order() });
    }
    let env = point.assignment();
    wunschmann_conditions(spec)?.iter().map(|c| Ok(eval(c, &env, digits)?)).collect()
}

/// Per-condition verdicts of [`check_wunschmann`].
#[derive(Clone, Debug)]
pub struct WunschmannReport {
    pub order: usize,
    pub verdicts: Vec<Verdict>,
}

impl WunschmannReport {
    /// True when every condition vanishes (exactly or numerically).
    pub fn satisfied(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_zero)
    }

    /// Witnesses of the failing conditions, indexed from 1.
    pub fn witnesses(&self) -> Vec<(usize, &Witness)> {
        self.verdicts.iter().enumerate().filter_map(|(i, v)| v.witness().map(|w| (i + 1, w))).collect()
    }

    /// The conditions combined into one verdict.
    pub fn combined(&self) -> Verdict {
        combine(&self.verdicts)
    }
}

/// Runs the identity test on every condition.
pub fn check_wunschmann(spec: &OdeSpec, cfg: &ZeroTestConfig) -> Result<WunschmannReport, JetError> {
    let conditions = wunschmann_conditions(spec)?;
    let verdicts = conditions.par_iter().map(|c| is_zero(c, cfg)).collect();
    Ok(WunschmannReport { order: spec.order, verdicts })
}

/// NonZero wins, then Inconclusive, then ZeroNumerically.
pub(crate) fn combine(verdicts: &[Verdict]) -> Verdict {
    if let Some(v) = verdicts.iter().find(|v| v.is_nonzero()) {
        return v.clone();
    }
    if let Some(v) = verdicts.iter().find(|v| v.is_inconclusive()) {
        return v.clone();
    }
    if let Some(v) = verdicts.iter().find(|v| matches!(v.kind, VerdictKind::ZeroNumerically)) {
        return v.clone();
    }
    verdicts.first().cloned().unwrap_or_else(|| is_zero(&Expr::zero(), &ZeroTestConfig::default()))
}

/// Alignment of the curvature with the invariant tensor, `K = u * (...)`.
#[derive(Clone, Debug)]
pub struct KAlignment {
    /// Zero when `u` is constant on the jet space.
    pub verdict: Verdict,
    /// `u` solved from the linear occurrence (absent when `F44` vanishes).
    pub u: Option<Expr>,
    /// `u` evaluated at a sample point when it is constant.
    pub u_value: Option<Number>,
}

/// The fifth-order predicates.
#[derive(Clone, Debug)]
pub struct Classification5 {
    pub wunschmann: WunschmannReport,
    /// `F44 = 0`.
    pub torsion_free: Verdict,
    pub da3_zero: Verdict,
    /// `F444 = 0`.
    pub da7_zero: Verdict,
    pub k_aligned: KAlignment,
}

fn partial(e: &Expr, ks: &[usize]) -> Expr {
    ks.iter().fold(e.clone(), |acc, &k| acc.diff(&jet_symbol(k)))
}

/// `(DF4)_44 - F344/2 - 2/5 F4 F444 - 8/15 F44^2` (the `u`-free part of the alignment condition).
fn alignment_rest(spec: &OdeSpec) -> Expr {
    let f = &spec.f;
    let f4 = partial(f, &[4]);
    let df4 = total_derivative(&f4, spec);
    Expr::sum([
        partial(&df4, &[4, 4]),
        partial(f, &[3, 4, 4]).scale(&q(-1, 2)),
        Expr::product([f4, partial(f, &[4, 4, 4])]).scale(&q(-2, 5)),
        partial(f, &[4, 4]).powi(2).scale(&q(-8, 15)),
    ])
}

fn da3_expression(spec: &OdeSpec) -> Expr {
    let f = &spec.f;
    let f3 = partial(f, &[3]);
    let f4 = partial(f, &[4]);
    let f44 = partial(f, &[4, 4]);
    let f444 = partial(f, &[4, 4, 4]);
    let df3 = total_derivative(&f3, spec);
    let df4 = total_derivative(&f4, spec);
    Expr::sum([
        partial(&df4, &[3, 4]),
        partial(&df3, &[4, 4]).scale(&q(-1, 1)),
        Expr::product([partial(&df4, &[4]), f44.clone()]).scale(&q(-3, 5)),
        Expr::product([df4, f444.clone()]).scale(&q(-4, 5)),
        Expr::product([f44.powi(2), f4.clone()]).scale(&q(6, 25)),
        Expr::product([f4.powi(2), f444.clone()]).scale(&q(4, 25)),
        Expr::product([partial(f, &[3, 4]), f44]).scale(&q(3, 10)),
        Expr::product([f4, partial(f, &[3, 4, 4])]).scale(&q(-1, 5)),
        Expr::product([f3, f444]).scale(&q(3, 5)),
        partial(f, &[2, 4, 4]),
        partial(f, &[4, 3, 3]).scale(&q(-1, 2)),
    ])
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Sample points used to report the value of a constant `u`.
fn probe_points() -> Vec<JetPoint> {
    let rows: [[i64; 6]; 3] = [[1, 2, 3, 5, 7, 11], [2, 3, 1, 4, 9, 6], [3, 1, 4, 2, 5, 8]];
    rows.iter()
        .map(|r| JetPoint::new(5, r.iter().map(|&v| q(v, 3)).collect()).expect("six coordinates"))
        .collect()
}

fn k_alignment(spec: &OdeSpec, f44_verdict: &Verdict, cfg: &ZeroTestConfig) -> KAlignment {
    if f44_verdict.is_zero() {
        let verdict = Verdict {
            kind: VerdictKind::Inconclusive("F44 vanishes, so u is undetermined".into()),
            ..f44_verdict.clone()
        };
        return KAlignment { verdict, u: None, u_value: None };
    }
    let f44 = partial(&spec.f, &[4, 4]);
    let u = Expr::product([alignment_rest(spec), f44.powi(-2)]).scale(&q(-1, 7));
    let gradients: Vec<Expr> = spec.jet_symbols().iter().map(|s| u.diff(s)).collect();
    let verdicts: Vec<Verdict> = gradients.par_iter().map(|g| is_zero(g, cfg)).collect();
    let verdict = combine(&verdicts);
    let u_value = if verdict.is_zero() {
        probe_points().iter().find_map(|p| eval(&u, &p.assignment(), cfg.digits).ok())
    } else {
        None
    };
    KAlignment { verdict, u: Some(u), u_value }
}

/// Evaluates the fifth-order predicates.
pub fn classify5(spec: &OdeSpec, cfg: &ZeroTestConfig) -> Result<Classification5, JetError> {
    if spec.order != 5 {
        return Err(JetError::OrderMismatch { expected: 5, found: spec.order });
    }
    let wunschmann = check_wunschmann(spec, cfg)?;
    let f44 = partial(&spec.f, &[4, 4]);
    let torsion_free = is_zero(&f44, cfg);
    let da7_zero = is_zero(&partial(&spec.f, &[4, 4, 4]), cfg);
    let da3_zero = is_zero(&da3_expression(spec), cfg);
    let k_aligned = k_alignment(spec, &torsion_free, cfg);
    Ok(Classification5 { wunschmann, torsion_free, da3_zero, da7_zero, k_aligned })
}
