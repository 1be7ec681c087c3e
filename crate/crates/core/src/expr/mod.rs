//! Immutable symbolic expressions over exact rationals with rational exponents.
//!
//! Every constructor returns a canonical tree: sums and products are flattened,
//! constants folded, like terms and equal bases merged, and children sorted by a
//! deterministic total order. Subtrees are shared through reference counting, so
//! derivatives and substitutions of large expressions stay compact DAGs.

mod diff;
mod eval;
mod order;
pub mod poly;
mod print;
mod subst;
pub mod zerotest;

pub use eval::{eval, eval_number, Assignment, EvalStats, Evaluator};
pub use poly::{bareiss_determinant, Poly};
pub use zerotest::{is_zero, Domain, Verdict, VerdictKind, Witness, ZeroTestConfig};

pub use crate::scalar::EvalError;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::number::exact_rational_pow;

/// A named variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// The node kinds of an expression tree.
#[derive(Clone)]
pub enum ExprKind {
    Constant(BigRational),
    Symbol(Symbol),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Expr, BigRational),
}

struct Node {
    kind: ExprKind,
    hash: u64,
    mask: u64,
    rational: bool,
}

/// A shared, immutable, canonical expression.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv(mut h: u64, bytes: &[u8]) -> u64 {
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn hash_rational(h: u64, q: &BigRational) -> u64 {
    let h = fnv(h, &q.numer().to_signed_bytes_le());
    fnv(fnv(h, b"/"), &q.denom().to_signed_bytes_le())
}

fn symbol_bit(name: &str) -> u64 {
    1u64 << (fnv(FNV_OFFSET, name.as_bytes()) % 64)
}

fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

impl Expr {
    fn from_kind(kind: ExprKind) -> Expr {
        let (hash, mask, rational) = match &kind {
            ExprKind::Constant(q) => (hash_rational(fnv(FNV_OFFSET, b"c"), q), 0, true),
            ExprKind::Symbol(s) => (fnv(fnv(FNV_OFFSET, b"s"), s.name().as_bytes()), symbol_bit(s.name()), true),
            ExprKind::Sum(xs) | ExprKind::Product(xs) => {
                let tag: &[u8] = if matches!(kind, ExprKind::Sum(_)) { b"+" } else { b"*" };
                let mut h = fnv(FNV_OFFSET, tag);
                let mut mask = 0;
                let mut rational = true;
                for x in xs {
                    h = fnv(h, &x.0.hash.to_le_bytes());
                    mask |= x.0.mask;
                    rational &= x.0.rational;
                }
                (h, mask, rational)
            }
            ExprKind::Power(b, e) => {
                let h = hash_rational(fnv(fnv(FNV_OFFSET, b"^"), &b.0.hash.to_le_bytes()), e);
                (h, b.0.mask, b.0.rational && is_integer(e))
            }
        };
        Expr(Arc::new(Node { kind, hash, mask, rational }))
    }

    pub fn kind(&self) -> &ExprKind {
        &self.0.kind
    }

    /// Structural hash (deterministic across runs).
    pub fn structure_hash(&self) -> u64 {
        self.0.hash
    }

    /// Stable identity of the shared node, used for memoization.
    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, o: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
    }

    /// True if no fractional exponent occurs, i.e. the expression is a rational function.
    pub fn is_rational_function(&self) -> bool {
        self.0.rational
    }

    /// Conservative test: false guarantees that `s` does not occur.
    pub fn may_contain(&self, s: &Symbol) -> bool {
        self.0.mask & symbol_bit(s.name()) != 0
    }

    pub fn constant(q: BigRational) -> Expr {
        Expr::from_kind(ExprKind::Constant(q))
    }

    pub fn int(v: i64) -> Expr {
        Expr::constant(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn symbol(name: &str) -> Expr {
        Expr::from_kind(ExprKind::Symbol(Symbol::new(name)))
    }

    pub fn from_symbol(s: &Symbol) -> Expr {
        Expr::from_kind(ExprKind::Symbol(s.clone()))
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        match self.kind() {
            ExprKind::Constant(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.kind() {
            ExprKind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero_constant(&self) -> bool {
        self.as_constant().is_some_and(Zero::is_zero)
    }

    pub fn is_one_constant(&self) -> bool {
        self.as_constant().is_some_and(One::is_one)
    }

    /// Children of a sum or product, empty for other kinds.
    pub fn children(&self) -> &[Expr] {
        match self.kind() {
            ExprKind::Sum(xs) | ExprKind::Product(xs) => xs,
            _ => &[],
        }
    }

    /// Splits a term into its rational coefficient and the remaining factor.
    fn split_coefficient(&self) -> (BigRational, Option<Expr>) {
        match self.kind() {
            ExprKind::Constant(q) => (q.clone(), None),
            ExprKind::Product(xs) => match xs[0].kind() {
                ExprKind::Constant(q) => {
                    let rest = if xs.len() == 2 {
                        xs[1].clone()
                    } else {
                        Expr::from_kind(ExprKind::Product(xs[1..].to_vec()))
                    };
                    (q.clone(), Some(rest))
                }
                _ => (BigRational::one(), Some(self.clone())),
            },
            _ => (BigRational::one(), Some(self.clone())),
        }
    }

    fn with_coefficient(c: BigRational, rest: Expr) -> Expr {
        if c.is_one() {
            return rest;
        }
        let mut xs = vec![Expr::constant(c)];
        match rest.kind() {
            ExprKind::Product(fs) => xs.extend(fs.iter().cloned()),
            _ => xs.push(rest),
        }
        Expr::from_kind(ExprKind::Product(xs))
    }

    /// Canonical sum of the given terms.
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        let mut constant = BigRational::zero();
        let mut index: HashMap<Expr, usize> = HashMap::new();
        let mut collected: Vec<(Expr, BigRational)> = Vec::new();
        let mut stack: Vec<Expr> = terms.into_iter().collect();
        stack.reverse();
        while let Some(t) = stack.pop() {
            if let ExprKind::Sum(xs) = t.kind() {
                stack.extend(xs.iter().rev().cloned());
                continue;
            }
            let (c, rest) = t.split_coefficient();
            match rest {
                None => constant += c,
                Some(r) => match index.get(&r) {
                    Some(&i) => collected[i].1 += c,
                    None => {
                        index.insert(r.clone(), collected.len());
                        collected.push((r, c));
                    }
                },
            }
        }
        let mut out: Vec<Expr> = collected
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| Expr::with_coefficient(c, r))
            .collect();
        out.sort_by(order::cmp_expr);
        if !constant.is_zero() {
            out.insert(0, Expr::constant(constant));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::from_kind(ExprKind::Sum(out)),
        }
    }

    /// Canonical product of the given factors.
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        let mut pending: Vec<Expr> = factors.into_iter().collect();
        let mut coefficient = BigRational::one();
        for _round in 0..8 {
            let mut index: HashMap<Expr, usize> = HashMap::new();
            let mut bases: Vec<(Expr, BigRational)> = Vec::new();
            let mut stack = std::mem::take(&mut pending);
            stack.reverse();
            while let Some(f) = stack.pop() {
                match f.kind() {
                    ExprKind::Product(xs) => stack.extend(xs.iter().rev().cloned()),
                    ExprKind::Constant(q) => {
                        if q.is_zero() {
                            return Expr::zero();
                        }
                        coefficient *= q;
                    }
                    _ => {
                        let (b, e) = match f.kind() {
                            ExprKind::Power(b, e) => (b.clone(), e.clone()),
                            _ => (f.clone(), BigRational::one()),
                        };
                        match index.get(&b) {
                            Some(&i) => bases[i].1 += e,
                            None => {
                                index.insert(b.clone(), bases.len());
                                bases.push((b, e));
                            }
                        }
                    }
                }
            }
            let mut out = Vec::new();
            let mut unstable = false;
            for (b, e) in bases {
                if e.is_zero() {
                    continue;
                }
                if let ExprKind::Constant(c) = b.kind() {
                    let (k, rest) = constant_power(c, &e);
                    if k.is_zero() {
                        return Expr::zero();
                    }
                    coefficient *= k;
                    if let Some(r) = rest {
                        out.push(r);
                    }
                    continue;
                }
                let f = if e.is_one() { b } else { Expr::pow(&b, &e) };
                if matches!(f.kind(), ExprKind::Product(_) | ExprKind::Constant(_)) {
                    unstable = true;
                }
                out.push(f);
            }
            if unstable {
                pending = out;
                continue;
            }
            out.sort_by(order::cmp_expr);
            if coefficient.is_zero() {
                return Expr::zero();
            }
            if out.is_empty() {
                return Expr::constant(coefficient);
            }
            if out.len() == 1 && coefficient.is_one() {
                return out.pop().unwrap();
            }
            if !coefficient.is_one() {
                out.insert(0, Expr::constant(coefficient));
            }
            return Expr::from_kind(ExprKind::Product(out));
        }
        unreachable!("product canonicalization did not stabilize")
    }

    /// Canonical power `base^exponent`.
    pub fn pow(base: &Expr, exponent: &BigRational) -> Expr {
        if exponent.is_zero() {
            return Expr::one();
        }
        if exponent.is_one() {
            return base.clone();
        }
        match base.kind() {
            ExprKind::Constant(c) => {
                let (k, rest) = constant_power(c, exponent);
                match rest {
                    None => Expr::constant(k),
                    Some(r) if k.is_one() => r,
                    Some(r) => Expr::from_kind(ExprKind::Product(vec![Expr::constant(k), r])),
                }
            }
            ExprKind::Power(b, s) if is_integer(exponent) || s.denom().is_even() => Expr::pow(b, &(s * exponent)),
            ExprKind::Product(xs) if is_integer(exponent) => Expr::product(xs.iter().map(|x| Expr::pow(x, exponent))),
            ExprKind::Product(xs) => match xs[0].kind() {
                ExprKind::Constant(c) if c.is_positive() => {
                    let rest = Expr::from_kind(ExprKind::Product(xs[1..].to_vec()));
                    let rest = if xs.len() == 2 { xs[1].clone() } else { rest };
                    Expr::product([Expr::pow(&xs[0], exponent), Expr::from_kind(ExprKind::Power(rest, exponent.clone()))])
                }
                _ => Expr::from_kind(ExprKind::Power(base.clone(), exponent.clone())),
            },
            _ => Expr::from_kind(ExprKind::Power(base.clone(), exponent.clone())),
        }
    }

    pub fn powi(&self, k: i64) -> Expr {
        Expr::pow(self, &BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow_frac(&self, n: i64, d: i64) -> Expr {
        Expr::pow(self, &BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn scale(&self, q: &BigRational) -> Expr {
        Expr::product([Expr::constant(q.clone()), self.clone()])
    }

    /// Rebuilds the tree bottom-up through the canonical constructors.
    pub fn canonicalize(&self) -> Expr {
        let mut memo = HashMap::new();
        self.rebuild(&mut memo)
    }

    fn rebuild(&self, memo: &mut HashMap<usize, Expr>) -> Expr {
        if let Some(e) = memo.get(&self.node_id()) {
            return e.clone();
        }
        let out = match self.kind() {
            ExprKind::Constant(_) | ExprKind::Symbol(_) => self.clone(),
            ExprKind::Sum(xs) => Expr::sum(xs.iter().map(|x| x.rebuild(memo)).collect::<Vec<_>>()),
            ExprKind::Product(xs) => Expr::product(xs.iter().map(|x| x.rebuild(memo)).collect::<Vec<_>>()),
            ExprKind::Power(b, e) => Expr::pow(&b.rebuild(memo), e),
        };
        memo.insert(self.node_id(), out.clone());
        out
    }

    /// All symbols occurring in the expression, sorted by name.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut seen = std::collections::HashSet::new();
        let mut out = std::collections::BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.node_id()) {
                continue;
            }
            match e.kind() {
                ExprKind::Symbol(s) => {
                    out.insert(s.clone());
                }
                ExprKind::Sum(xs) | ExprKind::Product(xs) => stack.extend(xs.iter().cloned()),
                ExprKind::Power(b, _) => stack.push(b.clone()),
                ExprKind::Constant(_) => {}
            }
        }
        out.into_iter().collect()
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.node_id()) {
                continue;
            }
            match e.kind() {
                ExprKind::Sum(xs) | ExprKind::Product(xs) => stack.extend(xs.iter().cloned()),
                ExprKind::Power(b, _) => stack.push(b.clone()),
                _ => {}
            }
        }
        seen.len()
    }

    pub fn diff(&self, s: &Symbol) -> Expr {
        diff::diff(self, s)
    }

    pub fn diff_by(&self, name: &str) -> Expr {
        diff::diff(self, &Symbol::new(name))
    }

    pub fn substitute(&self, map: &HashMap<Symbol, Expr>) -> Expr {
        subst::substitute(self, map)
    }
}

/// `c^e` split into a rational factor and an optional residual surd `c^f` with `0 < f < 1`.
fn constant_power(c: &BigRational, e: &BigRational) -> (BigRational, Option<Expr>) {
    match exact_rational_pow(c, e) {
        Ok(Some(v)) => (v, None),
        Err(_) => (BigRational::one(), Some(Expr::from_kind(ExprKind::Power(Expr::constant(c.clone()), e.clone())))),
        Ok(None) => {
            let k = e.floor();
            let f = e - &k;
            let mut whole = exact_rational_pow(c, &k).ok().flatten().unwrap_or_else(BigRational::one);
            let mut base = c.clone();
            if c.is_positive() {
                let (num, pulled_num) = extract_powers(c.numer(), f.denom());
                let (den, pulled_den) = extract_powers(c.denom(), f.denom());
                base = BigRational::new(num, den);
                let p = f.numer().to_u32().unwrap_or(1) as usize;
                whole *= num_traits::pow(BigRational::new(pulled_num, pulled_den), p);
                if base.is_one() {
                    return (whole, None);
                }
            }
            (whole, Some(Expr::from_kind(ExprKind::Power(Expr::constant(base), f))))
        }
    }
}

/// Splits `v = rest * root^q` by trial division over small primes, returning `(rest, root)`.
fn extract_powers(v: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
    let Some(q) = q.to_u32() else { return (v.clone(), BigInt::one()) };
    let mut rest = v.clone();
    let mut root = BigInt::one();
    for prime in (2u32..1000).filter(|k| (2..*k).take_while(|d| d * d <= *k).all(|d| k % d != 0)) {
        let pk = BigInt::from(prime).pow(q);
        if pk > rest {
            break;
        }
        while (&rest % &pk).is_zero() {
            rest /= &pk;
            root *= prime;
        }
    }
    (rest, root)
}

impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        self.ptr_eq(o) || (self.0.hash == o.0.hash && order::structurally_equal(self, o))
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, o: &Expr) -> Option<std::cmp::Ordering> {
        Some(order::cmp_expr(self, o))
    }
}

impl Ord for Expr {
    fn cmp(&self, o: &Expr) -> std::cmp::Ordering {
        order::cmp_expr(self, o)
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Expr {
        Expr::int(v)
    }
}

impl From<BigRational> for Expr {
    fn from(q: BigRational) -> Expr {
        Expr::constant(q)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, o: Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(&self, &o)
            }
        }
        impl std::ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, o: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, o)
            }
        }
        impl std::ops::$trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, o: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(&self, o)
            }
        }
        impl std::ops::$trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, o: Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, &o)
            }
        }
    };
}

binary_op!(Add, add, |a, b| Expr::sum([a.clone(), b.clone()]));
binary_op!(Sub, sub, |a, b| Expr::sum([a.clone(), Expr::product([Expr::int(-1), b.clone()])]));
binary_op!(Mul, mul, |a, b| Expr::product([a.clone(), b.clone()]));
binary_op!(Div, div, |a, b| Expr::product([a.clone(), b.recip()]));

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self])
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self.clone()])
    }
}

impl crate::scalar::Scalar for Expr {
    fn zero_value() -> Self {
        Expr::zero()
    }
    fn one_value() -> Self {
        Expr::one()
    }
    fn from_rational(q: &BigRational) -> Self {
        Expr::constant(q.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        Expr::sum([self.clone(), o.clone()])
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        Expr::product([self.clone(), o.clone()])
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (!self.is_zero_constant()).then(|| Expr::recip(self))
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero_constant()
    }
    /// Symbolic entries report magnitude one so that any of them may serve as a pivot.
    fn magnitude(&self) -> f64 {
        match self.as_constant() {
            Some(q) => q.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
            None => 1.0,
        }
    }
}

#[cfg(test)]
mod tests;
