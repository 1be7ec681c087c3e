//! Randomized identity testing: exact Schwartz–Zippel evaluation for rational
//! functions, high-precision sampling for expressions with fractional powers.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Assignment, EvalError, Evaluator, Expr, ExprKind, Symbol};
use crate::scalar::{digits_to_bits, Number, Scalar, DEFAULT_DIGITS};

/// Sampling ranges for the variables of an identity test.
#[derive(Clone, Debug)]
pub struct Domain {
    /// Half-width of the integer box used by the exact path.
    pub integer_bound: i64,
    /// Default interval for the numeric path (positive, so that fractional powers are real).
    pub numeric_range: (BigRational, BigRational),
    /// Per-symbol overrides, used by both paths (sampled on a grid of step 1/1000).
    pub ranges: BTreeMap<Symbol, (BigRational, BigRational)>,
    /// Points where some base raised to a negative power is smaller than this are skipped
    /// on the numeric path.
    pub pole_margin: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Domain {
            integer_bound: 1_000_000,
            numeric_range: (BigRational::new(1.into(), 2.into()), BigRational::new(5.into(), 2.into())),
            ranges: BTreeMap::new(),
            pole_margin: 1e-3,
        }
    }
}

impl Domain {
    pub fn with_range(mut self, name: &str, lo: BigRational, hi: BigRational) -> Self {
        self.ranges.insert(Symbol::new(name), (lo, hi));
        self
    }
}

/// Configuration of [`is_zero`].
#[derive(Clone, Debug)]
pub struct ZeroTestConfig {
    pub trials: usize,
    pub numeric_points: usize,
    pub digits: usize,
    pub tol: f64,
    pub seed: u64,
    pub domain: Domain,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig { trials: 25, numeric_points: 8, digits: DEFAULT_DIGITS, tol: 1e-40, seed: 0x5eed, domain: Domain::default() }
    }
}

/// A point at which an expression evaluated to a nonzero value.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub point: Vec<(String, String)>,
    pub value: String,
}

#[derive(Clone, Debug)]
pub enum VerdictKind {
    /// Exact certification of a rational-function identity.
    Zero,
    /// All high-precision samples vanished within tolerance.
    ZeroNumerically,
    NonZero(Witness),
    Inconclusive(String),
}

/// Outcome of an identity test together with its confidence metadata.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Number of points actually evaluated.
    pub trials: usize,
    /// Points skipped because of poles or domain errors.
    pub skipped: usize,
    /// Significant digits of the numeric path (`None` for the exact path).
    pub digits: Option<usize>,
    pub tol: Option<f64>,
    /// Schwartz–Zippel bound on the probability that a nonzero function passed.
    pub failure_bound: Option<f64>,
    /// Largest scaled absolute value observed.
    pub residual: f64,
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self.kind, VerdictKind::Zero | VerdictKind::ZeroNumerically)
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self.kind, VerdictKind::NonZero(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.kind, VerdictKind::Inconclusive(_))
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            VerdictKind::Zero => "Zero",
            VerdictKind::ZeroNumerically => "ZeroNumerically",
            VerdictKind::NonZero(_) => "NonZero",
            VerdictKind::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.kind {
            VerdictKind::NonZero(w) => Some(w),
            _ => None,
        }
    }
}

/// Upper bounds on numerator and denominator degrees of a rational function.
fn degree_bound(e: &Expr, memo: &mut HashMap<usize, (u64, u64)>) -> (u64, u64) {
    if let Some(v) = memo.get(&e.node_id()) {
        return *v;
    }
    let out = match e.kind() {
        ExprKind::Constant(_) => (0, 0),
        ExprKind::Symbol(_) => (1, 0),
        ExprKind::Sum(xs) => {
            let parts: Vec<(u64, u64)> = xs.iter().map(|x| degree_bound(x, memo)).collect();
            let den: u64 = parts.iter().fold(0u64, |a, p| a.saturating_add(p.1));
            let num = parts.iter().map(|p| den.saturating_sub(p.1).saturating_add(p.0)).max().unwrap_or(0);
            (num, den)
        }
        ExprKind::Product(xs) => xs.iter().fold((0u64, 0u64), |a, x| {
            let p = degree_bound(x, memo);
            (a.0.saturating_add(p.0), a.1.saturating_add(p.1))
        }),
        ExprKind::Power(b, r) => {
            let (n, d) = degree_bound(b, memo);
            let k = r.numer().abs().to_u64().unwrap_or(u64::MAX);
            if r.is_negative() {
                (d.saturating_mul(k), n.saturating_mul(k))
            } else {
                (n.saturating_mul(k), d.saturating_mul(k))
            }
        }
    };
    memo.insert(e.node_id(), out);
    out
}

/// Total degree bound of the numerator obtained after clearing denominators.
pub fn numerator_degree_bound(e: &Expr) -> u64 {
    degree_bound(e, &mut HashMap::new()).0
}

fn grid_sample(rng: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational) -> BigRational {
    let thousand = BigInt::from(1000);
    let a = (lo * &thousand).ceil().to_integer();
    let b = (hi * &thousand).floor().to_integer();
    let width = (&b - &a).to_i64().unwrap_or(0).max(0);
    let k = rng.gen_range(0..=width);
    BigRational::new(a + BigInt::from(k), thousand)
}

fn grid_size(lo: &BigRational, hi: &BigRational) -> f64 {
    ((hi - lo).to_f64().unwrap_or(0.0) * 1000.0).floor() + 1.0
}

enum Sample {
    Value { point: Vec<(Symbol, BigRational)>, value: Number, scaled: f64 },
    Skipped,
}

fn trial_rng(seed: u64, expr: &Expr, index: usize) -> ChaCha8Rng {
    let mix = seed ^ expr.structure_hash().rotate_left(17) ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    ChaCha8Rng::seed_from_u64(mix)
}

fn sample_point(e: &Expr, symbols: &[Symbol], cfg: &ZeroTestConfig, index: usize, exact: bool) -> Sample {
    let mut rng = trial_rng(cfg.seed, e, index);
    let mut point = Vec::with_capacity(symbols.len());
    for s in symbols {
        let v = match cfg.domain.ranges.get(s) {
            Some((lo, hi)) => grid_sample(&mut rng, lo, hi),
            None if exact => {
                let b = cfg.domain.integer_bound;
                BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b)))
            }
            None => grid_sample(&mut rng, &cfg.domain.numeric_range.0, &cfg.domain.numeric_range.1),
        };
        point.push((s.clone(), v));
    }
    let env: Assignment<Number> = point.iter().map(|(s, v)| (s.clone(), Number::Exact(v.clone()))).collect();
    let bits = digits_to_bits(cfg.digits);
    let mut ev = Evaluator::new(&env, bits);
    let value = match ev.eval(e) {
        Ok(v) => v,
        Err(EvalError::Unbound(_)) => unreachable!("all symbols are assigned"),
        Err(_) => return Sample::Skipped,
    };
    if exact {
        let scaled = if value.is_zero() { 0.0 } else { f64::INFINITY };
        return Sample::Value { point, value, scaled };
    }
    if ev.stats.min_denominator < cfg.domain.pole_margin {
        return Sample::Skipped;
    }
    let scale = ev.term_scale(e).unwrap_or(1.0).max(1.0);
    let scaled = value.magnitude() / scale;
    Sample::Value { point, value, scaled }
}

fn witness_of(point: &[(Symbol, BigRational)], value: &Number) -> Witness {
    Witness {
        point: point.iter().map(|(s, v)| (s.name().to_string(), v.to_string())).collect(),
        value: value.to_decimal_string(12),
    }
}

/// Tests whether `e` vanishes identically on the sampling domain.
pub fn is_zero(e: &Expr, cfg: &ZeroTestConfig) -> Verdict {
    let trials = cfg.trials.max(1);
    if let Some(q) = e.as_constant() {
        let kind = if q.is_zero() {
            VerdictKind::Zero
        } else {
            VerdictKind::NonZero(Witness { point: vec![], value: q.to_string() })
        };
        let residual = if q.is_zero() { 0.0 } else { f64::INFINITY };
        return Verdict { kind, trials: 1, skipped: 0, digits: None, tol: None, failure_bound: Some(0.0), residual };
    }
    let symbols = e.symbols();
    let exact = e.is_rational_function();
    let wanted = if exact { trials } else { cfg.numeric_points.max(1) };
    let max_attempts = 4 * wanted;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut residual = 0.0f64;
    let mut next = 0usize;
    while evaluated < wanted && next < max_attempts {
        let batch: Vec<usize> = (next..(next + wanted - evaluated).min(max_attempts)).collect();
        next += batch.len();
        let results: Vec<Sample> = batch.par_iter().map(|&i| sample_point(e, &symbols, cfg, i, exact)).collect();
        for r in results {
            match r {
                Sample::Skipped => skipped += 1,
                Sample::Value { point, value, scaled } => {
                    evaluated += 1;
                    let nonzero = if exact { !value.is_zero() } else { scaled > cfg.tol };
                    if nonzero {
                        let (digits, tol) = if exact { (None, None) } else { (Some(cfg.digits), Some(cfg.tol)) };
                        return Verdict {
                            kind: VerdictKind::NonZero(witness_of(&point, &value)),
                            trials: evaluated,
                            skipped,
                            digits,
                            tol,
                            failure_bound: None,
                            residual: if exact { value.magnitude() } else { scaled },
                        };
                    }
                    residual = residual.max(scaled);
                }
            }
        }
    }
    let (digits, tol) = if exact { (None, None) } else { (Some(cfg.digits), Some(cfg.tol)) };
    if evaluated * 2 < wanted {
        return Verdict {
            kind: VerdictKind::Inconclusive(format!("only {evaluated} of {wanted} sample points were evaluable")),
            trials: evaluated,
            skipped,
            digits,
            tol,
            failure_bound: None,
            residual,
        };
    }
    if exact {
        let degree = numerator_degree_bound(e) as f64;
        let set = symbols
            .iter()
            .map(|s| match cfg.domain.ranges.get(s) {
                Some((lo, hi)) => grid_size(lo, hi),
                None => 2.0 * cfg.domain.integer_bound as f64 + 1.0,
            })
            .fold(f64::INFINITY, f64::min);
        let bound = (degree / set).min(1.0).powi(evaluated as i32);
        Verdict { kind: VerdictKind::Zero, trials: evaluated, skipped, digits, tol, failure_bound: Some(bound), residual: 0.0 }
    } else {
        Verdict { kind: VerdictKind::ZeroNumerically, trials: evaluated, skipped, digits, tol, failure_bound: None, residual }
    }
}
