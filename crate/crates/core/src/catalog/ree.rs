//! Numerical validation of the ansatz `F = y3^(5/3) q(y4^3/y3^4)`: `q` is
//! integrated along the first-order reduction, cross-checked against an
//! independent integration of the second-order equation, and the Wünschmann
//! conditions are evaluated at jet points on the solution.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{eval_number, Expr, Symbol};
use crate::jetode::wunschmann_conditions;
use crate::parse::OdeSpec;
use crate::scalar::{rat, Number, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReeError {
    #[error("integration failed near z = {z}: 4 z^(2/3) - 3 q = {radicand:e}")]
    IntegrationFailure { z: f64, radicand: f64 },
    #[error("evaluation failed: {0}")]
    Eval(String),
}

/// Branch of the square root in the first-order reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Truncated power series in `t = z - z*`.
type Series = Vec<f64>;

#[cfg(test)]
fn series_mul(a: &[f64], b: &[f64], n: usize) -> Series {
    (0..n).map(|k| (0..=k).map(|i| a.get(i).unwrap_or(&0.0) * b.get(k - i).unwrap_or(&0.0)).sum()).collect()
}

fn series_div(a: &[f64], b: &[f64], n: usize) -> Series {
    let mut out = vec![0.0; n];
    for k in 0..n {
        let s: f64 = (1..=k).map(|i| b.get(i).unwrap_or(&0.0) * out[k - i]).sum();
        out[k] = (a.get(k).unwrap_or(&0.0) - s) / b[0];
    }
    out
}

/// `a^alpha` for `a[0] > 0`.
fn series_pow(a: &[f64], alpha: f64, n: usize) -> Series {
    let mut out = vec![0.0; n];
    out[0] = a[0].powf(alpha);
    for k in 1..n {
        let s: f64 = (1..=k)
            .map(|i| (alpha * i as f64 - (k - i) as f64) * a.get(i).unwrap_or(&0.0) * out[k - i])
            .sum();
        out[k] = s / (k as f64 * a[0]);
    }
    out
}

/// Right-hand side `q' = 5 (2 z^(1/3) +- sqrt(4 z^(2/3) - 3 q)) / (9 z^(2/3))` as a series.
fn reduction_rhs(z0: f64, q: &[f64], branch: Branch, n: usize) -> Result<Series, ReeError> {
    let z = vec![z0, 1.0];
    let z13 = series_pow(&z, 1.0 / 3.0, n);
    let z23 = series_pow(&z, 2.0 / 3.0, n);
    let radicand: Series = (0..n).map(|k| 4.0 * z23[k] - 3.0 * q.get(k).unwrap_or(&0.0)).collect();
    if radicand[0] <= 1e-8 {
        return Err(ReeError::IntegrationFailure { z: z0, radicand: radicand[0] });
    }
    let root = series_pow(&radicand, 0.5, n);
    let num: Series = (0..n).map(|k| 5.0 * (2.0 * z13[k] + branch.sign() * root[k])).collect();
    let den: Series = z23.iter().map(|v| 9.0 * v).collect();
    Ok(series_div(&num, &den, n))
}

/// Taylor coefficients of the solution through `(z0, q0)` up to degree `degree`.
pub fn taylor_coefficients(z0: f64, q0: f64, branch: Branch, degree: usize) -> Result<Vec<f64>, ReeError> {
    let mut q = vec![q0];
    for k in 0..degree {
        let g = reduction_rhs(z0, &q, branch, k + 1)?;
        q.push(g[k] / (k + 1) as f64);
    }
    Ok(q)
}

/// Integrates the reduction from `z0` to `z1` with fixed-step Taylor steps.
pub fn integrate_reduction(z0: f64, q0: f64, z1: f64, branch: Branch, steps: usize) -> Result<f64, ReeError> {
    let h = (z1 - z0) / steps as f64;
    let mut q = q0;
    for s in 0..steps {
        let z = z0 + h * s as f64;
        let c = taylor_coefficients(z, q, branch, 16)?;
        q = c.iter().rev().fold(0.0, |acc, v| acc * h + v);
    }
    Ok(q)
}

/// `q''` from the second-order equation.
fn ree_second_derivative(z: f64, q: f64, p: f64) -> Result<f64, ReeError> {
    let z13 = z.cbrt();
    let z23 = z13 * z13;
    let z43 = z * z13;
    let radicand = 4.0 * z23 - 3.0 * q;
    if radicand.abs() <= 1e-8 {
        return Err(ReeError::IntegrationFailure { z, radicand });
    }
    Ok((54.0 * z43 * p * p - 30.0 * z13 * (6.0 * q - 5.0 * z23) * p + 25.0 * q) / (90.0 * z43 * (3.0 * q - 4.0 * z23)))
}

/// Residual of the second-order equation for given `q, q', q''`.
pub fn ree_residual(z: f64, q: f64, p: f64, pp: f64) -> f64 {
    let z13 = z.cbrt();
    let z23 = z13 * z13;
    let z43 = z * z13;
    90.0 * z43 * (3.0 * q - 4.0 * z23) * pp - 54.0 * z43 * p * p + 30.0 * z13 * (6.0 * q - 5.0 * z23) * p - 25.0 * q
}

/// Classical fourth-order Runge-Kutta on the second-order equation, returning `(q, q')` at `z1`.
pub fn integrate_ree(z0: f64, q0: f64, p0: f64, z1: f64, steps: usize) -> Result<(f64, f64), ReeError> {
    let h = (z1 - z0) / steps as f64;
    let (mut q, mut p) = (q0, p0);
    for s in 0..steps {
        let z = z0 + h * s as f64;
        let k1 = (p, ree_second_derivative(z, q, p)?);
        let k2 = (p + h / 2.0 * k1.1, ree_second_derivative(z + h / 2.0, q + h / 2.0 * k1.0, p + h / 2.0 * k1.1)?);
        let k3 = (p + h / 2.0 * k2.1, ree_second_derivative(z + h / 2.0, q + h / 2.0 * k2.0, p + h / 2.0 * k2.1)?);
        let k4 = (p + h * k3.1, ree_second_derivative(z + h, q + h * k3.0, p + h * k3.1)?);
        q += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        p += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    Ok((q, p))
}

/// `F = y3^(5/3) sum_k c_k (y4^3/y3^4 - zs)^k` with symbolic `c_k` and `zs`.
fn taylor_ansatz(degree: usize) -> OdeSpec {
    let y3 = Expr::symbol("y3");
    let y4 = Expr::symbol("y4");
    let z = Expr::product([y4.powi(3), y3.powi(-4)]);
    let t = Expr::sum([z, Expr::symbol("zs").scale(&rat(-1, 1))]);
    let q = Expr::sum((0..=degree).map(|k| Expr::product([Expr::symbol(&format!("c{k}")), t.powi(k as i64)])));
    let f = Expr::product([y3.pow_frac(5, 3), q]);
    OdeSpec { order: 5, f, name: Some("gor_taylor".into()), aux: Vec::new() }
}

/// One sampled solution of the reduction.
#[derive(Clone, Debug, Serialize)]
pub struct ReeSample {
    pub branch: Branch,
    pub q0: f64,
    /// End point `z* = y4^3` with `y3 = 1`.
    pub z: f64,
    pub q: f64,
    /// `|q_reduction - q_ree|` at `z*`.
    pub integration_mismatch: f64,
    /// Second-order equation evaluated on the Taylor jet at `z*`.
    pub ree_residual: f64,
    /// Largest Wünschmann condition at the jet point on the solution.
    pub wunschmann_residual: f64,
    /// The same with the second Taylor coefficient perturbed by `1e-3`.
    pub control_residual: f64,
}

/// Settings of [`validate_ree`].
#[derive(Clone, Debug)]
pub struct ReeConfig {
    pub samples: usize,
    pub seed: u64,
    pub digits: usize,
    pub degree: usize,
    pub steps: usize,
}

impl Default for ReeConfig {
    fn default() -> Self {
        ReeConfig { samples: 4, seed: 7, digits: 40, degree: 10, steps: 200 }
    }
}

fn wunschmann_at(conditions: &[Expr], coeffs: &[f64], zs: &BigRational, y4: &BigRational, digits: usize) -> Result<f64, ReeError> {
    let mut env: HashMap<Symbol, Number> = HashMap::new();
    for (k, c) in coeffs.iter().enumerate() {
        let q = BigRational::from_f64(*c).ok_or_else(|| ReeError::Eval(format!("non-finite coefficient {c}")))?;
        env.insert(Symbol::new(&format!("c{k}")), Number::exact(q));
    }
    env.insert(Symbol::new("zs"), Number::exact(zs.clone()));
    for (name, v) in [("x", rat(1, 1)), ("y", rat(1, 1)), ("y1", rat(1, 1)), ("y2", rat(1, 1)), ("y3", rat(1, 1))] {
        env.insert(Symbol::new(name), Number::exact(v));
    }
    env.insert(Symbol::new("y4"), Number::exact(y4.clone()));
    let mut worst = 0.0f64;
    for c in conditions {
        let v = eval_number(c, &env, digits).map_err(|e| ReeError::Eval(e.to_string()))?;
        worst = worst.max(v.magnitude());
    }
    Ok(worst)
}

/// Samples initial data `q(1) = q0` on both branches and checks the resulting equations.
pub fn validate_ree(cfg: &ReeConfig) -> Vec<Result<ReeSample, ReeError>> {
    let spec = taylor_ansatz(cfg.degree);
    let conditions = match wunschmann_conditions(&spec) {
        Ok(c) => c,
        Err(e) => return vec![Err(ReeError::Eval(e.to_string()))],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ends = [rat(11, 10), rat(6, 5), rat(5, 4), rat(13, 10)];
    (0..cfg.samples)
        .map(|i| {
            let branch = if i % 2 == 0 { Branch::Plus } else { Branch::Minus };
            let q0 = rng.gen_range(1..=100) as f64 / 100.0;
            let y4 = ends[rng.gen_range(0..ends.len())].clone();
            let zs = &y4 * &y4 * &y4;
            let z = Number::exact(zs.clone()).to_f64();
            let q = integrate_reduction(1.0, q0, z, branch, cfg.steps)?;
            let p0 = reduction_rhs(1.0, &[q0], branch, 1)?[0];
            let (q_ree, _) = integrate_ree(1.0, q0, p0, z, 20 * cfg.steps)?;
            let coeffs = taylor_coefficients(z, q, branch, cfg.degree)?;
            let ree = ree_residual(z, coeffs[0], coeffs[1], 2.0 * coeffs[2]);
            let wunschmann_residual = wunschmann_at(&conditions, &coeffs, &zs, &y4, cfg.digits)?;
            let mut perturbed = coeffs.clone();
            perturbed[2] += 1e-3;
            let control_residual = wunschmann_at(&conditions, &perturbed, &zs, &y4, cfg.digits)?;
            Ok(ReeSample {
                branch,
                q0,
                z,
                q,
                integration_mismatch: (q - q_ree).abs(),
                ree_residual: ree.abs(),
                wunschmann_residual,
                control_residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_series_roundtrip() {
        let a = vec![2.0, 1.0, 0.5];
        let b = series_pow(&a, 0.5, 6);
        let back = series_mul(&b, &b, 6);
        for (k, v) in back.iter().enumerate() {
            assert!((v - a.get(k).unwrap_or(&0.0)).abs() < 1e-14, "{k}: {v}");
        }
        let d = series_div(&back, &b, 6);
        for (x, y) in d.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_solution_satisfies_both_equations() {
        // q = (5/4) z^(2/3) solves the reduction on the minus branch and the second-order equation.
        let z: f64 = 1.7;
        let q = 1.25 * z.powf(2.0 / 3.0);
        let c = taylor_coefficients(z, q, Branch::Minus, 4).unwrap();
        let p = 1.25 * 2.0 / 3.0 * z.powf(-1.0 / 3.0);
        let pp = -1.25 * 2.0 / 9.0 * z.powf(-4.0 / 3.0);
        assert!((c[1] - p).abs() < 1e-13, "{} vs {p}", c[1]);
        assert!((2.0 * c[2] - pp).abs() < 1e-13);
        assert!(ree_residual(z, q, p, pp).abs() < 1e-12);
    }

    #[test]
    fn integrators_agree() {
        let z1 = 1.5;
        let q = integrate_reduction(1.0, 0.5, z1, Branch::Plus, 100).unwrap();
        let p0 = reduction_rhs(1.0, &[0.5], Branch::Plus, 1).unwrap()[0];
        let (q2, _) = integrate_ree(1.0, 0.5, p0, z1, 4000).unwrap();
        assert!((q - q2).abs() < 1e-9, "{q} vs {q2}");
    }

    #[test]
    fn singular_initial_data_is_reported() {
        assert!(matches!(taylor_coefficients(1.0, 4.0 / 3.0, Branch::Plus, 3), Err(ReeError::IntegrationFailure { .. })));
    }

    #[test]
    fn sampled_solutions_satisfy_wunschmann() {
        let cfg = ReeConfig { samples: 2, ..ReeConfig::default() };
        for s in validate_ree(&cfg) {
            let s = s.unwrap();
            assert!(s.integration_mismatch < 1e-8, "{s:?}");
            assert!(s.ree_residual < 1e-9, "{s:?}");
            assert!(s.wunschmann_residual < 1e-8 && s.control_residual > 1e-5, "{s:?}");
        }
    }
}
