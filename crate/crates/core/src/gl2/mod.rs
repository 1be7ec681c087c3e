//! The n-dimensional irreducible representation of GL(2,R) on binary forms of
//! degree n-1 and of its Lie algebra.
//!
//! A form is written `w(x) = sum_i C(n-1,i) theta^i x^i`. The group acts on the
//! coefficient row vector by `theta' = theta * rho(a)`, where `theta'` describes
//! `(gamma x' + delta)^(n-1) w((alpha x' + beta)/(gamma x' + delta))`.
//! On column vectors the same action is generated by the matrices `E` returned
//! by [`rep_generators`]: `d/dt rho(exp(t X_A))` at `t = 0` equals `E_A^T`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::{Expr, Symbol};
use crate::scalar::{int, Dual, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gl2Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("group element has vanishing determinant")]
    SingularElement,
}

/// A 2x2 matrix `[[alpha, beta], [gamma, delta]]` acting by the fractional
/// linear map `x = (alpha x' + beta)/(gamma x' + delta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Element {
    pub alpha: Expr,
    pub beta: Expr,
    pub gamma: Expr,
    pub delta: Expr,
}

impl Gl2Element {
    /// Rejects elements whose determinant simplifies to the constant zero.
    pub fn new(alpha: Expr, beta: Expr, gamma: Expr, delta: Expr) -> Result<Self, Gl2Error> {
        let a = Gl2Element { alpha, beta, gamma, delta };
        if a.det().is_zero_constant() {
            return Err(Gl2Error::SingularElement);
        }
        Ok(a)
    }

    pub fn rational(alpha: BigRational, beta: BigRational, gamma: BigRational, delta: BigRational) -> Result<Self, Gl2Error> {
        Gl2Element::new(Expr::constant(alpha), Expr::constant(beta), Expr::constant(gamma), Expr::constant(delta))
    }

    pub fn identity() -> Self {
        Gl2Element { alpha: Expr::one(), beta: Expr::zero(), gamma: Expr::zero(), delta: Expr::one() }
    }

    /// The generic element with symbolic entries `alpha, beta, gamma, delta`.
    pub fn generic() -> Self {
        Gl2Element {
            alpha: Expr::symbol("alpha"),
            beta: Expr::symbol("beta"),
            gamma: Expr::symbol("gamma"),
            delta: Expr::symbol("delta"),
        }
    }

    pub fn det(&self) -> Expr {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    /// Matrix product `self * o`.
    pub fn compose(&self, o: &Gl2Element) -> Gl2Element {
        Gl2Element {
            alpha: &self.alpha * &o.alpha + &self.beta * &o.gamma,
            beta: &self.alpha * &o.beta + &self.beta * &o.delta,
            gamma: &self.gamma * &o.alpha + &self.delta * &o.gamma,
            delta: &self.gamma * &o.beta + &self.delta * &o.delta,
        }
    }

    /// Entries as rationals when all four are constants.
    pub fn as_rational(&self) -> Option<[BigRational; 4]> {
        Some([
            self.alpha.as_constant()?.clone(),
            self.beta.as_constant()?.clone(),
            self.gamma.as_constant()?.clone(),
            self.delta.as_constant()?.clone(),
        ])
    }
}

/// Basis of gl(2,R) in the order `(X_-, X_+, X_0, X_1)`: the lower and upper
/// nilpotents, `diag(1,-1)` and `-Id`.
pub fn lie_basis() -> [[[BigRational; 2]; 2]; 4] {
    let z = || int(0);
    [
        [[z(), z()], [int(1), z()]],
        [[z(), int(1)], [z(), z()]],
        [[int(1), z()], [z(), int(-1)]],
        [[int(-1), z()], [z(), int(-1)]],
    ]
}

/// The four generators `(E_-, E_+, E_0, E_1)` of the representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    pub minus: Matrix<BigRational>,
    pub plus: Matrix<BigRational>,
    pub zero: Matrix<BigRational>,
    pub one: Matrix<BigRational>,
}

impl Generators {
    pub fn all(&self) -> [&Matrix<BigRational>; 4] {
        [&self.minus, &self.plus, &self.zero, &self.one]
    }

    pub fn dim(&self) -> usize {
        self.plus.rows()
    }
}

pub fn rep_generators(n: usize) -> Result<Generators, Gl2Error> {
    if n < 2 {
        return Err(Gl2Error::Argument(format!("representation dimension must be at least 2, got {n}")));
    }
    let plus = Matrix::from_fn(n, n, |i, j| if j == i + 1 { int((n - 1 - i) as i64) } else { int(0) });
    let minus = Matrix::from_fn(n, n, |i, j| if i == j + 1 { int(i as i64) } else { int(0) });
    let zero = Matrix::from_fn(n, n, |i, j| if i == j { int(2 * i as i64 + 1 - n as i64) } else { int(0) });
    let one = Matrix::<BigRational>::identity(n).scale(&int(1 - n as i64));
    Ok(Generators { minus, plus, zero, one })
}

/// Checks `[E0,E+] = -2E+`, `[E0,E-] = 2E-`, `[E+,E-] = -E0` and that `E1` is central.
pub fn check_relations(g: &Generators) -> bool {
    let two = int(2);
    let c1 = g.zero.commutator(&g.plus) == g.plus.scale(&-&two);
    let c2 = g.zero.commutator(&g.minus) == g.minus.scale(&two);
    let c3 = g.plus.commutator(&g.minus) == g.zero.scale(&int(-1));
    let central = [&g.minus, &g.plus, &g.zero].iter().all(|m| g.one.commutator(m).is_zero());
    c1 && c2 && c3 && central
}

pub fn check_sl2_relations(n: usize) -> bool {
    rep_generators(n).map(|g| check_relations(&g)).unwrap_or(false)
}

/// Coefficients of `(a x + b)^j (c x + d)^k` in increasing powers of `x`.
fn binomial_product<S: Scalar>(a: &S, b: &S, c: &S, d: &S, j: usize, k: usize) -> Vec<S> {
    let mut coeffs = vec![S::one_value()];
    let multiply = |lead: &S, constant: &S, times: usize, coeffs: &mut Vec<S>| {
        for _ in 0..times {
            let mut next = vec![S::zero_value(); coeffs.len() + 1];
            for (i, v) in coeffs.iter().enumerate() {
                next[i] = next[i].plus(&v.times(constant));
                next[i + 1] = next[i + 1].plus(&v.times(lead));
            }
            *coeffs = next;
        }
    };
    multiply(a, b, j, &mut coeffs);
    multiply(c, d, k, &mut coeffs);
    coeffs
}

/// The matrix of `rho_n` for entries in any commutative scalar ring.
pub fn rho_matrix<S: Scalar>(alpha: &S, beta: &S, gamma: &S, delta: &S, n: usize) -> Matrix<S> {
    let m = n - 1;
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        let coeffs = binomial_product(alpha, beta, gamma, delta, j, m - j);
        for (i, c) in coeffs.into_iter().enumerate() {
            let scale = BigRational::new(binomial(BigInt::from(m), BigInt::from(j)), binomial(BigInt::from(m), BigInt::from(i)));
            out.set(j, i, c.scaled(&scale));
        }
    }
    out
}

fn symbolic_cache() -> &'static RwLock<HashMap<usize, Arc<Matrix<Expr>>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Matrix<Expr>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `rho_n` of the generic element, built once per dimension.
pub fn rho_generic(n: usize) -> Arc<Matrix<Expr>> {
    if let Some(m) = symbolic_cache().read().expect("cache lock").get(&n) {
        return m.clone();
    }
    let g = Gl2Element::generic();
    let m = Arc::new(rho_matrix(&g.alpha, &g.beta, &g.gamma, &g.delta, n));
    symbolic_cache().write().expect("cache lock").entry(n).or_insert(m).clone()
}

/// `rho_n(a)` with symbolic entries.
pub fn rho_n(a: &Gl2Element, n: usize) -> Result<Matrix<Expr>, Gl2Error> {
    if n < 1 {
        return Err(Gl2Error::Argument("dimension must be positive".into()));
    }
    if a.det().is_zero_constant() {
        return Err(Gl2Error::SingularElement);
    }
    let generic = rho_generic(n);
    let map: HashMap<Symbol, Expr> = [
        (Symbol::new("alpha"), a.alpha.clone()),
        (Symbol::new("beta"), a.beta.clone()),
        (Symbol::new("gamma"), a.gamma.clone()),
        (Symbol::new("delta"), a.delta.clone()),
    ]
    .into_iter()
    .collect();
    Ok(generic.map(|e| e.substitute(&map)))
}

/// `rho_n(a)` for a rational element `[alpha, beta, gamma, delta]`.
pub fn rho_n_rational(a: &[BigRational; 4], n: usize) -> Result<Matrix<BigRational>, Gl2Error> {
    if (&a[0] * &a[3] - &a[1] * &a[2]).is_zero() {
        return Err(Gl2Error::SingularElement);
    }
    Ok(rho_matrix(&a[0], &a[1], &a[2], &a[3], n))
}

/// `d/dt rho_n(exp(t x))` at `t = 0`, by forward-mode differentiation.
pub fn rho_differential(x: &[[BigRational; 2]; 2], n: usize) -> Matrix<BigRational> {
    let entry = |i: usize, j: usize| {
        let base = if i == j { int(1) } else { int(0) };
        Dual { value: base, grad: vec![x[i][j].clone()] }
    };
    let m = rho_matrix(&entry(0, 0), &entry(0, 1), &entry(1, 0), &entry(1, 1), n);
    m.map(|d| d.partial(0))
}
