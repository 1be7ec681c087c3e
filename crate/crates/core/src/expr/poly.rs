//! Sparse multivariate polynomials over the rationals with dense exponent vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Expr, ExprKind, Symbol};

/// A polynomial in `nvars` variables, stored as a map from exponent vectors to
/// nonzero coefficients. Ordering of the map is lexicographic on exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, BigRational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: BigRational) -> Self {
        let nvars = exponents.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * BigRational::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Coefficients of the powers of variable `i`, indexed by exponent.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    /// The same polynomial viewed in `nvars` variables. Fails when a dropped
    /// variable actually occurs.
    pub fn with_nvars(&self, nvars: usize) -> Option<Poly> {
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            if e.iter().skip(nvars).any(|&k| k > 0) {
                return None;
            }
            let mut f = e.clone();
            f.resize(nvars, 0);
            out.terms.insert(f, c.clone());
        }
        Some(out)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in point.iter().zip(e) {
                if *k > 0 {
                    t *= num_traits::pow(x.clone(), *k as usize);
                }
            }
            total += t;
        }
        total
    }

    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (ld, lc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((lr, cr)) = rem.leading() {
            if lr.iter().zip(ld).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = lr.iter().zip(ld).map(|(a, b)| a - b).collect();
            let c = cr / lc;
            let t = Poly::monomial(e, c);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Ratio `self / o` when the two are proportional by a rational constant.
    pub fn proportionality(&self, o: &Poly) -> Option<BigRational> {
        let (le, lc) = self.leading()?;
        let oc = o.terms.get(le)?;
        let r = lc / oc;
        (self.sub(&o.scale(&r)).is_zero()).then_some(r)
    }

    pub fn to_expr(&self, vars: &[Expr]) -> Expr {
        Expr::sum(self.terms.iter().map(|(e, c)| {
            let mut factors = vec![Expr::constant(c.clone())];
            for (v, k) in vars.iter().zip(e) {
                if *k > 0 {
                    factors.push(v.powi(*k as i64));
                }
            }
            Expr::product(factors)
        }))
    }

    /// Converts an expression that is a polynomial in `vars`; `None` if some other
    /// symbol, a negative power or a fractional power occurs.
    pub fn from_expr(e: &Expr, vars: &[Symbol]) -> Option<Poly> {
        let n = vars.len();
        match e.kind() {
            ExprKind::Constant(q) => Some(Poly::constant(n, q.clone())),
            ExprKind::Symbol(s) => vars.iter().position(|v| v == s).map(|i| Poly::var(n, i)),
            ExprKind::Sum(xs) => {
                let mut acc = Poly::zero(n);
                for x in xs {
                    acc = acc.add(&Poly::from_expr(x, vars)?);
                }
                Some(acc)
            }
            ExprKind::Product(xs) => {
                let mut acc = Poly::one(n);
                for x in xs {
                    acc = acc.mul(&Poly::from_expr(x, vars)?);
                }
                Some(acc)
            }
            ExprKind::Power(b, r) => {
                if !r.is_integer() || r.is_negative() {
                    return None;
                }
                let k = r.to_integer().to_u32()?;
                Some(Poly::from_expr(b, vars)?.pow(k))
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<Expr> = (0..self.nvars).map(|i| Expr::symbol(&format!("v{i}"))).collect();
        write!(f, "{}", self.to_expr(&names))
    }
}

/// Determinant by fraction-free Bareiss elimination with exact division.
pub fn bareiss_determinant(mut m: Vec<Vec<Poly>>, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = Poly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}
