//! Differential forms of degree at most 3 on the nine-dimensional chart, with
//! symbolic coefficients in the coordinate basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{Expr, Symbol};

/// Coordinates of the chart, in basis order.
pub const COORDINATES: [&str; 9] = ["x", "y", "y1", "y2", "y3", "y4", "a10", "a11", "a55"];

pub const CHART_DIM: usize = 9;

pub fn coordinate(i: usize) -> Symbol {
    Symbol::new(COORDINATES[i])
}

pub fn coordinate_index(name: &str) -> Option<usize> {
    COORDINATES.iter().position(|c| *c == name)
}

/// Sign of the permutation sorting `idx`, or 0 on a repeated index.
fn sort_with_sign(idx: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return 0;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

/// `sum_I c_I dz^I` over increasing multi-indices `I`.
#[derive(Clone, Debug)]
pub struct DifferentialForm {
    degree: usize,
    terms: BTreeMap<Vec<usize>, Expr>,
}

impl DifferentialForm {
    pub fn zero(degree: usize) -> Self {
        DifferentialForm { degree, terms: BTreeMap::new() }
    }

    pub fn function(f: Expr) -> Self {
        let mut out = DifferentialForm::zero(0);
        out.add_term(vec![], f);
        out
    }

    /// `dz^i`.
    pub fn differential(i: usize) -> Self {
        let mut out = DifferentialForm::zero(1);
        out.add_term(vec![i], Expr::one());
        out
    }

    /// The one-form with coordinate components `coeffs`.
    pub fn one_form(coeffs: impl IntoIterator<Item = (usize, Expr)>) -> Self {
        let mut out = DifferentialForm::zero(1);
        for (i, c) in coeffs {
            out.add_term(vec![i], c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c dz^idx`; `idx` need not be sorted.
    pub fn add_term(&mut self, mut idx: Vec<usize>, c: Expr) {
        assert_eq!(idx.len(), self.degree, "index length must match the degree");
        assert!(idx.iter().all(|&i| i < CHART_DIM), "coordinate index out of range");
        let sign = sort_with_sign(&mut idx);
        if sign == 0 || c.is_zero_constant() {
            return;
        }
        let c = if sign < 0 { c.scale(&neg_one()) } else { c };
        let merged = match self.terms.remove(&idx) {
            Some(old) => Expr::sum([old, c]),
            None => c,
        };
        if !merged.is_zero_constant() {
            self.terms.insert(idx, merged);
        }
    }

    /// Coefficient of `dz^idx` for increasing `idx`.
    pub fn component(&self, idx: &[usize]) -> Expr {
        self.terms.get(idx).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Expr)> {
        self.terms.iter()
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "degrees must agree");
        let mut out = self.clone();
        for (idx, c) in &o.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Expr::int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Multiplication by a function.
    pub fn scale(&self, f: &Expr) -> Self {
        let mut out = DifferentialForm::zero(self.degree);
        if f.is_zero_constant() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), Expr::product([f.clone(), c.clone()]));
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = DifferentialForm::zero(self.degree + o.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, Expr::product([ca.clone(), cb.clone()]));
            }
        }
        out
    }

    /// The coordinate exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = DifferentialForm::zero(self.degree + 1);
        for (idx, c) in &self.terms {
            for s in c.symbols() {
                let Some(k) = coordinate_index(s.name()) else { continue };
                if idx.contains(&k) {
                    continue;
                }
                let mut full = vec![k];
                full.extend_from_slice(idx);
                out.add_term(full, c.diff(&s));
            }
        }
        out
    }

    /// Contraction of a two-form with two vectors given by coordinate components.
    pub fn pair(&self, u: &[Expr], v: &[Expr]) -> Expr {
        assert_eq!(self.degree, 2, "pairing needs a two-form");
        let mut terms = Vec::new();
        for (idx, c) in &self.terms {
            let (a, b) = (idx[0], idx[1]);
            let m = Expr::sum([
                Expr::product([u[a].clone(), v[b].clone()]),
                Expr::product([u[b].clone(), v[a].clone()]).scale(&neg_one()),
            ]);
            if !m.is_zero_constant() {
                terms.push(Expr::product([c.clone(), m]));
            }
        }
        Expr::sum(terms)
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        let mut out = DifferentialForm::zero(self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (k, i) in idx.iter().enumerate() {
                write!(f, "{}d{}", if k == 0 { " " } else { "^" }, COORDINATES[*i])?;
            }
        }
        Ok(())
    }
}

fn neg_one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer((-1).into())
}
