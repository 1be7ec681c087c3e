//! Invariants of binary forms under the irreducible action of GL(2,R):
//! resultants, the catalog of quadratic, cubic and quartic invariants in
//! dimensions 3 to 9, polarized coefficient tensors, the algebraic identities
//! satisfied by the five-dimensional pair `(g, Upsilon)` and the isotropy
//! algebra of a cubic form.

mod equivariance;
mod resultant;
mod tables;
mod tensor;

#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use thiserror::Error;

use crate::expr::{Expr, Poly, Symbol};

pub use equivariance::{check_equivariance, EquivarianceReport};
pub use resultant::{discriminant_form, sylvester_resultant, sylvester_resultant_poly, uwn_pair};
pub use tensor::{
    cartan_identity_check, five_dim_metric, five_dim_upsilon, sorted_index_tuples, stabilizer_algebra, traceless_part, CartanResiduals,
    CoeffTensor,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("metric is singular")]
    SingularMetric,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// Coefficients `theta^0 .. theta^{n-1}` of a polynomial of degree `n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVector {
    components: Vec<Expr>,
}

impl ThetaVector {
    pub fn new(components: Vec<Expr>) -> Self {
        ThetaVector { components }
    }

    /// The vector of symbols `t0, .., t{n-1}`.
    pub fn symbolic(n: usize) -> Self {
        ThetaVector { components: theta_symbols(n).iter().map(Expr::from_symbol).collect() }
    }

    pub fn from_rationals(values: &[BigRational]) -> Self {
        ThetaVector { components: values.iter().cloned().map(Expr::constant).collect() }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        ThetaVector { components: values.iter().map(|&v| Expr::int(v)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }
}

/// Symbols `t0 .. t{n-1}` standing for the coefficients `theta^i`.
pub fn theta_symbols(n: usize) -> Vec<Symbol> {
    (0..n).map(|i| Symbol::new(&format!("t{i}"))).collect()
}

/// The invariant polynomials available by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantKind {
    G3,
    I4,
    G5,
    Upsilon5,
    I5,
    Upsilon6,
    G7,
    Upsilon7,
    Upsilon8,
    G9,
    Upsilon9,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 11] = [
        InvariantKind::G3,
        InvariantKind::I4,
        InvariantKind::G5,
        InvariantKind::Upsilon5,
        InvariantKind::I5,
        InvariantKind::Upsilon6,
        InvariantKind::G7,
        InvariantKind::Upsilon7,
        InvariantKind::Upsilon8,
        InvariantKind::G9,
        InvariantKind::Upsilon9,
    ];

    /// Dimension `n` of the representation the invariant lives on.
    pub fn dim(self) -> usize {
        use InvariantKind::*;
        match self {
            G3 => 3,
            I4 => 4,
            G5 | Upsilon5 | I5 => 5,
            Upsilon6 => 6,
            G7 | Upsilon7 => 7,
            Upsilon8 => 8,
            G9 | Upsilon9 => 9,
        }
    }

    /// Polynomial degree in `theta`.
    pub fn degree(self) -> u32 {
        use InvariantKind::*;
        match self {
            G3 | G5 | G7 | G9 => 2,
            Upsilon5 | Upsilon9 => 3,
            I4 | Upsilon6 | Upsilon7 | Upsilon8 => 4,
            I5 => 6,
        }
    }

    /// Weight `k` in `I(theta . rho(a)) = det(a)^k I(theta)` forced by
    /// homogeneity: scalar matrices act by `lambda^{n-1}` on every coefficient.
    pub fn homogeneity_weight(self) -> BigRational {
        BigRational::new(BigInt::from(self.degree() * (self.dim() as u32 - 1)), BigInt::from(2))
    }

    /// Weight printed alongside the classical invariants, where one is given.
    pub fn stated_weight(self) -> Option<i64> {
        match self {
            InvariantKind::G3 => Some(2),
            InvariantKind::I4 => Some(4),
            InvariantKind::I5 => Some(6),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        use InvariantKind::*;
        match self {
            G3 => "g3",
            I4 => "I4",
            G5 => "g5",
            Upsilon5 => "Upsilon5",
            I5 => "I5",
            Upsilon6 => "Upsilon6",
            G7 => "g7",
            Upsilon7 => "Upsilon7",
            Upsilon8 => "Upsilon8",
            G9 => "g9",
            Upsilon9 => "Upsilon9",
        }
    }

    fn table(self) -> tables::Table {
        use InvariantKind::*;
        match self {
            G3 => tables::G3,
            I4 => tables::I4,
            G5 => tables::G5,
            Upsilon5 => tables::UPSILON5,
            I5 => tables::I5,
            Upsilon6 => tables::UPSILON6,
            G7 => tables::G7,
            Upsilon7 => tables::UPSILON7,
            Upsilon8 => tables::UPSILON8,
            G9 => tables::G9,
            Upsilon9 => tables::UPSILON9,
        }
    }

    /// The invariant as a polynomial in `dim()` variables.
    pub fn poly(self) -> Poly {
        table_poly(self.table(), self.dim())
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InvariantKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| InvariantError::Argument(format!("unknown invariant '{s}'")))
    }
}

pub(crate) fn table_poly(table: tables::Table, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for (c, idx) in table {
        let mut e = vec![0u32; n];
        for &i in *idx {
            e[i] += 1;
        }
        p = p.add(&Poly::monomial(e, BigRational::from_integer(BigInt::from(*c))));
    }
    p
}

/// The cubic invariant in dimension five with the opposite sign convention.
pub fn upsilon5_tilde() -> Poly {
    table_poly(tables::UPSILON5_TILDE, 5)
}

/// The quartic catalog entry for dimension four.
pub fn upsilon4_tilde() -> Poly {
    table_poly(tables::UPSILON4, 4)
}

/// Evaluates the named invariant at `theta`.
pub fn invariant_poly(kind: InvariantKind, theta: &ThetaVector) -> Result<Expr, InvariantError> {
    if theta.dim() != kind.dim() {
        return Err(InvariantError::DimensionMismatch { expected: kind.dim(), found: theta.dim() });
    }
    Ok(kind.poly().to_expr(theta.components()))
}

/// The cubic form of the five-dimensional pair including its `3 sqrt(3)` prefactor.
pub fn upsilon_form(theta: &ThetaVector) -> Result<Expr, InvariantError> {
    let bracket = invariant_poly(InvariantKind::Upsilon5, theta)?;
    let prefactor = Expr::product([Expr::int(3), Expr::int(3).pow_frac(1, 2)]);
    Ok(Expr::product([prefactor, bracket]))
}

/// The quadratic invariant of an odd-dimensional representation, `n = 2m + 1`.
pub fn general_quadratic_poly(n: usize) -> Result<Poly, InvariantError> {
    if n < 3 || n % 2 == 0 {
        return Err(InvariantError::Argument(format!("quadratic invariant needs odd n >= 3, got {n}")));
    }
    let m = (n - 1) / 2;
    let mut p = Poly::zero(n);
    let quad = |i: usize, j: usize| Poly::var(n, i).mul(&Poly::var(n, j));
    for j in 0..m {
        let c = binomial(BigInt::from(2 * m), BigInt::from(j));
        let c = if j % 2 == 0 { c } else { -c };
        p = p.add(&quad(j, 2 * m - j).scale(&BigRational::from_integer(c)));
    }
    let middle = binomial(BigInt::from(2 * m), BigInt::from(m));
    let middle = BigRational::new(if m % 2 == 0 { middle } else { -middle }, BigInt::from(2));
    Ok(p.add(&quad(m, m).scale(&middle)))
}

/// [`general_quadratic_poly`] in the symbols `t0 .. t{n-1}`.
pub fn general_quadratic_invariant(n: usize) -> Result<Expr, InvariantError> {
    let p = general_quadratic_poly(n)?;
    Ok(p.to_expr(ThetaVector::symbolic(n).components()))
}
