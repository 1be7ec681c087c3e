//! Scalar types shared by the symbolic and numeric layers.

mod dual;
pub mod linalg;
pub(crate) mod number;
mod real;
mod surd;

pub use dual::Dual;
pub use linalg::Matrix;
pub use number::Number;
pub use real::{digits_to_bits, Real};
pub use surd::QSqrt3;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Default number of significant decimal digits for numeric evaluation.
pub const DEFAULT_DIGITS: usize = 60;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Failure modes of evaluating a value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unbound symbol `{0}`")]
    Unbound(String),
}

/// Field operations used by the generic linear algebra and tensor code.
pub trait Scalar: Clone + std::fmt::Debug + Send + Sync {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for an exact or floating zero.
    fn recip(&self) -> Option<Self>;
    fn is_zero_value(&self) -> bool;
    /// Absolute value as a double, used for pivoting and residual reporting.
    fn magnitude(&self) -> f64;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&int(v))
    }

    fn scaled(&self, q: &BigRational) -> Self {
        self.times(&Self::from_rational(q))
    }

    fn divided(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self.times(&r))
    }
}

/// Scalars that can be raised to rational powers, as needed by expression evaluation.
pub trait PowScalar: Scalar {
    fn pow_rational(&self, exponent: &BigRational, bits: usize) -> Result<Self, EvalError>;
    /// Magnitude of the underlying value (for duals, of the value part).
    fn value_magnitude(&self) -> f64 {
        self.magnitude()
    }
}

/// Scalars that contain a square root of three (exactly or approximately).
pub trait Sqrt3Scalar: Scalar {
    fn sqrt3() -> Self;
}

impl Scalar for BigRational {
    fn zero_value() -> Self {
        int(0)
    }
    fn one_value() -> Self {
        int(1)
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self.clone()))
        }
    }
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).map(f64::abs).unwrap_or(f64::INFINITY)
    }
}
