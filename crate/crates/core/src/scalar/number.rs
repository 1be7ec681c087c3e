use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{digits_to_bits, EvalError, PowScalar, Real, Scalar, Sqrt3Scalar, DEFAULT_DIGITS};

/// A value that stays an exact rational as long as possible and degrades to a
/// high-precision float once an irrational operation is performed.
#[derive(Clone)]
pub enum Number {
    Exact(BigRational),
    Approx(Real),
}

fn exact_root(v: &BigInt, q: u32) -> Option<BigInt> {
    if v.is_negative() {
        if q % 2 == 0 {
            return None;
        }
        return exact_root(&-v, q).map(|r| -r);
    }
    let r = v.nth_root(q);
    if num_traits::pow::pow(r.clone(), q as usize) == *v {
        Some(r)
    } else {
        None
    }
}

/// `c^e` for exact `c`, returning `None` when the result is irrational.
pub(crate) fn exact_rational_pow(c: &BigRational, e: &BigRational) -> Result<Option<BigRational>, EvalError> {
    let p = e.numer().to_i64().ok_or_else(|| EvalError::Domain("exponent too large".into()))?;
    let q = e.denom().to_u32().ok_or_else(|| EvalError::Domain("exponent too large".into()))?;
    if c.is_zero() {
        return if p > 0 { Ok(Some(BigRational::zero())) } else { Err(EvalError::DivisionByZero) };
    }
    let base = if q == 1 {
        c.clone()
    } else {
        match (exact_root(c.numer(), q), exact_root(c.denom(), q)) {
            (Some(n), Some(d)) => BigRational::new(n, d),
            _ => return Ok(None),
        }
    };
    let k = p.unsigned_abs() as usize;
    let r = num_traits::pow::pow(base, k);
    Ok(Some(if p < 0 { r.recip() } else { r }))
}

impl Number {
    pub fn zero() -> Number {
        Number::Exact(BigRational::zero())
    }

    pub fn one() -> Number {
        Number::Exact(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Exact(q) => q.is_zero(),
            Number::Approx(r) => r.is_zero(),
        }
    }

    pub fn exact(q: BigRational) -> Number {
        Number::Exact(q)
    }

    pub fn from_i64(v: i64) -> Number {
        Number::Exact(BigRational::from_integer(v.into()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Number::Exact(q) => Some(q),
            Number::Approx(_) => None,
        }
    }

    /// Precision in bits of an approximate value (`None` when exact).
    pub fn bits(&self) -> Option<usize> {
        match self {
            Number::Exact(_) => None,
            Number::Approx(r) => Some(r.bits()),
        }
    }

    pub fn to_real(&self, bits: usize) -> Real {
        match self {
            Number::Exact(q) => Real::from_rational(q, bits),
            Number::Approx(r) => r.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Number::Approx(r) => r.to_f64(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Number::Exact(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Number::Approx(r) => {
                if r.is_zero() {
                    0
                } else if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(q.abs()),
            Number::Approx(r) => Number::Approx(r.abs()),
        }
    }

    /// Decimal rendering: exact values as `p/q`, approximate values in scientific notation.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        match self {
            Number::Exact(q) => q.to_string(),
            Number::Approx(r) => r.to_sci_string(sig),
        }
    }

    fn binary(
        &self,
        o: &Number,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        approx: impl FnOnce(&Real, &Real) -> Real,
    ) -> Number {
        match (self, o) {
            (Number::Exact(a), Number::Exact(b)) => Number::Exact(exact(a, b)),
            (Number::Approx(a), Number::Approx(b)) => Number::Approx(approx(a, b)),
            (Number::Exact(a), Number::Approx(b)) => Number::Approx(approx(&Real::from_rational(a, b.bits()), b)),
            (Number::Approx(a), Number::Exact(b)) => Number::Approx(approx(a, &Real::from_rational(b, a.bits()))),
        }
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(q) => write!(f, "{}", q),
            Number::Approx(r) => write!(f, "{:?}", r),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

impl PartialEq for Number {
    fn eq(&self, o: &Number) -> bool {
        match (self, o) {
            (Number::Exact(a), Number::Exact(b)) => a == b,
            _ => self.minus(o).is_zero(),
        }
    }
}

impl Scalar for Number {
    fn zero_value() -> Self {
        Number::Exact(BigRational::zero())
    }
    fn one_value() -> Self {
        Number::Exact(BigRational::one())
    }
    fn from_rational(q: &BigRational) -> Self {
        Number::Exact(q.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.binary(o, |a, b| a + b, |a, b| a.add(b))
    }
    fn minus(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        self.binary(o, |a, b| a - b, |a, b| a.sub(b))
    }
    fn times(&self, o: &Self) -> Self {
        if let Number::Exact(q) = o {
            if q.is_zero() {
                return Number::zero();
            }
            if q.is_one() {
                return self.clone();
            }
        }
        if let Number::Exact(q) = self {
            if q.is_zero() {
                return Number::zero();
            }
            if q.is_one() {
                return o.clone();
            }
        }
        self.binary(o, |a, b| a * b, |a, b| a.mul(b))
    }
    fn negated(&self) -> Self {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Approx(r) => Number::Approx(r.neg()),
        }
    }
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Number::Exact(q) => Number::Exact(q.recip()),
            Number::Approx(r) => Number::Approx(Real::from_i64(1, r.bits()).div(r)),
        })
    }
    fn is_zero_value(&self) -> bool {
        match self {
            Number::Exact(q) => q.is_zero(),
            Number::Approx(r) => r.is_zero(),
        }
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl PowScalar for Number {
    fn pow_rational(&self, e: &BigRational, bits: usize) -> Result<Self, EvalError> {
        if e.is_zero() {
            return Ok(Number::one());
        }
        match self {
            Number::Exact(c) => {
                if let Some(v) = exact_rational_pow(c, e)? {
                    return Ok(Number::Exact(v));
                }
                Number::Approx(Real::from_rational(c, bits)).pow_rational(e, bits)
            }
            Number::Approx(x) => {
                if x.is_zero() {
                    return if e.is_positive() { Ok(Number::Approx(x.clone())) } else { Err(EvalError::DivisionByZero) };
                }
                if e.is_integer() {
                    let k = e.numer().abs().to_usize().ok_or_else(|| EvalError::Domain("exponent too large".into()))?;
                    let r = x.powi(k);
                    let r = if e.is_negative() { Real::from_i64(1, r.bits()).div(&r) } else { r };
                    return Ok(Number::Approx(r));
                }
                if !x.is_negative() {
                    return Ok(Number::Approx(x.pow_positive(e)));
                }
                if e.denom() % 2u32 == BigInt::zero() {
                    return Err(EvalError::Domain("even root of a negative value".into()));
                }
                let mag = x.abs().pow_positive(e);
                let odd = e.numer() % 2u32 != BigInt::zero();
                Ok(Number::Approx(if odd { mag.neg() } else { mag }))
            }
        }
    }
}

impl Sqrt3Scalar for Number {
    fn sqrt3() -> Self {
        Number::Approx(Real::from_i64(3, digits_to_bits(DEFAULT_DIGITS)).sqrt())
    }
}
