use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{int, Scalar, Sqrt3Scalar};

/// Exact element `a + b·√3` of the quadratic field Q(√3).
#[derive(Clone, PartialEq, Eq)]
pub struct QSqrt3 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt3 { a, b: BigRational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Debug for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt(3)", self.a, self.b)
        }
    }
}

impl Scalar for QSqrt3 {
    fn zero_value() -> Self {
        QSqrt3::rational(int(0))
    }
    fn one_value() -> Self {
        QSqrt3::rational(int(1))
    }
    fn from_rational(q: &BigRational) -> Self {
        QSqrt3::rational(q.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        QSqrt3::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn minus(&self, o: &Self) -> Self {
        QSqrt3::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn times(&self, o: &Self) -> Self {
        let three = int(3);
        QSqrt3::new(&self.a * &o.a + three * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
    fn negated(&self) -> Self {
        QSqrt3::new(-&self.a, -&self.b)
    }
    fn recip(&self) -> Option<Self> {
        let norm = &self.a * &self.a - int(3) * &self.b * &self.b;
        if norm.is_zero() {
            return None;
        }
        Some(QSqrt3::new(&self.a / &norm, -&self.b / &norm))
    }
    fn is_zero_value(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn magnitude(&self) -> f64 {
        (self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()).abs()
    }
}

impl Sqrt3Scalar for QSqrt3 {
    fn sqrt3() -> Self {
        QSqrt3::new(int(0), int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let s = QSqrt3::sqrt3();
        assert_eq!(s.times(&s), QSqrt3::from_i64(3));
        let x = QSqrt3::new(int(2), int(1));
        assert_eq!(x.times(&x.recip().unwrap()), QSqrt3::one_value());
    }
}
