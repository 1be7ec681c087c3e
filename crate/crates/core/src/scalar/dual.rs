use num_rational::BigRational;

use super::{EvalError, PowScalar, Scalar};

/// First-order forward-mode value: a scalar together with its gradient.
/// An empty gradient stands for a constant.
#[derive(Clone, Debug)]
pub struct Dual<S> {
    pub value: S,
    pub grad: Vec<S>,
}

impl<S: Scalar> Dual<S> {
    pub fn constant(value: S) -> Self {
        Dual { value, grad: Vec::new() }
    }

    /// The coordinate function with index `index` among `count` variables.
    pub fn variable(value: S, index: usize, count: usize) -> Self {
        let mut grad = vec![S::zero_value(); count];
        grad[index] = S::one_value();
        Dual { value, grad }
    }

    pub fn partial(&self, index: usize) -> S {
        self.grad.get(index).cloned().unwrap_or_else(S::zero_value)
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Vec<S> {
        let n = self.grad.len().max(o.grad.len());
        (0..n).map(|i| f(&self.partial(i), &o.partial(i))).collect()
    }

    fn scale_grad(&self, k: &S) -> Vec<S> {
        self.grad.iter().map(|g| g.times(k)).collect()
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn zero_value() -> Self {
        Dual::constant(S::zero_value())
    }
    fn one_value() -> Self {
        Dual::constant(S::one_value())
    }
    fn from_rational(q: &BigRational) -> Self {
        Dual::constant(S::from_rational(q))
    }
    fn plus(&self, o: &Self) -> Self {
        Dual { value: self.value.plus(&o.value), grad: self.zip(o, |a, b| a.plus(b)) }
    }
    fn minus(&self, o: &Self) -> Self {
        Dual { value: self.value.minus(&o.value), grad: self.zip(o, |a, b| a.minus(b)) }
    }
    fn times(&self, o: &Self) -> Self {
        let grad = if self.grad.is_empty() {
            o.scale_grad(&self.value)
        } else if o.grad.is_empty() {
            self.scale_grad(&o.value)
        } else {
            self.zip(o, |a, b| a.times(&o.value).plus(&self.value.times(b)))
        };
        Dual { value: self.value.times(&o.value), grad }
    }
    fn negated(&self) -> Self {
        Dual { value: self.value.negated(), grad: self.grad.iter().map(S::negated).collect() }
    }
    fn recip(&self) -> Option<Self> {
        let inv = self.value.recip()?;
        let k = inv.times(&inv).negated();
        Some(Dual { value: inv, grad: self.scale_grad(&k) })
    }
    fn is_zero_value(&self) -> bool {
        self.value.is_zero_value() && self.grad.iter().all(S::is_zero_value)
    }
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
}

impl<S: PowScalar> PowScalar for Dual<S> {
    fn pow_rational(&self, e: &BigRational, bits: usize) -> Result<Self, EvalError> {
        let value = self.value.pow_rational(e, bits)?;
        if self.grad.is_empty() {
            return Ok(Dual::constant(value));
        }
        let one = BigRational::from_integer(1.into());
        let lower = self.value.pow_rational(&(e - &one), bits)?;
        let k = lower.scaled(e);
        Ok(Dual { value, grad: self.scale_grad(&k) })
    }
}
