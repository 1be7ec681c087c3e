//! Fixed-precision binary floating point values backed by `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Number of mantissa bits used for a requested count of significant decimal digits.
/// A 64-bit guard is added so that cancellation in long sums stays below the reported precision.
pub fn digits_to_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// A binary floating point number carrying its working precision in bits.
#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    pub fn zero(bits: usize) -> Self {
        Real { value: BigFloat::from_u64(0, bits), bits }
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Real { value: BigFloat::from_i64(v, bits), bits }
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Real { value: BigFloat::from_f64(v, bits), bits }
    }

    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        if let Some(small) = v.to_i64() {
            return Real::from_i64(small, bits);
        }
        let text = v.to_string();
        let value = with_consts(|cc| BigFloat::parse(&text, Radix::Dec, bits, RM, cc));
        Real { value, bits }
    }

    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        let n = Real::from_bigint(q.numer(), bits);
        if q.denom() == &BigInt::from(1) {
            return n;
        }
        let d = Real::from_bigint(q.denom(), bits);
        n.div(&d)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn raw(&self) -> &BigFloat {
        &self.value
    }

    fn wrap(&self, other: &Real, value: BigFloat) -> Real {
        Real { value, bits: self.bits.max(other.bits) }
    }

    pub fn add(&self, o: &Real) -> Real {
        let p = self.bits.max(o.bits);
        self.wrap(o, self.value.add(&o.value, p, RM))
    }

    pub fn sub(&self, o: &Real) -> Real {
        let p = self.bits.max(o.bits);
        self.wrap(o, self.value.sub(&o.value, p, RM))
    }

    pub fn mul(&self, o: &Real) -> Real {
        let p = self.bits.max(o.bits);
        self.wrap(o, self.value.mul(&o.value, p, RM))
    }

    /// Division; the caller is responsible for checking that `o` is nonzero.
    pub fn div(&self, o: &Real) -> Real {
        let p = self.bits.max(o.bits);
        self.wrap(o, self.value.div(&o.value, p, RM))
    }

    pub fn neg(&self) -> Real {
        Real { value: self.value.neg(), bits: self.bits }
    }

    pub fn abs(&self) -> Real {
        Real { value: self.value.abs(), bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn sqrt(&self) -> Real {
        Real { value: self.value.sqrt(self.bits, RM), bits: self.bits }
    }

    pub fn powi(&self, n: usize) -> Real {
        Real { value: self.value.powi(n, self.bits, RM), bits: self.bits }
    }

    /// `self^(p/q)` for a positive base.
    pub fn pow_positive(&self, exponent: &BigRational) -> Real {
        let bits = self.bits;
        if exponent.denom() == &BigInt::from(2) {
            let root = self.sqrt();
            let k = exponent.numer().abs().to_usize().expect("exponent numerator");
            let r = root.powi(k);
            return if exponent.is_negative() { Real::from_i64(1, bits).div(&r) } else { r };
        }
        let e = Real::from_rational(exponent, bits + 32);
        let value = with_consts(|cc| self.value.pow(&e.value, bits, RM, cc));
        Real { value, bits }
    }

    pub fn cmp_real(&self, o: &Real) -> Ordering {
        match self.value.cmp(&o.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    /// Nearest `f64`, saturating to 0 or infinity outside the double range.
    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap_or(&0) as f64;
        let e = exponent as i64 - 64;
        let mag = if e > 1100 {
            f64::INFINITY
        } else if e < -1200 {
            0.0
        } else {
            let half = (e / 2) as i32;
            top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
        };
        if sign == Sign::Neg { -mag } else { mag }
    }

    /// Scientific notation with `sig` significant digits, valid far outside the `f64` range.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let f = self.to_f64();
        if f.is_finite() && f != 0.0 && f.abs() > 1e-300 && f.abs() < 1e300 {
            return format!("{:.*e}", sig.saturating_sub(1), f);
        }
        let text = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        let (mantissa, exp) = text.split_once('e').unwrap_or((&text, "0"));
        let neg = mantissa.starts_with('-');
        let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        let digits = digits.trim_start_matches('0');
        let lead_zeros = mantissa.chars().filter(|c| c.is_ascii_digit()).take_while(|c| *c == '0').count() as i64;
        let exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
        let int_digits = mantissa.split('.').next().unwrap_or("").chars().filter(|c| c.is_ascii_digit()).count() as i64;
        let e10 = exp + int_digits - 1 - lead_zeros;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let body: String = digits.chars().take(sig.max(1)).collect();
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push_str(&format!("e{}", e10));
        out
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20))
    }
}
