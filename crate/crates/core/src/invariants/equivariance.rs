use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{InvariantError, InvariantKind};
use crate::gl2::{rho_n_rational, Gl2Element};

/// Outcome of sampling `I(theta . rho(a)) / I(theta)` at random rational points.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceReport {
    pub kind: InvariantKind,
    /// The ratio is the same at every sample where `I(theta) != 0`.
    pub consistent: bool,
    /// The common ratio when consistent.
    pub ratio: Option<BigRational>,
    /// `k` with `ratio = det(a)^k`, integer or half-integer, when determinable.
    pub weight: Option<BigRational>,
    /// Samples with `I(theta) != 0`.
    pub samples: usize,
    /// The weight printed alongside the invariant, if any.
    pub stated_weight: Option<i64>,
}

impl EquivarianceReport {
    /// Consistent and of a detectable weight.
    pub fn is_relative_invariant(&self) -> bool {
        self.consistent && self.weight.is_some()
    }

    /// Whether the detected weight equals the printed one; `None` when nothing is printed.
    pub fn matches_stated(&self) -> Option<bool> {
        let stated = self.stated_weight?;
        Some(self.weight.as_ref() == Some(&BigRational::from_integer(BigInt::from(stated))))
    }
}

fn pow_signed(base: &BigRational, k: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Half-integer `k` in `[-64, 64]` with `ratio = det^k`. For half-integers the
/// test is `ratio^2 = det^(2k)` with `ratio` of the sign of `det^k` for positive `det`.
fn detect_weight(ratio: &BigRational, det: &BigRational) -> Option<BigRational> {
    if det.abs().is_one() {
        return None;
    }
    let sq = ratio * ratio;
    for twice in -128i64..=128 {
        if pow_signed(det, twice) != sq {
            continue;
        }
        if twice % 2 == 0 {
            if pow_signed(det, twice / 2) == *ratio {
                return Some(BigRational::from_integer(BigInt::from(twice / 2)));
            }
        } else if det.is_positive() && ratio.is_positive() {
            return Some(BigRational::new(BigInt::from(twice), BigInt::from(2)));
        }
    }
    None
}

/// Samples `trials` random integer vectors `theta` and compares `I(theta . rho_n(a))`
/// with `I(theta)` exactly.
pub fn check_equivariance(kind: InvariantKind, a: &Gl2Element, trials: usize, seed: u64) -> Result<EquivarianceReport, InvariantError> {
    let entries = a.as_rational().ok_or_else(|| InvariantError::Argument("group element must be rational".into()))?;
    let det = &entries[0] * &entries[3] - &entries[1] * &entries[2];
    if det.is_zero() {
        return Err(InvariantError::Argument("group element is singular".into()));
    }
    let n = kind.dim();
    let rho = rho_n_rational(&entries, n).map_err(|e| InvariantError::Argument(e.to_string()))?;
    let poly = kind.poly();
    let ratios: Vec<Option<BigRational>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let theta: Vec<BigRational> = (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))).collect();
            let moved: Vec<BigRational> = (0..n)
                .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + &theta[j] * rho.get(j, i)))
                .collect();
            let before = poly.eval(&theta);
            (!before.is_zero()).then(|| poly.eval(&moved) / before)
        })
        .collect();
    let ratios: Vec<BigRational> = ratios.into_iter().flatten().collect();
    let Some(first) = ratios.first().cloned() else {
        return Err(InvariantError::Inconclusive(format!("{kind} vanished at all {trials} sampled points")));
    };
    let consistent = ratios.iter().all(|r| *r == first);
    let weight = if consistent { detect_weight(&first, &det) } else { None };
    Ok(EquivarianceReport {
        kind,
        consistent,
        ratio: consistent.then_some(first),
        weight,
        samples: ratios.len(),
        stated_weight: kind.stated_weight(),
    })
}
