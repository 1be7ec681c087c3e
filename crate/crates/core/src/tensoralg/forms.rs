use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{inverse_metric, TwoTensor, DIM};
use crate::scalar::{int, rat, Matrix, Scalar, Sqrt3Scalar};

/// A three-form `sum_{a<b<c} c_abc theta^a ^ theta^b ^ theta^c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeForm<S> {
    terms: BTreeMap<[usize; 3], S>,
}

/// Sign of the permutation sorting `idx`, or 0 with a repeated index.
pub(crate) fn permutation_sign(idx: &[usize]) -> i32 {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return 0;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl<S: Scalar> ThreeForm<S> {
    pub fn zero() -> Self {
        ThreeForm { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([usize; 3], S)>) -> Self {
        let mut f = ThreeForm::zero();
        for (idx, c) in terms {
            f.add_term(idx, c);
        }
        f
    }

    /// Adds `c theta^a ^ theta^b ^ theta^c` for any ordering of the indices.
    pub fn add_term(&mut self, idx: [usize; 3], c: S) {
        let sign = permutation_sign(&idx);
        if sign == 0 {
            return;
        }
        let mut key = idx;
        key.sort_unstable();
        let c = if sign < 0 { c.negated() } else { c };
        let cur = self.terms.remove(&key).unwrap_or_else(S::zero_value).plus(&c);
        if !cur.is_zero_value() {
            self.terms.insert(key, cur);
        }
    }

    /// The totally antisymmetric component `T_abc`.
    pub fn component(&self, idx: [usize; 3]) -> S {
        let sign = permutation_sign(&idx);
        if sign == 0 {
            return S::zero_value();
        }
        let mut key = idx;
        key.sort_unstable();
        let v = self.terms.get(&key).cloned().unwrap_or_else(S::zero_value);
        if sign < 0 {
            v.negated()
        } else {
            v
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ratio `self / other` when the two are proportional.
    pub fn ratio_to(&self, other: &ThreeForm<S>) -> Option<S> {
        let (k, v) = other.terms.iter().next()?;
        let r = self.terms.get(k)?.divided(v)?;
        let keys_match = self.terms.keys().eq(other.terms.keys());
        let all = other.terms.iter().all(|(k, v)| self.terms.get(k).is_some_and(|s| s.minus(&v.times(&r)).is_zero_value()));
        (keys_match && all).then_some(r)
    }
}

fn two_form(terms: &[(i64, usize, usize)]) -> TwoTensor<BigRational> {
    let mut m = Matrix::zeros(DIM, DIM);
    for &(c, a, b) in terms {
        let cur = m.get(a, b) + int(c);
        m.set(a, b, cur.clone());
        m.set(b, a, -cur);
    }
    m
}

fn three_form(terms: &[(i64, [usize; 3])]) -> ThreeForm<BigRational> {
    ThreeForm::from_terms(terms.iter().map(|&(c, idx)| (idx, int(c))))
}

/// The three antisymmetric two-tensors spanning the `Y`-eigenspace of
/// eigenvalue 7 in the adapted frame, with the matching three-forms spanning
/// its Hodge dual. A two-form `F_ab` means `sum_{a<b} F_ab theta^a ^ theta^b`.
pub fn lambda3_basis() -> [(TwoTensor<BigRational>, ThreeForm<BigRational>); 3] {
    [
        (two_form(&[(1, 0, 3), (-3, 1, 2)]), three_form(&[(-1, [0, 1, 4]), (2, [0, 2, 3])])),
        (two_form(&[(1, 0, 4), (-2, 1, 3)]), three_form(&[(-1, [0, 2, 4]), (8, [1, 2, 3])])),
        (two_form(&[(1, 1, 4), (-3, 2, 3)]), three_form(&[(-1, [0, 3, 4]), (2, [1, 2, 4])])),
    ]
}

/// `(*F)_klm = 1/2 F^ij eta_ijklm` with `eta_01234 = sqrt(|det g|) = sqrt(3)`.
pub fn hodge_star<S: Sqrt3Scalar>(f: &TwoTensor<S>) -> ThreeForm<S> {
    let ginv = inverse_metric().map(S::from_rational);
    let raised = ginv.mul(f).mul(&ginv.transpose());
    let vol = S::sqrt3();
    let mut out = ThreeForm::zero();
    for k in 0..DIM {
        for l in k + 1..DIM {
            for m in l + 1..DIM {
                let mut acc = S::zero_value();
                for i in 0..DIM {
                    for j in 0..DIM {
                        let sign = permutation_sign(&[i, j, k, l, m]);
                        if sign != 0 {
                            acc = acc.plus(&raised.get(i, j).scaled(&int(sign as i64)));
                        }
                    }
                }
                out.add_term([k, l, m], acc.times(&vol).scaled(&rat(1, 2)));
            }
        }
    }
    out
}
