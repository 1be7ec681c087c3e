use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{InvariantError, InvariantKind};
use crate::expr::Poly;
use crate::scalar::{int, Matrix, Scalar, Sqrt3Scalar};

/// A totally symmetric tensor of rank `q` on an `n`-dimensional space, stored
/// once per sorted multi-index. Missing entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTensor<S = BigRational> {
    rank: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, S>,
}

/// All non-decreasing index tuples of length `rank` with entries below `dim`.
pub fn sorted_index_tuples(rank: usize, dim: usize) -> Vec<Vec<usize>> {
    fn go(rank: usize, dim: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(rank, dim, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, dim, 0, &mut Vec::with_capacity(rank), &mut out);
    out
}

/// Number of distinct orderings of a sorted multi-index.
fn multiplicity(idx: &[usize]) -> BigInt {
    let mut total = factorial(idx.len());
    let mut run = 1;
    for w in idx.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            total /= factorial(run);
            run = 1;
        }
    }
    if !idx.is_empty() {
        total /= factorial(run);
    }
    total
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl<S: Scalar> CoeffTensor<S> {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        CoeffTensor { rank, dim, entries: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn key(&self, idx: &[usize]) -> Vec<usize> {
        assert_eq!(idx.len(), self.rank, "index length must equal the rank");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        let mut k = idx.to_vec();
        k.sort_unstable();
        k
    }

    pub fn get(&self, idx: &[usize]) -> S {
        self.entries.get(&self.key(idx)).cloned().unwrap_or_else(S::zero_value)
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let k = self.key(idx);
        if v.is_zero_value() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    /// Nonzero entries keyed by sorted multi-index.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.entries.iter()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CoeffTensor<T> {
        let mut out = CoeffTensor::zeros(self.rank, self.dim);
        for (k, v) in &self.entries {
            out.set(k, f(v));
        }
        out
    }

    pub fn scaled(&self, k: &S) -> Self {
        self.map(|v| v.times(k))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rank, self.dim), (o.rank, o.dim));
        let mut out = self.clone();
        for (k, v) in &o.entries {
            let cur = out.get(k);
            out.set(k, cur.minus(v));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Full contraction `T(theta, .., theta)`.
    pub fn contract(&self, theta: &[S]) -> S {
        assert_eq!(theta.len(), self.dim);
        let mut acc = S::zero_value();
        for (k, v) in &self.entries {
            let mut t = v.scaled(&BigRational::from_integer(multiplicity(k)));
            for &i in k {
                t = t.times(&theta[i]);
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// The rank-two tensor as a square matrix.
    pub fn to_matrix(&self) -> Matrix<S> {
        assert_eq!(self.rank, 2, "only rank-two tensors are matrices");
        Matrix::from_fn(self.dim, self.dim, |i, j| self.get(&[i, j]))
    }

    /// Contraction of the first two indices against the inverse metric `ginv`.
    pub fn trace(&self, ginv: &Matrix<S>) -> CoeffTensor<S> {
        assert!(self.rank >= 2);
        let mut out = CoeffTensor::zeros(self.rank - 2, self.dim);
        for rest in sorted_index_tuples(self.rank - 2, self.dim) {
            let mut acc = S::zero_value();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let gij = ginv.get(i, j);
                    if gij.is_zero_value() {
                        continue;
                    }
                    let mut idx = vec![i, j];
                    idx.extend_from_slice(&rest);
                    acc = acc.plus(&gij.times(&self.get(&idx)));
                }
            }
            out.set(&rest, acc);
        }
        out
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl CoeffTensor<BigRational> {
    /// Polarization `T = (1/q!) d^q P` of a form of degree `rank`, so that
    /// `T(theta, .., theta) = P(theta)`.
    pub fn from_polynomial(p: &Poly, rank: usize) -> Result<Self, InvariantError> {
        if !p.is_homogeneous(rank as u32) {
            return Err(InvariantError::Argument(format!("polynomial is not a form of degree {rank}")));
        }
        let dim = p.nvars();
        let norm = BigRational::new(BigInt::one(), factorial(rank));
        let mut out = CoeffTensor::zeros(rank, dim);
        for idx in sorted_index_tuples(rank, dim) {
            let mut d = p.clone();
            for &i in &idx {
                d = d.diff(i);
                if d.is_zero() {
                    break;
                }
            }
            let c = d.coefficient(&vec![0; dim]);
            if !c.is_zero() {
                out.set(&idx, c * &norm);
            }
        }
        Ok(out)
    }

    /// The form `T(theta, .., theta)` as a polynomial.
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (k, v) in &self.entries {
            let mut e = vec![0u32; self.dim];
            for &i in k {
                e[i] += 1;
            }
            p = p.add(&Poly::monomial(e, v * BigRational::from_integer(multiplicity(k))));
        }
        p
    }

    pub fn lift<S: Scalar>(&self) -> CoeffTensor<S> {
        self.map(S::from_rational)
    }
}

/// The conformal metric `g_ij` of the five-dimensional representation.
pub fn five_dim_metric() -> CoeffTensor<BigRational> {
    CoeffTensor::from_polynomial(&InvariantKind::G5.poly(), 2).expect("quadratic form")
}

/// The cubic tensor `Upsilon_ijk` including the `3 sqrt(3)` prefactor.
pub fn five_dim_upsilon<S: Sqrt3Scalar>() -> CoeffTensor<S> {
    let bracket = CoeffTensor::from_polynomial(&InvariantKind::Upsilon5.poly(), 3).expect("cubic form");
    let k = S::sqrt3().scaled(&int(3));
    bracket.map(|v| S::from_rational(v).times(&k))
}

/// Residuals of the three algebraic conditions on a pair `(g, Upsilon)`:
/// symmetry, tracelessness and the quadratic identity tying `Upsilon` to `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanResiduals {
    pub symmetry: f64,
    pub trace: f64,
    pub identity: f64,
    /// All three residuals vanish exactly.
    pub exact_zero: bool,
}

/// Checks symmetry, `g^ij Upsilon_ijk = 0` and
/// `g^lm (U_ijl U_kmp + U_kil U_jmp + U_jkl U_imp) = g_ij g_kp + g_ki g_jp + g_jk g_ip`
/// over every index tuple.
pub fn cartan_identity_check<S: Scalar>(g: &CoeffTensor<S>, ups: &CoeffTensor<S>) -> Result<CartanResiduals, InvariantError> {
    if g.rank != 2 || ups.rank != 3 {
        return Err(InvariantError::Argument("expected a rank-two metric and a rank-three tensor".into()));
    }
    if g.dim != ups.dim {
        return Err(InvariantError::DimensionMismatch { expected: g.dim, found: ups.dim });
    }
    let n = g.dim;
    let gm = g.to_matrix();
    let ginv = gm.inverse().ok_or(InvariantError::SingularMetric)?;

    // Symmetric storage makes every permutation read the same entry; compare
    // against the matrix as a consistency check of the accessors.
    let mut symmetry = 0f64;
    let mut sym_exact = true;
    for i in 0..n {
        for j in 0..n {
            let d = gm.get(i, j).minus(gm.get(j, i));
            sym_exact &= d.is_zero_value();
            symmetry = symmetry.max(d.magnitude());
        }
    }

    let tr = ups.trace(&ginv);
    let trace = tr.max_magnitude();

    // a[ij][kp] = g^lm U_ijl U_kmp
    let u = |i: usize, j: usize, k: usize| ups.get(&[i, j, k]);
    let slices: Vec<Vec<S>> = (0..n * n).map(|ij| (0..n).map(|l| u(ij / n, ij % n, l)).collect()).collect();
    let raised: Vec<Vec<S>> = slices.iter().map(|s| ginv.mul_vec(s)).collect();
    let dot = |a: &[S], b: &[S]| a.iter().zip(b).fold(S::zero_value(), |acc, (x, y)| acc.plus(&x.times(y)));
    let a = |ij: usize, kp: usize| dot(&slices[ij], &raised[kp]);

    let mut identity = 0f64;
    let mut id_exact = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for p in 0..n {
                    let lhs = a(i * n + j, k * n + p).plus(&a(k * n + i, j * n + p)).plus(&a(j * n + k, i * n + p));
                    let rhs = gm
                        .get(i, j)
                        .times(gm.get(k, p))
                        .plus(&gm.get(k, i).times(gm.get(j, p)))
                        .plus(&gm.get(j, k).times(gm.get(i, p)));
                    let d = lhs.minus(&rhs);
                    id_exact &= d.is_zero_value();
                    identity = identity.max(d.magnitude());
                }
            }
        }
    }
    Ok(CartanResiduals { symmetry, trace, identity, exact_zero: sym_exact && tr.is_zero() && id_exact })
}

/// Removes the trace of a symmetric rank-three tensor with respect to `g`.
pub fn traceless_part<S: Scalar>(t: &CoeffTensor<S>, g: &CoeffTensor<S>) -> Result<CoeffTensor<S>, InvariantError> {
    if t.rank != 3 || g.rank != 2 {
        return Err(InvariantError::Argument("expected rank three and a metric".into()));
    }
    let n = t.dim;
    let ginv = g.to_matrix().inverse().ok_or(InvariantError::SingularMetric)?;
    let tau = t.trace(&ginv);
    let c = BigRational::new(BigInt::one(), BigInt::from(n + 2));
    let mut out = t.clone();
    for idx in sorted_index_tuples(3, n) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let corr = g
            .get(&[i, j])
            .times(&tau.get(&[k]))
            .plus(&g.get(&[j, k]).times(&tau.get(&[i])))
            .plus(&g.get(&[i, k]).times(&tau.get(&[j])))
            .scaled(&c);
        out.set(&idx, t.get(&idx).minus(&corr));
    }
    Ok(out)
}

/// Basis of the matrices `Gamma` (entry `(l, i)` is `Gamma^l_i`) solving
/// `Gamma^l_i U_ljk + Gamma^l_j U_ilk + Gamma^l_k U_ijl = (3/n) tr(Gamma) U_ijk`.
pub fn stabilizer_algebra<S: Scalar>(ups: &CoeffTensor<S>) -> Result<Vec<Matrix<S>>, InvariantError> {
    if ups.rank != 3 {
        return Err(InvariantError::Argument("expected a rank-three tensor".into()));
    }
    let n = ups.dim;
    let rows_idx = sorted_index_tuples(3, n);
    let trace_coeff = BigRational::new(BigInt::from(3), BigInt::from(n));
    let mut system: Matrix<S> = Matrix::zeros(rows_idx.len(), n * n);
    for (r, idx) in rows_idx.iter().enumerate() {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut add = |col: usize, v: S| {
            let cur = system.get(r, col).plus(&v);
            system.set(r, col, cur);
        };
        for l in 0..n {
            add(l * n + i, ups.get(&[l, j, k]));
            add(l * n + j, ups.get(&[i, l, k]));
            add(l * n + k, ups.get(&[i, j, l]));
        }
        let u = ups.get(&[i, j, k]).scaled(&trace_coeff);
        for m in 0..n {
            add(m * n + m, u.negated());
        }
    }
    Ok(system.nullspace().into_iter().map(|v| Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())).collect())
}
