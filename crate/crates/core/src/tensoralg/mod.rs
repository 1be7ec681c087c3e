//! Equivariant linear algebra on the five-dimensional representation: the
//! operator `Y` on two-tensors and its eigenspace decomposition, the Ricci and
//! Maxwell splits, and the kernel of the operator `Upsilon-bar` on Weyl
//! connection coefficients.

mod forms;
mod kernel;

#[cfg(test)]
mod tests;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::invariants::{five_dim_metric, five_dim_upsilon, CoeffTensor};
use crate::scalar::{int, rat, Matrix, QSqrt3, Scalar, Sqrt3Scalar};

pub use forms::{hodge_star, lambda3_basis, ThreeForm};
pub use kernel::{
    co32_basis, connection_in_kernel_basis, gl2_tensor_r5_basis, lambda3_connections, upsilon_bar, upsilon_bar_kernel, weyl_split,
    ConnectionCoeffs, KernelBasis, KernelPart, WeylSplit,
};

pub const DIM: usize = 5;

/// A general element of `R^5 (x) R^5`, stored as a 5x5 matrix `w_ij`.
pub type TwoTensor<S> = Matrix<S>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("tensor is not antisymmetric (residual {0:e})")]
    NotAntisymmetric(f64),
    #[error("connection is not in the kernel (residual {0:e})")]
    NotInKernel(f64),
    #[error("shape error: {0}")]
    Shape(String),
}

/// The metric `g_ij` of the adapted frame as a matrix.
pub fn metric() -> &'static Matrix<BigRational> {
    static G: OnceLock<Matrix<BigRational>> = OnceLock::new();
    G.get_or_init(|| five_dim_metric().to_matrix())
}

/// The inverse metric `g^ij`.
pub fn inverse_metric() -> &'static Matrix<BigRational> {
    static G: OnceLock<Matrix<BigRational>> = OnceLock::new();
    G.get_or_init(|| metric().inverse().expect("metric is nondegenerate"))
}

pub(crate) fn upsilon() -> &'static CoeffTensor<QSqrt3> {
    static U: OnceLock<CoeffTensor<QSqrt3>> = OnceLock::new();
    U.get_or_init(five_dim_upsilon)
}

fn flat(i: usize, j: usize) -> usize {
    i * DIM + j
}

/// The 25x25 matrix of `Y(w)_ik = g^mj g^pl Y_ijkl w_mp` with
/// `Y_ijkl = 4 Upsilon_ijm Upsilon_klp g^mp`, acting on `w` flattened row-major.
pub fn y_operator() -> &'static Matrix<BigRational> {
    static Y: OnceLock<Matrix<BigRational>> = OnceLock::new();
    Y.get_or_init(build_y)
}

fn build_y() -> Matrix<BigRational> {
    let u = upsilon();
    let ginv = inverse_metric().map(QSqrt3::from_rational);
    let four = QSqrt3::from_i64(4);
    // yt[ij][kl] = 4 U_ijm U_klp g^mp
    let mut yt = vec![QSqrt3::zero_value(); DIM * DIM * DIM * DIM];
    let raised: Vec<Vec<QSqrt3>> = (0..DIM * DIM)
        .map(|kl| ginv.mul_vec(&(0..DIM).map(|p| u.get(&[kl / DIM, kl % DIM, p])).collect::<Vec<_>>()))
        .collect();
    for ij in 0..DIM * DIM {
        for kl in 0..DIM * DIM {
            let mut acc = QSqrt3::zero_value();
            for m in 0..DIM {
                acc = acc.plus(&u.get(&[ij / DIM, ij % DIM, m]).times(&raised[kl][m]));
            }
            yt[ij * DIM * DIM + kl] = acc.times(&four);
        }
    }
    let ginv = inverse_metric();
    Matrix::from_fn(DIM * DIM, DIM * DIM, |row, col| {
        let (i, k) = (row / DIM, row % DIM);
        let (m, p) = (col / DIM, col % DIM);
        let mut acc = QSqrt3::zero_value();
        for j in 0..DIM {
            let gmj = ginv.get(m, j);
            if num_traits::Zero::is_zero(gmj) {
                continue;
            }
            for l in 0..DIM {
                let gpl = ginv.get(p, l);
                if num_traits::Zero::is_zero(gpl) {
                    continue;
                }
                let y = &yt[flat(i, j) * DIM * DIM + flat(k, l)];
                acc = acc.plus(&y.scaled(&(gmj * gpl)));
            }
        }
        assert!(acc.is_rational(), "Y has rational entries");
        acc.a
    })
}

/// Labels of the five eigenspaces in the order `(1, 5, 9, 3, 7)` of their dimensions.
pub const EIGENVALUES: [i64; 5] = [14, -3, 4, 7, -8];
pub const MULTIPLICITIES: [usize; 5] = [1, 5, 9, 3, 7];

/// Lagrange projectors onto the eigenspaces, in the order of [`EIGENVALUES`].
pub fn projectors() -> &'static [Matrix<BigRational>; 5] {
    static P: OnceLock<[Matrix<BigRational>; 5]> = OnceLock::new();
    P.get_or_init(|| {
        let y = y_operator();
        let id = Matrix::<BigRational>::identity(DIM * DIM);
        std::array::from_fn(|a| {
            let lambda = EIGENVALUES[a];
            let mut p = id.clone();
            for &mu in EIGENVALUES.iter().filter(|&&mu| mu != lambda) {
                let factor = y.sub(&id.scale(&int(mu))).scale(&BigRational::new(BigInt::from(1), BigInt::from(lambda - mu)));
                p = p.mul(&factor);
            }
            p
        })
    })
}

pub(crate) fn flatten<S: Scalar>(w: &TwoTensor<S>) -> Vec<S> {
    w.entries().to_vec()
}

pub(crate) fn unflatten<S: Scalar>(v: &[S]) -> TwoTensor<S> {
    Matrix::from_fn(DIM, DIM, |i, j| v[flat(i, j)].clone())
}

fn check_shape<S: Scalar>(w: &TwoTensor<S>) -> Result<(), TensorError> {
    if w.rows() != DIM || w.cols() != DIM {
        return Err(TensorError::Shape(format!("expected 5x5, got {}x{}", w.rows(), w.cols())));
    }
    Ok(())
}

fn apply<S: Scalar>(m: &Matrix<BigRational>, w: &TwoTensor<S>) -> TwoTensor<S> {
    let v = flatten(w);
    let out: Vec<S> = (0..m.rows())
        .map(|r| {
            let mut acc = S::zero_value();
            for (c, x) in v.iter().enumerate() {
                let k = m.get(r, c);
                if !num_traits::Zero::is_zero(k) {
                    acc = acc.plus(&x.scaled(k));
                }
            }
            acc
        })
        .collect();
    unflatten(&out)
}

/// `Y(w)`.
pub fn apply_y<S: Scalar>(w: &TwoTensor<S>) -> TwoTensor<S> {
    apply(y_operator(), w)
}

/// Components of a two-tensor in the five eigenspaces of `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition5<S> {
    /// Multiples of `g`, eigenvalue 14.
    pub sym1: TwoTensor<S>,
    /// Eigenvalue -3.
    pub sym5: TwoTensor<S>,
    /// Eigenvalue 4.
    pub sym9: TwoTensor<S>,
    /// `sl(2,R)`, eigenvalue 7.
    pub skew3: TwoTensor<S>,
    /// Eigenvalue -8.
    pub skew7: TwoTensor<S>,
}

impl<S: Scalar> Decomposition5<S> {
    /// Components paired with their eigenvalues.
    pub fn labelled(&self) -> [(i64, &TwoTensor<S>); 5] {
        [(14, &self.sym1), (-3, &self.sym5), (4, &self.sym9), (7, &self.skew3), (-8, &self.skew7)]
    }

    pub fn sum(&self) -> TwoTensor<S> {
        self.sym1.add(&self.sym5).add(&self.sym9).add(&self.skew3).add(&self.skew7)
    }
}

pub fn decompose_two_tensor<S: Scalar>(w: &TwoTensor<S>) -> Result<Decomposition5<S>, TensorError> {
    check_shape(w)?;
    let p = projectors();
    Ok(Decomposition5 {
        sym1: apply(&p[0], w),
        sym5: apply(&p[1], w),
        sym9: apply(&p[2], w),
        skew3: apply(&p[3], w),
        skew7: apply(&p[4], w),
    })
}

fn lift<S: Scalar>(m: &Matrix<BigRational>) -> Matrix<S> {
    m.map(S::from_rational)
}

/// The pieces of a Ricci tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciSplit<S> {
    /// `R = g^ij R_ij`.
    pub scalar: S,
    /// `R_v^i = Upsilon^ijk R_jk`.
    pub vector: Vec<S>,
    pub r9: TwoTensor<S>,
    pub r3: TwoTensor<S>,
    pub r7: TwoTensor<S>,
}

/// `Upsilon^ijk` with all indices raised by `g^ij`.
fn upsilon_raised<S: Sqrt3Scalar>() -> CoeffTensor<S> {
    let u: CoeffTensor<S> = five_dim_upsilon();
    let ginv: Matrix<S> = lift(inverse_metric());
    let mut out = CoeffTensor::zeros(3, DIM);
    for idx in crate::invariants::sorted_index_tuples(3, DIM) {
        let mut acc = S::zero_value();
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    let g = ginv.get(idx[0], a).times(ginv.get(idx[1], b)).times(ginv.get(idx[2], c));
                    if !g.is_zero_value() {
                        acc = acc.plus(&g.times(&u.get(&[a, b, c])));
                    }
                }
            }
        }
        out.set(&idx, acc);
    }
    out
}

/// `R_v^i = Upsilon^ijk R_jk`.
pub fn ricci_vector<S: Sqrt3Scalar>(r: &TwoTensor<S>) -> Vec<S> {
    let up = upsilon_raised::<S>();
    (0..DIM)
        .map(|i| {
            let mut acc = S::zero_value();
            for j in 0..DIM {
                for k in 0..DIM {
                    acc = acc.plus(&up.get(&[i, j, k]).times(r.get(j, k)));
                }
            }
            acc
        })
        .collect()
}

fn symmetric_part<S: Scalar>(r: &TwoTensor<S>) -> TwoTensor<S> {
    r.add(&r.transpose()).scale(&S::from_rational(&rat(1, 2)))
}

fn skew_part<S: Scalar>(r: &TwoTensor<S>) -> TwoTensor<S> {
    r.sub(&r.transpose()).scale(&S::from_rational(&rat(1, 2)))
}

fn skew_projections<S: Scalar>(f: &TwoTensor<S>) -> (TwoTensor<S>, TwoTensor<S>) {
    let yf = apply_y(f);
    let third = f.scale(&S::from_rational(&rat(8, 15))).add(&yf.scale(&S::from_rational(&rat(1, 15))));
    let seventh = f.scale(&S::from_rational(&rat(7, 15))).sub(&yf.scale(&S::from_rational(&rat(1, 15))));
    (third, seventh)
}

/// Splits `R_ij` into `R g / 5 + (2/7) R_v^k Upsilon_ijk + R^(9)` plus the
/// antisymmetric pieces `R^(3)` and `R^(7)`.
pub fn ricci_split<S: Sqrt3Scalar>(r: &TwoTensor<S>) -> Result<RicciSplit<S>, TensorError> {
    check_shape(r)?;
    let g: Matrix<S> = lift(metric());
    let ginv: Matrix<S> = lift(inverse_metric());
    let scalar = ginv.mul(&r.transpose()).trace();
    let vector = ricci_vector(r);
    let u: CoeffTensor<S> = five_dim_upsilon();
    let five_part = Matrix::from_fn(DIM, DIM, |i, j| {
        let mut acc = S::zero_value();
        for (k, v) in vector.iter().enumerate() {
            acc = acc.plus(&v.times(&u.get(&[i, j, k])));
        }
        acc.scaled(&rat(2, 7))
    });
    let sym = symmetric_part(r);
    let r9 = sym.sub(&g.scale(&scalar.scaled(&rat(1, 5)))).sub(&five_part);
    let (r3, r7) = skew_projections(&skew_part(r));
    Ok(RicciSplit { scalar, vector, r9, r3, r7 })
}

impl<S: Sqrt3Scalar> RicciSplit<S> {
    /// `R_v^k Upsilon_ijk`.
    pub fn vector_part(&self) -> TwoTensor<S> {
        let u: CoeffTensor<S> = five_dim_upsilon();
        Matrix::from_fn(DIM, DIM, |i, j| {
            self.vector.iter().enumerate().fold(S::zero_value(), |acc, (k, v)| acc.plus(&v.times(&u.get(&[i, j, k]))))
        })
    }

    /// Reassembles `R_ij` from its pieces.
    pub fn reassemble(&self) -> TwoTensor<S> {
        let g: Matrix<S> = lift(metric());
        g.scale(&self.scalar.scaled(&rat(1, 5)))
            .add(&self.vector_part().scale(&S::from_rational(&rat(2, 7))))
            .add(&self.r9)
            .add(&self.r3)
            .add(&self.r7)
    }
}

/// Splits an antisymmetric two-form into its parts with `Y`-eigenvalues 7 and -8.
pub fn maxwell_split<S: Scalar>(da: &TwoTensor<S>) -> Result<(TwoTensor<S>, TwoTensor<S>), TensorError> {
    check_shape(da)?;
    let asym = da.add(&da.transpose());
    if !asym.is_zero() {
        return Err(TensorError::NotAntisymmetric(asym.max_magnitude()));
    }
    Ok(skew_projections(da))
}

/// The Ricci vector determined by torsion with components `(t1, t2, t3)` in the
/// three-dimensional part of the three-forms.
pub fn ricci_vector_from_torsion<S: Sqrt3Scalar>(t1: &S, t2: &S, t3: &S) -> Vec<S> {
    let k = S::sqrt3().scaled(&rat(7, 6));
    let sq = |x: &S| x.times(x);
    [
        sq(t3),
        t2.times(t3).scaled(&rat(-1, 3)),
        t1.times(t3).scaled(&rat(1, 9)).plus(&sq(t2).scaled(&rat(2, 27))),
        t1.times(t2).scaled(&rat(-1, 9)),
        sq(t1).scaled(&rat(1, 9)),
    ]
    .into_iter()
    .map(|v| v.times(&k))
    .collect()
}
