use std::sync::OnceLock;

use num_rational::BigRational;

use super::forms::permutation_sign;
use super::{inverse_metric, metric, TensorError, DIM};
use crate::gl2::rep_generators;
use crate::invariants::{sorted_index_tuples, CoeffTensor};
use crate::scalar::{int, rat, Matrix, QSqrt3, Scalar, Sqrt3Scalar};

const N3: usize = DIM * DIM * DIM;

fn idx3(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

/// Connection coefficients `Gamma_ijk` with the first index lowered by `g`;
/// the connection one-forms are `Gamma_ij = Gamma_ijk theta^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoeffs<S> {
    data: Vec<S>,
}

impl<S: Scalar> ConnectionCoeffs<S> {
    pub fn zeros() -> Self {
        ConnectionCoeffs { data: vec![S::zero_value(); N3] }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(N3);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    data.push(f(i, j, k));
                }
            }
        }
        ConnectionCoeffs { data }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[idx3(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.data[idx3(i, j, k)] = v;
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    /// Lowers the first index of `Gamma^l_jk`.
    pub fn from_upper(upper: &[S]) -> Self {
        let g = metric().map(S::from_rational);
        ConnectionCoeffs::from_fn(|i, j, k| {
            (0..DIM).fold(S::zero_value(), |acc, l| acc.plus(&g.get(i, l).times(&upper[idx3(l, j, k)])))
        })
    }

    /// `Gamma^l_jk = g^li Gamma_ijk`.
    pub fn to_upper(&self) -> Vec<S> {
        let ginv = inverse_metric().map(S::from_rational);
        let mut out = vec![S::zero_value(); N3];
        for l in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    out[idx3(l, j, k)] =
                        (0..DIM).fold(S::zero_value(), |acc, i| acc.plus(&ginv.get(l, i).times(self.get(i, j, k))));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        ConnectionCoeffs { data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ConnectionCoeffs { data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn scale(&self, k: &S) -> Self {
        ConnectionCoeffs { data: self.data.iter().map(|a| a.times(k)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero_value)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl ConnectionCoeffs<BigRational> {
    pub fn lift<S: Scalar>(&self) -> ConnectionCoeffs<S> {
        ConnectionCoeffs { data: self.data.iter().map(S::from_rational).collect() }
    }
}

/// `Upsilon-bar(Gamma)_ijkm = Upsilon_l(ij Gamma^l_km) - 1/5 Gamma^l_l(m Upsilon_ijk)`
/// for coefficients `Gamma^l_km` given with the first index raised.
pub fn upsilon_bar<S: Sqrt3Scalar>(upper: &[S]) -> CoeffTensor<S> {
    let u: CoeffTensor<S> = crate::invariants::five_dim_upsilon();
    let trace: Vec<S> = (0..DIM).map(|m| (0..DIM).fold(S::zero_value(), |acc, l| acc.plus(&upper[idx3(l, l, m)]))).collect();
    let mut out = CoeffTensor::zeros(4, DIM);
    let perms = permutations4();
    for idx in sorted_index_tuples(4, DIM) {
        let mut acc = S::zero_value();
        for p in &perms {
            let (a, b, c, d) = (idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]);
            for l in 0..DIM {
                let ul = u.get(&[l, a, b]);
                if !ul.is_zero_value() {
                    acc = acc.plus(&ul.times(&upper[idx3(l, c, d)]));
                }
            }
            acc = acc.minus(&trace[d].times(&u.get(&[a, b, c])).scaled(&rat(1, 5)));
        }
        out.set(&idx, acc.scaled(&rat(1, 24)));
    }
    out
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if permutation_sign(&p) != 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Which summand of the kernel a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelPart {
    /// `E_A (x) theta^m` for a generator `E_A` of `gl(2,R)`.
    Gl2 { generator: usize, slot: usize },
    /// The unit three-form `theta^a ^ theta^b ^ theta^c`, `a < b < c`.
    ThreeForm { indices: [usize; 3] },
}

/// The kernel of `Upsilon-bar` on `co(3,2) (x) R^5`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    /// Dimension of `co(3,2) (x) R^5`.
    pub ambient_dim: usize,
    /// Dimension of the exact nullspace.
    pub dimension: usize,
    /// Tagged basis: twenty elements of `gl(2,R) (x) R^5` then ten three-forms.
    pub basis: Vec<(KernelPart, ConnectionCoeffs<BigRational>)>,
    /// The tagged elements lie in the kernel and are linearly independent, so
    /// the two summands intersect trivially.
    pub tagged_basis_spans: bool,
}

/// Basis of `co(3,2)`: matrices `X` (entry `(l, k)` is `X^l_k`) with
/// `g X + (g X)^T = (2/5) tr(X) g`.
pub fn co32_basis() -> Vec<Matrix<BigRational>> {
    let g = metric();
    let mut rows = Vec::new();
    for i in 0..DIM {
        for j in i..DIM {
            let mut row = vec![int(0); DIM * DIM];
            for l in 0..DIM {
                // (gX)_ij = g_il X^l_j
                row[l * DIM + j] += g.get(i, l);
                row[l * DIM + i] += g.get(j, l);
            }
            for m in 0..DIM {
                row[m * DIM + m] -= g.get(i, j) * rat(2, 5);
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows).nullspace().into_iter().map(|v| Matrix::from_fn(DIM, DIM, |a, b| v[a * DIM + b].clone())).collect()
}

/// The twenty connections `E_A (x) theta^m`, lowered.
pub fn gl2_tensor_r5_basis() -> Vec<(KernelPart, ConnectionCoeffs<BigRational>)> {
    let gens = rep_generators(DIM).expect("five-dimensional generators");
    let mut out = Vec::new();
    for (a, e) in gens.all().into_iter().enumerate() {
        for m in 0..DIM {
            let mut upper = vec![int(0); N3];
            for l in 0..DIM {
                for k in 0..DIM {
                    upper[idx3(l, k, m)] = e.get(l, k).clone();
                }
            }
            out.push((KernelPart::Gl2 { generator: a, slot: m }, ConnectionCoeffs::from_upper(&upper)));
        }
    }
    out
}

/// The ten unit three-forms as connections `Gamma_ijk = T_ijk`.
pub fn lambda3_connections() -> Vec<(KernelPart, ConnectionCoeffs<BigRational>)> {
    let mut out = Vec::new();
    for a in 0..DIM {
        for b in a + 1..DIM {
            for c in b + 1..DIM {
                let t = ConnectionCoeffs::from_fn(|i, j, k| {
                    let mut s = [i, j, k];
                    let sign = permutation_sign(&s);
                    s.sort_unstable();
                    if sign != 0 && s == [a, b, c] {
                        int(sign as i64)
                    } else {
                        int(0)
                    }
                });
                out.push((KernelPart::ThreeForm { indices: [a, b, c] }, t));
            }
        }
    }
    out
}

fn flatten_s4<S: Scalar>(t: &CoeffTensor<S>) -> Vec<S> {
    sorted_index_tuples(4, DIM).iter().map(|i| t.get(i)).collect()
}

fn build_kernel() -> KernelBasis {
    let co = co32_basis();
    let mut columns: Vec<Vec<QSqrt3>> = Vec::new();
    for x in &co {
        for m in 0..DIM {
            let mut upper = vec![QSqrt3::zero_value(); N3];
            for l in 0..DIM {
                for k in 0..DIM {
                    upper[idx3(l, k, m)] = QSqrt3::from_rational(x.get(l, k));
                }
            }
            columns.push(flatten_s4(&upsilon_bar(&upper)));
        }
    }
    let ambient_dim = columns.len();
    let rows = columns[0].len();
    let system = Matrix::from_fn(rows, ambient_dim, |r, c| columns[c][r].clone());
    let dimension = system.nullspace().len();

    let mut basis = gl2_tensor_r5_basis();
    basis.extend(lambda3_connections());
    let in_kernel = basis.iter().all(|(_, c)| upsilon_bar(&c.lift::<QSqrt3>().to_upper()).is_zero());
    let stacked = Matrix::from_rows(basis.iter().map(|(_, c)| c.as_slice().to_vec()).collect());
    let tagged_basis_spans = in_kernel && stacked.rank() == basis.len() && basis.len() == dimension;
    KernelBasis { ambient_dim, dimension, basis, tagged_basis_spans }
}

/// The kernel of `Upsilon-bar`, computed once.
pub fn upsilon_bar_kernel() -> &'static KernelBasis {
    static K: OnceLock<KernelBasis> = OnceLock::new();
    K.get_or_init(build_kernel)
}

/// Coordinates of a lowered connection in the tagged kernel basis together
/// with the residual of the fit.
pub fn connection_in_kernel_basis<S: Scalar>(c: &ConnectionCoeffs<S>) -> (Vec<S>, f64) {
    static PINV: OnceLock<Matrix<BigRational>> = OnceLock::new();
    let kernel = upsilon_bar_kernel();
    let pinv = PINV.get_or_init(|| {
        let b = Matrix::from_fn(N3, kernel.basis.len(), |r, col| kernel.basis[col].1.as_slice()[r].clone());
        b.pseudo_inverse().expect("kernel basis has full rank")
    });
    let coords: Vec<S> = (0..pinv.rows())
        .map(|r| (0..N3).fold(S::zero_value(), |acc, k| acc.plus(&c.as_slice()[k].scaled(pinv.get(r, k)))))
        .collect();
    let mut fitted = ConnectionCoeffs::zeros();
    for (x, (_, b)) in coords.iter().zip(&kernel.basis) {
        fitted = fitted.add(&b.lift::<S>().scale(x));
    }
    let residual = fitted.sub(c).max_magnitude();
    (coords, residual)
}

/// The split `W-Gamma_ijk = Gamma_ijk + 1/2 T_ijk` of a Weyl connection in the
/// kernel into a `gl(2,R)`-valued part and a totally skew torsion.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylSplit<S> {
    pub gamma: ConnectionCoeffs<S>,
    pub torsion: ConnectionCoeffs<S>,
    /// Max-abs value of `Upsilon-bar` on the input.
    pub residual: f64,
}

pub fn weyl_split<S: Sqrt3Scalar>(wgamma: &ConnectionCoeffs<S>, tol: f64) -> Result<WeylSplit<S>, TensorError> {
    let residual = upsilon_bar(&wgamma.to_upper()).max_magnitude();
    if residual > tol {
        return Err(TensorError::NotInKernel(residual));
    }
    let (coords, fit) = connection_in_kernel_basis(wgamma);
    if fit > tol {
        return Err(TensorError::NotInKernel(fit));
    }
    let mut gamma = ConnectionCoeffs::zeros();
    let mut skew = ConnectionCoeffs::zeros();
    for (x, (part, b)) in coords.iter().zip(&upsilon_bar_kernel().basis) {
        let term = b.lift::<S>().scale(x);
        match part {
            KernelPart::Gl2 { .. } => gamma = gamma.add(&term),
            KernelPart::ThreeForm { .. } => skew = skew.add(&term),
        }
    }
    Ok(WeylSplit { gamma, torsion: skew.scale(&S::from_i64(2)), residual })
}
