//! Dense matrices over any [`Scalar`] with pivoted elimination.

use std::fmt;

use super::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero_value(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one_value() } else { S::zero_value() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = S::zero_value();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_value() {
                    continue;
                }
                acc = acc.plus(&a.times(o.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero_value();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero_value() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn scale(&self, k: &S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.times(k)).collect() }
    }

    /// Matrix commutator `self·o − o·self`.
    pub fn commutator(&self, o: &Matrix<S>) -> Matrix<S> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero_value();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero_value)
    }

    /// Largest entry magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let v = self.get(r, col);
            if v.is_zero_value() {
                continue;
            }
            let m = v.magnitude();
            if best.map_or(true, |(_, bm)| m > bm) {
                best = Some((r, m));
            }
        }
        best.map(|(r, _)| r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self · X = rhs` for square `self`; `None` if singular.
    pub fn solve_matrix(&self, rhs: &Matrix<S>) -> Option<Matrix<S>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let p = a.pivot_row(col, col)?;
            a.swap_rows(col, p);
            b.swap_rows(col, p);
            let inv = a.get(col, col).recip()?;
            for r in col + 1..n {
                let f = a.get(r, col).times(&inv);
                if f.is_zero_value() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j).minus(&f.times(a.get(col, j)));
                    a.set(r, j, v);
                }
                for j in 0..m {
                    let v = b.get(r, j).minus(&f.times(b.get(col, j)));
                    b.set(r, j, v);
                }
            }
        }
        let mut x = Matrix::zeros(n, m);
        for j in 0..m {
            for i in (0..n).rev() {
                let mut acc = b.get(i, j).clone();
                for k in i + 1..n {
                    acc = acc.minus(&a.get(i, k).times(x.get(k, j)));
                }
                x.set(i, j, acc.divided(a.get(i, i))?);
            }
        }
        Some(x)
    }

    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        let b = Matrix::from_fn(rhs.len(), 1, |i, _| rhs[i].clone());
        self.solve_matrix(&b).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        self.solve_matrix(&Matrix::identity(self.rows))
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one_value();
        for col in 0..n {
            let Some(p) = a.pivot_row(col, col) else { return S::zero_value() };
            if p != col {
                a.swap_rows(col, p);
                det = det.negated();
            }
            let pivot = a.get(col, col).clone();
            det = det.times(&pivot);
            let inv = pivot.recip().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a.get(r, col).times(&inv);
                if f.is_zero_value() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j).minus(&f.times(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Reduced row echelon form with exact zero tests; returns pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = a.pivot_row(col, row) else { continue };
            a.swap_rows(row, p);
            let inv = a.get(row, col).recip().expect("nonzero pivot");
            for j in col..self.cols {
                let v = a.get(row, j).times(&inv);
                a.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero_value() {
                    continue;
                }
                for j in col..self.cols {
                    let v = a.get(r, j).minus(&f.times(a.get(row, j)));
                    a.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero_value(); self.cols];
                v[f] = S::one_value();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).negated();
                }
                v
            })
            .collect()
    }

    /// Least-squares solution of `self·x ≈ rhs` through the normal equations,
    /// together with the residual vector `self·x − rhs`.
    pub fn least_squares(&self, rhs: &[S]) -> Option<(Vec<S>, Vec<S>)> {
        let at = self.transpose();
        let normal = at.mul(self);
        let x = normal.solve(&at.mul_vec(rhs))?;
        let fitted = self.mul_vec(&x);
        let residual = fitted.iter().zip(rhs).map(|(a, b)| a.minus(b)).collect();
        Some((x, residual))
    }

    /// Left pseudo-inverse `(AᵀA)⁻¹Aᵀ` of a matrix with full column rank.
    pub fn pseudo_inverse(&self) -> Option<Matrix<S>> {
        let at = self.transpose();
        at.mul(self).solve_matrix(&at)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_rational::BigRational;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
    }

    #[test]
    fn solve_inverse_determinant() {
        let a = q(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.determinant(), int(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        let x = a.solve(&[int(1), int(2), int(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(1), int(2), int(3)]);
    }

    #[test]
    fn nullspace_and_rank() {
        let a = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|v| v == &int(0)));
    }

    #[test]
    fn least_squares_consistent_system() {
        let a = q(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let (x, r) = a.least_squares(&[int(1), int(2), int(3)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        assert!(r.iter().all(|v| v == &int(0)));
        let (x, _) = a.least_squares(&[int(0), int(0), int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 3)]);
    }
}
