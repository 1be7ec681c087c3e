//! The nine-dimensional bundle of a fifth-order Wünschmann equation: canonical
//! coframe, frame connection, characteristic connection and the pointwise
//! verification of their structural equations.

mod alphas;
mod curvature;
pub mod forms;

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Assignment, EvalError, Evaluator, Expr, Symbol, ZeroTestConfig};
use crate::gl2::rep_generators;
use crate::jetode::check_wunschmann;
use crate::parse::{jet_symbol, OdeSpec};
use crate::scalar::{digits_to_bits, rat, Dual, Matrix, Number, Real, Scalar};
use crate::tensoralg::{lambda3_basis, metric};

pub use alphas::AlphaSet;
pub use curvature::{curvature_design_rank, extract_curvature, CurvatureReport, CURVATURE_UNKNOWNS};
pub use forms::{DifferentialForm, CHART_DIM, COORDINATES};

/// Connection components in the order of [`crate::gl2::Generators::all`].
pub const CONNECTION_NAMES: [&str; 4] = ["minus", "plus", "zero", "one"];
pub(crate) const MINUS: usize = 0;
pub(crate) const PLUS: usize = 1;
pub(crate) const ZERO: usize = 2;
pub(crate) const ONE: usize = 3;

/// Default relative tolerance for residuals.
pub const DEFAULT_TOL: f64 = 1e-40;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("the frame is defined for fifth-order equations, got order {0}")]
    Order(usize),
    #[error("Wünschmann conditions {failed:?} do not vanish")]
    WunschmannViolated { failed: Vec<usize> },
    #[error("Wünschmann conditions could not be decided: {0}")]
    WunschmannInconclusive(String),
    #[error("correction solve failed: {0}")]
    SolveFailed(String),
    #[error("singular chart point: {0}")]
    SingularPoint(String),
    #[error("ill-conditioned curvature system: {0}")]
    IllConditioned(String),
    #[error("invalid chart point: {0}")]
    InvalidPoint(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `(i, j, k, coefficient, t)`: a term `coefficient * t_{t+1} theta^j ^ theta^k`
/// of `d theta^i`.
pub(crate) type TorsionEntry = (usize, usize, usize, (i64, i64), usize);

/// Torsion of the frame connection.
pub(crate) const FRAME_TORSION: &[TorsionEntry] = &[
    (0, 0, 1, (1, 1), 0),
    (0, 0, 2, (1, 1), 1),
    (0, 0, 3, (1, 1), 2),
    (1, 0, 2, (1, 2), 0),
    (1, 0, 3, (1, 3), 1),
    (1, 0, 4, (1, 4), 2),
    (1, 1, 2, (1, 1), 1),
    (1, 1, 3, (1, 1), 2),
    (2, 0, 3, (2, 9), 0),
    (2, 0, 4, (1, 18), 1),
    (2, 1, 2, (1, 3), 0),
    (2, 1, 3, (8, 9), 1),
    (2, 1, 4, (2, 3), 2),
    (2, 2, 3, (1, 1), 2),
    (3, 0, 4, (1, 12), 0),
    (3, 1, 3, (1, 3), 0),
    (3, 1, 4, (1, 3), 1),
    (3, 2, 3, (1, 1), 1),
    (3, 2, 4, (3, 2), 2),
    (4, 1, 4, (1, 3), 0),
    (4, 2, 4, (1, 1), 1),
    (4, 3, 4, (3, 1), 2),
];

/// Torsion of the characteristic connection.
pub(crate) const CHARACTERISTIC_TORSION: &[TorsionEntry] = &[
    (0, 0, 1, (-1, 3), 0),
    (0, 0, 2, (-1, 3), 1),
    (0, 0, 3, (-1, 1), 2),
    (0, 1, 2, (2, 1), 2),
    (1, 0, 2, (-1, 6), 0),
    (1, 0, 4, (-1, 4), 2),
    (1, 1, 2, (-2, 3), 1),
    (2, 0, 3, (-1, 9), 0),
    (2, 0, 4, (1, 18), 1),
    (2, 1, 3, (-4, 9), 1),
    (2, 1, 4, (-1, 3), 2),
    (3, 0, 4, (-1, 12), 0),
    (3, 2, 3, (-2, 3), 1),
    (3, 2, 4, (-1, 2), 2),
    (4, 1, 4, (-1, 3), 0),
    (4, 2, 3, (2, 3), 0),
    (4, 2, 4, (-1, 3), 1),
    (4, 3, 4, (-1, 1), 2),
];

/// `(connection, m, coefficient, t)`: the characteristic connection adds
/// `coefficient * t_{t+1} theta^m` to the frame connection component.
pub(crate) const CHARACTERISTIC_SHIFT: &[(usize, usize, (i64, i64), usize)] = &[
    (PLUS, 0, (-1, 6), 0),
    (PLUS, 1, (-1, 3), 1),
    (PLUS, 2, (-1, 2), 2),
    (MINUS, 2, (1, 6), 0),
    (MINUS, 3, (1, 3), 1),
    (MINUS, 4, (1, 2), 2),
    (ZERO, 1, (-1, 6), 0),
    (ZERO, 2, (-1, 3), 1),
    (ZERO, 3, (-1, 2), 2),
];

/// Components `T^i_jk` (`j < k`) of a torsion table for the given `t` values.
pub(crate) fn torsion_components<S: Scalar>(table: &[TorsionEntry], t: &[S; 3]) -> Vec<Vec<Vec<S>>> {
    let mut out = vec![vec![vec![S::zero_value(); 5]; 5]; 5];
    for &(i, j, k, (n, d), ti) in table {
        let v = t[ti].scaled(&rat(n, d));
        out[i][j][k] = out[i][j][k].plus(&v);
        out[i][k][j] = out[i][k][j].minus(&v);
    }
    out
}

/// Generators `E_A` of the five-dimensional representation.
pub(crate) fn generators() -> &'static [Matrix<BigRational>; 4] {
    static GENS: OnceLock<[Matrix<BigRational>; 4]> = OnceLock::new();
    GENS.get_or_init(|| {
        let g = rep_generators(5).expect("dimension 5 is valid");
        [g.minus, g.plus, g.zero, g.one]
    })
}

/// Which branch the correction solve took.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SolveBranch {
    /// The frame equations alone fix all fifteen corrections.
    Determined,
    /// The frame equations leave `15 - rank` corrections free; they are set to zero.
    Underdetermined { rank: usize },
}

/// The coframe and connections of a fifth-order equation on its nine-dimensional chart.
#[derive(Debug)]
pub struct FrameBundle {
    pub spec: OdeSpec,
    pub alphas: AlphaSet,
    /// `theta^0, ..., theta^4`.
    pub theta: Vec<DifferentialForm>,
    /// Frame connection in the order of [`CONNECTION_NAMES`]; `Gamma_+ = theta_+`.
    pub connection: Vec<DifferentialForm>,
    /// Characteristic connection in the same order.
    pub characteristic: Vec<DifferentialForm>,
    /// Torsion coefficients `t1, t2, t3`.
    pub torsion: [Expr; 3],
    /// `theta^m` coefficients added to the connection modulo `theta^i`, per component.
    pub corrections: Vec<Vec<Expr>>,
    pub branch: SolveBranch,
    d_theta: Vec<DifferentialForm>,
    d_characteristic: OnceLock<Vec<DifferentialForm>>,
    d_torsion: OnceLock<Vec<DifferentialForm>>,
    d_connection: OnceLock<Vec<DifferentialForm>>,
}

fn sym(name: &str) -> Expr {
    Expr::symbol(name)
}

fn q(n: i64, d: i64) -> Expr {
    Expr::rational(n, d)
}

/// `omega^k` for `k = 0..4` and `omega_+ = dx`.
fn contact_forms(spec: &OdeSpec) -> Vec<DifferentialForm> {
    let mut out = Vec::with_capacity(6);
    for k in 0..5 {
        let next = if k < 4 { Expr::from_symbol(&jet_symbol(k + 1)) } else { spec.f.clone() };
        out.push(DifferentialForm::one_form([(k + 1, Expr::one()), (0, next.scale(&-BigRational::one()))]));
    }
    out.push(DifferentialForm::differential(0));
    out
}

/// Inverse of a lower-triangular matrix of expressions.
fn lower_inverse(a: &[Vec<Expr>]) -> Vec<Vec<Expr>> {
    let n = a.len();
    let mut inv = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        let diag = a[i][i].recip();
        inv[i][i] = diag.clone();
        for j in 0..i {
            let acc = Expr::sum((j..i).map(|k| Expr::product([a[i][k].clone(), inv[k][j].clone()])));
            inv[i][j] = Expr::product([acc, diag.clone()]).scale(&-BigRational::one());
        }
    }
    inv
}

/// The matrix of the correction system: row `(i, j<k)`, column `(component, m)`.
pub(crate) fn correction_matrix() -> (Matrix<BigRational>, Vec<(usize, usize, usize)>, Vec<(usize, usize)>) {
    let gens = generators();
    let columns: Vec<(usize, usize)> = [MINUS, ZERO, ONE].iter().flat_map(|&a| (0..5).map(move |m| (a, m))).collect();
    let mut rows = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            for k in j + 1..5 {
                rows.push((i, j, k));
            }
        }
    }
    let m = Matrix::from_fn(rows.len(), columns.len(), |r, c| {
        let (i, j, k) = rows[r];
        let (a, m) = columns[c];
        let e = &gens[a];
        let mut v = BigRational::zero();
        if m == j {
            v += e.get(i, k);
        }
        if m == k {
            v -= e.get(i, j);
        }
        v
    });
    (m, rows, columns)
}

/// Assembles the bundle without checking the Wünschmann conditions.
pub fn assemble_frame(spec: &OdeSpec) -> Result<FrameBundle, FrameError> {
    if spec.order != 5 {
        return Err(FrameError::Order(spec.order));
    }
    let alphas = alphas::instantiate(spec);
    let omega = contact_forms(spec);
    let a = |i: usize, j: usize| alphas.alpha(i, j);

    let theta: Vec<DifferentialForm> = (0..5)
        .map(|i| (0..=i).fold(DifferentialForm::zero(1), |acc, j| acc.add(&omega[j].scale(&a(i, j)))))
        .collect();
    let theta_plus = omega[0].scale(&a(5, 0)).add(&omega[1].scale(&a(5, 1))).add(&omega[5].scale(&sym("a55")));

    let (a10, a11, a55) = (sym("a10"), sym("a11"), sym("a55"));
    let da = |i: usize| DifferentialForm::differential(i);
    let cp = &alphas.connection_plus;
    let minus_mod = da(6)
        .scale(&Expr::product([q(1, 4), a11.recip(), a55.recip()]))
        .add(&da(7).scale(&Expr::product([q(-1, 4), a10.clone(), a11.powi(-2), a55.recip()])))
        .add(&theta_plus.scale(&cp[0]));
    let zero_mod = da(8).scale(&Expr::product([q(1, 2), a55.recip()])).add(&theta_plus.scale(&cp[1]));
    let one_mod = da(7)
        .scale(&Expr::product([q(1, 4), a11.recip()]))
        .add(&da(8).scale(&Expr::product([q(-1, 4), a55.recip()])))
        .add(&theta_plus.scale(&cp[2]));

    let d_theta: Vec<DifferentialForm> = theta.iter().map(DifferentialForm::d).collect();

    // Dual vectors of theta^j along the jet directions, annihilated by theta_+.
    let amat: Vec<Vec<Expr>> = (0..5).map(|i| (0..5).map(|j| if j <= i { a(i, j) } else { Expr::zero() }).collect()).collect();
    let ainv = lower_inverse(&amat);
    let duals: Vec<Vec<Expr>> = (0..5)
        .map(|j| {
            let v: Vec<Expr> = (0..5).map(|k| ainv[k][j].clone()).collect();
            let vx = Expr::product([
                Expr::sum([Expr::product([a(5, 0), v[0].clone()]), Expr::product([a(5, 1), v[1].clone()])]),
                a55.recip(),
            ])
            .scale(&-BigRational::one());
            let mut comps = vec![Expr::zero(); CHART_DIM];
            comps[0] = vx.clone();
            for k in 0..5 {
                let next = if k < 4 { Expr::from_symbol(&jet_symbol(k + 1)) } else { spec.f.clone() };
                comps[k + 1] = Expr::sum([v[k].clone(), Expr::product([next, vx.clone()])]);
            }
            comps
        })
        .collect();

    let torsion = alphas.torsion.clone();
    let target = torsion_components(FRAME_TORSION, &torsion);
    let (mmat, rows, columns) = correction_matrix();
    let rhs: Vec<Expr> = rows
        .par_iter()
        .map(|&(i, j, k)| {
            let r = Expr::sum([d_theta[i].pair(&duals[j], &duals[k]), target[i][j][k].scale(&-BigRational::one())]);
            r.scale(&-BigRational::one())
        })
        .collect();
    let rank = mmat.rank();
    let solution: Vec<Expr> = if rank == columns.len() {
        let pinv = mmat.pseudo_inverse().ok_or_else(|| FrameError::SolveFailed("normal equations are singular".into()))?;
        (0..columns.len())
            .map(|c| Expr::sum((0..rows.len()).filter(|&r| !pinv.get(c, r).is_zero()).map(|r| rhs[r].scale(pinv.get(c, r)))))
            .collect()
    } else {
        // Particular solution with the free columns set to zero.
        let (_, pivots) = mmat.rref();
        let sub = Matrix::from_fn(rows.len(), pivots.len(), |r, c| mmat.get(r, pivots[c]).clone());
        let pinv = sub.pseudo_inverse().ok_or_else(|| FrameError::SolveFailed("pivot columns are dependent".into()))?;
        let mut sol = vec![Expr::zero(); columns.len()];
        for (c, &p) in pivots.iter().enumerate() {
            sol[p] = Expr::sum((0..rows.len()).filter(|&r| !pinv.get(c, r).is_zero()).map(|r| rhs[r].scale(pinv.get(c, r))));
        }
        sol
    };
    let branch = if rank == columns.len() { SolveBranch::Determined } else { SolveBranch::Underdetermined { rank } };

    let mut corrections = vec![vec![Expr::zero(); 5]; 4];
    for (c, &(comp, m)) in columns.iter().enumerate() {
        corrections[comp][m] = solution[c].clone();
    }
    let mut connection = vec![DifferentialForm::zero(1); 4];
    connection[PLUS] = theta_plus;
    for (comp, base) in [(MINUS, minus_mod), (ZERO, zero_mod), (ONE, one_mod)] {
        connection[comp] =
            (0..5).fold(base, |acc, m| acc.add(&theta[m].scale(&corrections[comp][m])));
    }

    let mut characteristic = connection.clone();
    for &(comp, m, (n, d), ti) in CHARACTERISTIC_SHIFT {
        characteristic[comp] = characteristic[comp].add(&theta[m].scale(&torsion[ti].scale(&rat(n, d))));
    }

    Ok(FrameBundle {
        spec: spec.clone(),
        alphas,
        theta,
        connection,
        characteristic,
        torsion,
        corrections,
        branch,
        d_theta,
        d_characteristic: OnceLock::new(),
        d_torsion: OnceLock::new(),
        d_connection: OnceLock::new(),
    })
}

/// Builds the bundle of a fifth-order equation satisfying the Wünschmann conditions.
pub fn build_coframe(spec: &OdeSpec, cfg: &ZeroTestConfig) -> Result<FrameBundle, FrameError> {
    if spec.order != 5 {
        return Err(FrameError::Order(spec.order));
    }
    let report = check_wunschmann(spec, cfg).map_err(|e| FrameError::WunschmannInconclusive(e.to_string()))?;
    let failed: Vec<usize> =
        report.verdicts.iter().enumerate().filter(|(_, v)| v.is_nonzero()).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        return Err(FrameError::WunschmannViolated { failed });
    }
    if let Some(v) = report.verdicts.iter().find(|v| v.is_inconclusive()) {
        return Err(FrameError::WunschmannInconclusive(format!("{:?}", v.kind)));
    }
    assemble_frame(spec)
}

impl FrameBundle {
    /// `d theta^i`.
    pub fn d_theta(&self) -> &[DifferentialForm] {
        &self.d_theta
    }

    /// Exterior derivatives of the characteristic connection.
    pub fn d_characteristic(&self) -> &[DifferentialForm] {
        self.d_characteristic.get_or_init(|| self.characteristic.par_iter().map(DifferentialForm::d).collect())
    }

    /// `d t1, d t2, d t3`.
    pub fn d_torsion(&self) -> &[DifferentialForm] {
        self.d_torsion
            .get_or_init(|| self.torsion.iter().map(|t| DifferentialForm::function(t.clone()).d()).collect())
    }

    /// Exterior derivatives of the frame connection.
    pub fn d_connection(&self) -> &[DifferentialForm] {
        self.d_connection.get_or_init(|| self.connection.par_iter().map(DifferentialForm::d).collect())
    }

    /// The coframe `(theta^0..theta^4, minus, plus, zero, one)` for a connection.
    pub fn coframe<'a>(&'a self, connection: &'a [DifferentialForm]) -> Vec<&'a DifferentialForm> {
        self.theta.iter().chain(connection.iter()).collect()
    }
}

/// A point of the chart: `x, y, y1..y4, a10, a11, a55`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartPoint {
    #[serde(serialize_with = "serialize_rationals")]
    pub coords: Vec<BigRational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&q.to_string())?;
    }
    seq.end()
}

impl ChartPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<ChartPoint, FrameError> {
        if coords.len() != CHART_DIM {
            return Err(FrameError::InvalidPoint(format!("expected {CHART_DIM} coordinates, got {}", coords.len())));
        }
        if coords[7].is_zero() || coords[8].is_zero() {
            return Err(FrameError::InvalidPoint("a11 and a55 must be nonzero".into()));
        }
        Ok(ChartPoint { coords })
    }

    pub fn from_ratios(values: &[(i64, i64)]) -> Result<ChartPoint, FrameError> {
        ChartPoint::new(values.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn assignment(&self) -> Assignment<Number> {
        COORDINATES.iter().zip(&self.coords).map(|(n, v)| (Symbol::new(n), Number::exact(v.clone()))).collect()
    }

    /// The coordinates as floating-point numbers of `digits` significant digits.
    pub fn approximate_assignment(&self, digits: usize) -> Assignment<Number> {
        let bits = digits_to_bits(digits);
        COORDINATES
            .iter()
            .zip(&self.coords)
            .map(|(n, v)| (Symbol::new(n), Number::Approx(Real::from_rational(v, bits))))
            .collect()
    }
}

/// Values of the coframe and its derivatives at one point.
pub(crate) struct PointEval<'a> {
    pub ev: Evaluator<'a, Number>,
}

impl<'a> PointEval<'a> {
    pub fn new(env: &'a Assignment<Number>, digits: usize) -> Self {
        PointEval { ev: Evaluator::new(env, digits_to_bits(digits)) }
    }

    pub fn scalar(&mut self, e: &Expr) -> Result<Number, EvalError> {
        self.ev.eval(e)
    }

    pub fn one_form(&mut self, f: &DifferentialForm) -> Result<Vec<Number>, EvalError> {
        let mut out = vec![Number::zero(); CHART_DIM];
        for (idx, c) in f.terms() {
            out[idx[0]] = self.ev.eval(c)?;
        }
        Ok(out)
    }

    pub fn two_form(&mut self, f: &DifferentialForm) -> Result<Matrix<Number>, EvalError> {
        let mut out = Matrix::zeros(CHART_DIM, CHART_DIM);
        for (idx, c) in f.terms() {
            let v = self.ev.eval(c)?;
            out.set(idx[1], idx[0], v.negated());
            out.set(idx[0], idx[1], v);
        }
        Ok(out)
    }
}

pub(crate) fn wedge_numbers(a: &[Number], b: &[Number]) -> Matrix<Number> {
    Matrix::from_fn(a.len(), a.len(), |i, j| a[i].times(&b[j]).minus(&a[j].times(&b[i])))
}

/// The coframe matrix (rows are forms) and its inverse at a point.
pub(crate) fn frame_matrices(rows: &[Vec<Number>]) -> Result<(Matrix<Number>, Matrix<Number>), FrameError> {
    let c = Matrix::from_rows(rows.to_vec());
    let det = c.determinant();
    if det.is_zero_value() || det.magnitude() < 1e-30 {
        return Err(FrameError::SingularPoint(format!("coframe determinant {}", det.to_decimal_string(6))));
    }
    let inv = c.inverse().ok_or_else(|| FrameError::SingularPoint("coframe matrix is not invertible".into()))?;
    Ok((c, inv))
}

/// Components of a coordinate two-form in the coframe dual to `inv`.
pub(crate) fn to_frame(inv: &Matrix<Number>, w: &Matrix<Number>) -> Matrix<Number> {
    inv.transpose().mul(w).mul(inv)
}

pub(crate) fn max_magnitude(values: impl IntoIterator<Item = Number>) -> (f64, bool) {
    let mut worst = 0.0f64;
    let mut exact_zero = true;
    for v in values {
        if !(v.is_exact() && v.is_zero_value()) {
            exact_zero = false;
        }
        worst = worst.max(v.magnitude());
    }
    (worst, exact_zero)
}

/// Residuals of the structural equations at one point.
#[derive(Clone, Debug, Serialize)]
pub struct PointResidual {
    pub point: ChartPoint,
    /// Largest component of the frame-connection equations in the coframe basis.
    pub frame: f64,
    /// Largest component of the characteristic-connection equations.
    pub characteristic: f64,
    /// Failure of total skew symmetry of the lowered characteristic torsion.
    pub torsion_skew: f64,
    /// Distance of the torsion three-form from the span of the `*Lambda_3` basis.
    pub torsion_projection: f64,
    /// Difference between the torsion three-form and its closed form in `t1, t2, t3`.
    pub torsion_closed_form: f64,
    /// Largest coframe component of `d theta^i`, used as the residual scale.
    pub scale: f64,
    /// All residuals vanished in exact arithmetic.
    pub exact: bool,
}

impl PointResidual {
    pub fn worst(&self) -> f64 {
        [self.frame, self.characteristic, self.torsion_skew, self.torsion_projection, self.torsion_closed_form]
            .into_iter()
            .fold(0.0, f64::max)
            / self.scale.max(1.0)
    }
}

/// Summary of [`verify_structural`].
#[derive(Clone, Debug, Serialize)]
pub struct StructuralReport {
    pub points: Vec<PointResidual>,
    pub skipped: Vec<(ChartPoint, String)>,
    pub max_residual: f64,
    pub all_exact: bool,
    pub tol: f64,
    pub digits: usize,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && (self.all_exact || self.max_residual < self.tol)
    }
}

fn structural_residual(
    fb: &FrameBundle,
    pe: &mut PointEval,
    connection: &[DifferentialForm],
    table: &[TorsionEntry],
    t: &[Number; 3],
    d_theta: &[Matrix<Number>],
) -> Result<(Vec<Matrix<Number>>, f64, bool, f64), FrameError> {
    let theta: Vec<Vec<Number>> = fb.theta.iter().map(|f| pe.one_form(f)).collect::<Result<_, _>>()?;
    let conn: Vec<Vec<Number>> = connection.iter().map(|f| pe.one_form(f)).collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Number>> = theta.iter().chain(conn.iter()).cloned().collect();
    let (_, inv) = frame_matrices(&rows)?;
    let gens = generators();
    let tors = torsion_components(table, t);
    let mut frame_parts = Vec::with_capacity(5);
    let mut worst = 0.0f64;
    let mut exact = true;
    let mut scale = 0.0f64;
    for i in 0..5 {
        let mut res = d_theta[i].clone();
        for (a, e) in gens.iter().enumerate() {
            for l in 0..5 {
                let c = e.get(i, l);
                if c.is_zero() {
                    continue;
                }
                res = res.add(&wedge_numbers(&conn[a], &theta[l]).scale(&Number::exact(c.clone())));
            }
        }
        for j in 0..5 {
            for k in j + 1..5 {
                if !tors[i][j][k].is_zero_value() {
                    res = res.sub(&wedge_numbers(&theta[j], &theta[k]).scale(&tors[i][j][k]));
                }
            }
        }
        let framed = to_frame(&inv, &res);
        let (w, ex) = max_magnitude(framed.entries().iter().cloned());
        worst = worst.max(w);
        exact &= ex;
        let dt = to_frame(&inv, &d_theta[i]);
        scale = scale.max(max_magnitude(dt.entries().iter().cloned()).0);
        frame_parts.push(framed);
    }
    Ok((frame_parts, worst, exact, scale))
}

/// Lowered characteristic torsion `T_ijk = g_il T^l_jk`, where the torsion
/// two-form is `T^i = T^i_jk theta^j ^ theta^k` summed over all `j, k`.
pub(crate) fn lowered_torsion(t: &[Number; 3]) -> Vec<Vec<Vec<Number>>> {
    let half = [t[0].scaled(&rat(1, 2)), t[1].scaled(&rat(1, 2)), t[2].scaled(&rat(1, 2))];
    let tors = torsion_components(CHARACTERISTIC_TORSION, &half);
    let g = metric();
    let mut out = vec![vec![vec![Number::zero(); 5]; 5]; 5];
    for i in 0..5 {
        for l in 0..5 {
            let gil = g.get(i, l);
            if gil.is_zero() {
                continue;
            }
            for j in 0..5 {
                for k in 0..5 {
                    out[i][j][k] = out[i][j][k].plus(&tors[l][j][k].scaled(gil));
                }
            }
        }
    }
    out
}

/// Skew-symmetry defect, projection residual onto the `*Lambda_3` basis, and
/// difference from the closed form `(t1/12, t2/12, t3/4)` coordinates.
pub(crate) fn torsion_purity(t: &[Number; 3]) -> (f64, f64, f64, Vec<Number>) {
    let low = lowered_torsion(t);
    let mut skew = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                skew = skew.max(low[i][j][k].plus(&low[j][i][k]).magnitude());
                skew = skew.max(low[i][j][k].plus(&low[i][k][j]).magnitude());
            }
        }
    }
    let triples: Vec<[usize; 3]> =
        (0..5).flat_map(|i| (i + 1..5).flat_map(move |j| (j + 1..5).map(move |k| [i, j, k]))).collect();
    let basis = lambda3_basis();
    let design = Matrix::from_fn(triples.len(), 3, |r, c| Number::exact(basis[c].1.component(triples[r])));
    let rhs: Vec<Number> = triples.iter().map(|&[i, j, k]| low[i][j][k].clone()).collect();
    let (coeffs, residual) = design.least_squares(&rhs).expect("basis three-forms are independent");
    let projection = max_magnitude(residual).0;
    let expected = [t[0].scaled(&rat(1, 12)), t[1].scaled(&rat(1, 12)), t[2].scaled(&rat(1, 4))];
    let closed = max_magnitude(coeffs.iter().zip(&expected).map(|(a, b)| a.minus(b))).0;
    (skew, projection, closed, coeffs)
}

/// Checks the first structural equations of both connections at one point.
pub fn verify_point(fb: &FrameBundle, point: &ChartPoint, digits: usize) -> Result<PointResidual, FrameError> {
    let env = point.assignment();
    let mut pe = PointEval::new(&env, digits);
    let t = [pe.scalar(&fb.torsion[0])?, pe.scalar(&fb.torsion[1])?, pe.scalar(&fb.torsion[2])?];
    let d_theta: Vec<Matrix<Number>> = fb.d_theta.iter().map(|f| pe.two_form(f)).collect::<Result<_, _>>()?;
    let (_, frame, exact_frame, scale) =
        structural_residual(fb, &mut pe, &fb.connection, FRAME_TORSION, &t, &d_theta)?;
    let (_, characteristic, exact_char, _) =
        structural_residual(fb, &mut pe, &fb.characteristic, CHARACTERISTIC_TORSION, &t, &d_theta)?;
    let (torsion_skew, torsion_projection, torsion_closed_form, _) = torsion_purity(&t);
    let exact = exact_frame && exact_char && t.iter().all(Number::is_exact);
    Ok(PointResidual {
        point: point.clone(),
        frame,
        characteristic,
        torsion_skew,
        torsion_projection,
        torsion_closed_form,
        scale,
        exact,
    })
}

/// Checks the structural equations at every point; singular points are skipped and reported.
pub fn verify_structural(fb: &FrameBundle, points: &[ChartPoint], digits: usize, tol: f64) -> StructuralReport {
    let results: Vec<_> = points.par_iter().map(|p| (p.clone(), verify_point(fb, p, digits))).collect();
    let mut report =
        StructuralReport { points: Vec::new(), skipped: Vec::new(), max_residual: 0.0, all_exact: true, tol, digits };
    for (p, r) in results {
        match r {
            Ok(res) => {
                report.max_residual = report.max_residual.max(res.worst());
                report.all_exact &= res.exact;
                report.points.push(res);
            }
            Err(e) => report.skipped.push((p, e.to_string())),
        }
    }
    if report.points.is_empty() {
        report.all_exact = false;
    }
    report
}

/// Draws regular chart points: jet coordinates on a grid in `[1/2, 5/2]`,
/// `a10` in `[-3/2, 3/2]`, `a11` and `a55` of either sign with magnitude in
/// `[1/2, 2]`. Points where any denominator of the frame is within `1e-3` of
/// zero, or where evaluation fails, are rejected.
pub fn sample_points(fb: &FrameBundle, count: usize, seed: u64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| rat(rng.gen_range(lo..=hi), 64);
    let probes: Vec<&Expr> = fb
        .theta
        .iter()
        .chain(fb.connection.iter())
        .flat_map(|f| f.terms().map(|(_, c)| c))
        .chain(fb.torsion.iter())
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let mut coords: Vec<BigRational> = (0..6).map(|_| grid(&mut rng, 32, 160)).collect();
        coords.push(grid(&mut rng, -96, 96));
        for _ in 0..2 {
            let v = grid(&mut rng, 32, 128);
            coords.push(if rng.gen_bool(0.5) { v } else { -v });
        }
        let Ok(point) = ChartPoint::new(coords) else { continue };
        let env = point.assignment();
        let mut ev = Evaluator::<Number>::new(&env, digits_to_bits(30));
        let ok = probes.iter().all(|e| ev.eval(e).is_ok());
        if ok && ev.stats.min_denominator >= 1e-3 {
            out.push(point);
        }
    }
    out
}

/// Evaluates the symbolic torsion coefficients at a point.
pub fn torsion_at(fb: &FrameBundle, point: &ChartPoint, digits: usize) -> Result<[Number; 3], FrameError> {
    let env = point.assignment();
    let mut pe = PointEval::new(&env, digits);
    Ok([pe.scalar(&fb.torsion[0])?, pe.scalar(&fb.torsion[1])?, pe.scalar(&fb.torsion[2])?])
}

/// `d d theta^i` and `d d Gamma_A` at a point: the coefficients of `d theta^i`
/// and `d Gamma_A` are differentiated in forward mode and antisymmetrized.
/// Returns the largest component relative to the largest gradient entry, and
/// whether every component vanished exactly. With `exact` false the point is
/// evaluated in floating point of `digits` digits.
pub fn d_squared_at(fb: &FrameBundle, point: &ChartPoint, digits: usize, exact: bool) -> Result<(f64, bool), FrameError> {
    let base = if exact { point.assignment() } else { point.approximate_assignment(digits) };
    let env: Assignment<Dual<Number>> = COORDINATES
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let s = Symbol::new(n);
            let v = base[&s].clone();
            (s, Dual::variable(v, i, CHART_DIM))
        })
        .collect();
    let mut ev = Evaluator::<Dual<Number>>::new(&env, digits_to_bits(digits));
    let mut components = Vec::new();
    let mut scale = 1.0f64;
    for form in fb.d_theta.iter().chain(fb.d_connection().iter()) {
        let mut grads: std::collections::HashMap<(usize, usize), Dual<Number>> = std::collections::HashMap::new();
        for (idx, c) in form.terms() {
            let v = ev.eval(c)?;
            scale = scale.max(v.grad.iter().map(Number::magnitude).fold(0.0, f64::max));
            grads.insert((idx[0], idx[1]), v);
        }
        let partial = |a: usize, b: usize, k: usize| grads.get(&(a, b)).map(|d| d.partial(k)).unwrap_or_else(Number::zero);
        for i in 0..CHART_DIM {
            for j in i + 1..CHART_DIM {
                for l in j + 1..CHART_DIM {
                    components.push(partial(j, l, i).minus(&partial(i, l, j)).plus(&partial(i, j, l)));
                }
            }
        }
    }
    let (worst, exact_zero) = max_magnitude(components);
    Ok(if exact_zero { (0.0, true) } else { (worst / scale, false) })
}
