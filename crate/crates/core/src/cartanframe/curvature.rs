//! Pointwise extraction of the curvature coefficients of the characteristic
//! connection and the algebraic cross-checks they must satisfy.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use super::{
    frame_matrices, generators, max_magnitude, to_frame, ChartPoint, FrameBundle, FrameError, PointEval, MINUS, ONE,
    PLUS, ZERO,
};
use crate::expr::{Expr, Symbol};
use crate::parse::parse_expr;
use crate::scalar::{rat, Matrix, Number, Scalar, Sqrt3Scalar};
use crate::tensoralg::{inverse_metric, ricci_split, ricci_vector_from_torsion, TwoTensor};

/// The sixteen curvature functions followed by the two free slots of
/// `d Pi_-` along `theta^2 ^ theta^4` and `theta^3 ^ theta^4`.
pub const CURVATURE_UNKNOWNS: [&str; 18] = [
    "a1", "a2", "a3", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "c1", "c2", "c3", "c4", "c5", "R", "X1", "X2",
];

/// `theta^j ^ theta^k` coefficients of `d Pi_A` beyond its quadratic part, per component.
const CURVATURE_TEMPLATES: [(usize, [&str; 10]); 4] = [
    (
        PLUS,
        [
            "b2/6 - t1^2/81 + 5*c5/3",
            "-2*t1*t2/81 - 10*c4/3 + 5*b3/12",
            "-t2^2/243 - t1*t3/162 + 10*c3/3 - R/30 + b4 - a2/4",
            "t2*t3/54 - a3/8 - 5*c2/3 + b5/12",
            "-t2^2/27 - t1*t3/18 + R/10 + 2*b4 + 3*a2/4",
            "-t2*t3/9 + a3/4 + 2*b5/3",
            "t3^2/18 + 5*c1/3 + b6/6",
            "-5*t3^2/18 - 10*c1/3 + b6/3",
            "b7/4",
            "0",
        ],
    ),
    (
        MINUS,
        [
            "0",
            "b1/4",
            "b2/6 - t1^2/162 - 5*c5/3",
            "-t1*t2/162 + 5*c4/3 + b3/12 - a1/8",
            "5*t1^2/162 + b2/3 + 10*c5/3",
            "t1*t2/27 + 2*b3/3 + a1/4",
            "b4 - a2/4 + t1*t3/162 + t2^2/243 - 10*c3/3 + R/30",
            "t2^2/27 + t1*t3/18 - R/10 + 2*b4 + 3*a2/4",
            "2*t2*t3/27 + 10*c2/3 + 5*b5/12 + X1",
            "t3^2/9 - 5*c1/3 + b6/6 + X2",
        ],
    ),
    (
        ZERO,
        [
            "-b1/4",
            "-b2/6 - t1^2/162 + 5*c5/6",
            "-t1*t2/54 - b3/12 + a1/8",
            "-(t1*t3/81 + 2*t2^2/243 + 5*c3/6 + R/60)",
            "t1*t2/162 - 20*c4/3 - b3/6 - 3*a1/8",
            "-t1*t3/81 - 2*t2^2/243 + 20*c3/3 + R/30",
            "-t2*t3/18 - a3/8 + b5/12",
            "t2*t3/54 + 3*a3/8 - 20*c2/3 + b5/6",
            "-t3^2/18 + 5*c1/6 + b6/6",
            "b7/4",
        ],
    ),
    (
        ONE,
        [
            "-b1/8",
            "-b2/8",
            "-(b3 + a1)/8",
            "-(b4 + a2)/8",
            "3*a1/8 - b3/4",
            "a2/4 - b4",
            "-(a3 + b5)/8",
            "3*a3/8 - b5/4",
            "-b6/8",
            "-b7/8",
        ],
    ),
];

/// `theta^m` coefficients of `d t1, d t2, d t3`.
const TORSION_DIFFERENTIAL_TEMPLATES: [[&str; 5]; 3] = [
    [
        "3*b1/2",
        "2*b2 - 4*t1^2/27 + 20*c5",
        "-4*t1*t2/9 - 60*c4 + 3*b3 - 9*a1/2",
        "-4*t1*t3/9 - 8*t2^2/27 + 60*c3 + 6*b4 - 9*a2",
        "-4*t2*t3/9 - 9*a3/2 - 20*c2 + b5/2",
    ],
    [
        "b2/2 + 2*t1^2/27 - 10*c5",
        "4*t1*t2/27 + 20*c4 + 2*b3 + 9*a1/2",
        "9*(a2 + b4)",
        "-4*t2*t3/9 + 9*a3/2 - 20*c2 + 2*b5",
        "-2*t3^2/3 + 10*c1 + b6/2",
    ],
    [
        "4*t1*t2/81 + 20*c4/3 + b3/6 - 3*a1/2",
        "4*t1*t3/27 + 8*t2^2/81 - 20*c3 + 2*b4 - 3*a2",
        "4*t2*t3/9 - 3*a3/2 + 20*c2 + b5",
        "4*t3^2/9 - 20*c1/3 + 2*b6/3",
        "b7/2",
    ],
];

/// Connection parts of `d t_i`: `(component, coefficient, t)`.
const TORSION_DIFFERENTIAL_CONNECTION: [&[(usize, (i64, i64), usize)]; 3] = [
    &[(MINUS, (2, 1), 1), (ZERO, (-2, 1), 0), (ONE, (-4, 1), 0)],
    &[(MINUS, (3, 1), 2), (PLUS, (1, 1), 0), (ONE, (-4, 1), 1)],
    &[(ZERO, (2, 1), 2), (PLUS, (2, 3), 1), (ONE, (-4, 1), 2)],
];

/// Ricci endomorphism `g^ik R_kj` as a combination of words in the generators.
const RICCI_WORDS: [(&str, &str); 16] = [
    ("t2^2/54 + t1*t3/36 - R/20", "1"),
    ("b1/8", "---"),
    ("t1^2/108", "--"),
    ("-t1*t2/54 + a1/8 - b3/2", "-"),
    ("5*b4/16", "000"),
    ("t2^2/108 + t1*t3/72", "00"),
    ("-17*b4/4 + a2/8", "0"),
    ("-b7/8", "+++"),
    ("t3^2/12", "++"),
    ("-a3/8 + b5/2 - t2*t3/18", "+"),
    ("-5*b5/32", "0+0"),
    ("b6/8", "+0+"),
    ("t1*t2/54", "0-"),
    ("5*b3/32", "0-0"),
    ("b2/8", "-0-"),
    ("-t2*t3/18", "0+"),
];

fn pairs() -> Vec<(usize, usize)> {
    (0..5).flat_map(|j| (j + 1..5).map(move |k| (j, k))).collect()
}

/// One linear equation `coefficients . unknowns + constant(t) = measured`.
struct Template {
    coefficients: Vec<BigRational>,
    constant: Expr,
}

fn compile(text: &str) -> Template {
    let e = parse_expr(text).expect("built-in template parses");
    let zero: HashMap<Symbol, Expr> = CURVATURE_UNKNOWNS.iter().map(|u| (Symbol::new(u), Expr::zero())).collect();
    let coefficients = CURVATURE_UNKNOWNS
        .iter()
        .map(|u| {
            let d = e.diff(&Symbol::new(u)).canonicalize();
            d.as_constant().cloned().expect("templates are linear in the curvature functions")
        })
        .collect();
    Template { coefficients, constant: e.substitute(&zero) }
}

struct CompiledTemplates {
    curvature: Vec<(usize, Vec<Template>)>,
    torsion: Vec<Vec<Template>>,
    design: Matrix<BigRational>,
    rank: usize,
}

fn templates() -> &'static CompiledTemplates {
    static T: OnceLock<CompiledTemplates> = OnceLock::new();
    T.get_or_init(|| {
        let curvature: Vec<(usize, Vec<Template>)> =
            CURVATURE_TEMPLATES.iter().map(|(a, ts)| (*a, ts.iter().map(|t| compile(t)).collect())).collect();
        let torsion: Vec<Vec<Template>> =
            TORSION_DIFFERENTIAL_TEMPLATES.iter().map(|ts| ts.iter().map(|t| compile(t)).collect()).collect();
        let rows: Vec<Vec<BigRational>> = curvature
            .iter()
            .flat_map(|(_, ts)| ts.iter())
            .chain(torsion.iter().flatten())
            .map(|t| t.coefficients.clone())
            .collect();
        let design = Matrix::from_rows(rows);
        let rank = design.rank();
        CompiledTemplates { curvature, torsion, design, rank }
    })
}

/// Rank of the curvature design matrix and its number of columns.
pub fn curvature_design_rank() -> (usize, usize) {
    let t = templates();
    (t.rank, CURVATURE_UNKNOWNS.len())
}

/// Coefficients of the curvature and the residuals of every consistency relation.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub point: ChartPoint,
    #[serde(skip)]
    pub torsion: [Number; 3],
    #[serde(skip)]
    pub values: Vec<Number>,
    /// Least-squares residual of the 55 equations.
    pub solve_residual: f64,
    /// Mismatch of the parts of `d Pi_A` and `d t_i` that are fixed by the connection.
    pub vertical_residual: f64,
    /// `|R^(9)|`.
    pub r9: f64,
    /// `|dA^(3) - 4 R^(3)|`.
    pub maxwell3: f64,
    /// `|dA^(7) - (2/3) R^(7)|`.
    pub maxwell7: f64,
    /// `|g^ij R_ij - R|`.
    pub scalar: f64,
    /// `|R_v - R_v(t)|` against the torsion formula.
    pub ricci_vector: f64,
    /// Mismatch of the Ricci endomorphism with its expression in the generators.
    pub ricci_endomorphism: f64,
    /// Best `u` with `K = u R_v`, when `R_v` is nonzero.
    #[serde(skip)]
    pub alignment: Option<Number>,
    pub alignment_residual: f64,
    pub scale: f64,
}

impl CurvatureReport {
    pub fn value(&self, name: &str) -> Option<&Number> {
        CURVATURE_UNKNOWNS.iter().position(|u| *u == name).map(|i| &self.values[i])
    }

    /// Largest cross-check residual, relative to the scale of the measured data.
    pub fn worst(&self) -> f64 {
        [
            self.solve_residual,
            self.vertical_residual,
            self.r9,
            self.maxwell3,
            self.maxwell7,
            self.scalar,
            self.ricci_vector,
            self.ricci_endomorphism,
        ]
        .into_iter()
        .fold(0.0, f64::max)
            / self.scale.max(1.0)
    }

    /// `K = (sqrt3/3)(c1..c5)`.
    pub fn k_vector(&self) -> Vec<Number> {
        let s = Number::sqrt3().scaled(&rat(1, 3));
        (1..=5).map(|i| self.value(&format!("c{i}")).expect("known unknown").times(&s)).collect()
    }
}

fn env_with(values: &[Number], t: &[Number; 3]) -> HashMap<Symbol, Number> {
    let mut env: HashMap<Symbol, Number> =
        CURVATURE_UNKNOWNS.iter().zip(values).map(|(u, v)| (Symbol::new(u), v.clone())).collect();
    for (i, v) in t.iter().enumerate() {
        env.insert(Symbol::new(&format!("t{}", i + 1)), v.clone());
    }
    env
}

fn antisymmetric(entries: &[(usize, usize, Number)]) -> TwoTensor<Number> {
    let mut m = Matrix::zeros(5, 5);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
        m.set(*j, *i, v.negated());
    }
    m
}

/// `dA^(3)` and `dA^(7)` assembled from the fitted `a` and `b` functions.
pub(crate) fn maxwell_matrices(value: impl Fn(&str) -> Number) -> (TwoTensor<Number>, TwoTensor<Number>) {
    let (a1, a2, a3) = (value("a1"), value("a2"), value("a3"));
    let s = |v: &Number, k: i64| v.scaled(&rat(k, 1));
    let da3 = antisymmetric(&[
        (0, 3, a1.clone()),
        (0, 4, a2.clone()),
        (1, 2, s(&a1, -3)),
        (1, 3, s(&a2, -2)),
        (1, 4, a3.clone()),
        (2, 3, s(&a3, -3)),
    ]);
    let b: Vec<Number> = (1..=7).map(|i| value(&format!("b{i}"))).collect();
    let da7 = antisymmetric(&[
        (0, 1, b[0].clone()),
        (0, 2, b[1].clone()),
        (0, 3, b[2].clone()),
        (0, 4, b[3].clone()),
        (1, 2, s(&b[2], 2)),
        (1, 3, s(&b[3], 8)),
        (1, 4, b[4].clone()),
        (2, 3, s(&b[4], 2)),
        (2, 4, b[5].clone()),
        (3, 4, b[6].clone()),
    ]);
    (da3, da7)
}

fn ricci_endomorphism(env: &HashMap<Symbol, Number>, digits: usize) -> Result<Matrix<Number>, FrameError> {
    let gens = generators();
    let lift = |m: &Matrix<BigRational>| m.map(|q| Number::exact(q.clone()));
    let (em, ep, e0, e1) = (lift(&gens[MINUS]), lift(&gens[PLUS]), lift(&gens[ZERO]), lift(&gens[ONE]));
    let mut total = Matrix::<Number>::zeros(5, 5);
    for (coefficient, word) in RICCI_WORDS {
        let c = crate::expr::eval_number(&parse_expr(coefficient).expect("built-in template parses"), env, digits)?;
        let mut m = Matrix::<Number>::identity(5);
        for ch in word.chars() {
            let g = match ch {
                '-' => &em,
                '+' => &ep,
                '0' => &e0,
                _ => &e1,
            };
            m = m.mul(g);
        }
        total = total.add(&m.scale(&c));
    }
    Ok(total)
}

fn dist(a: &Matrix<Number>, b: &Matrix<Number>) -> f64 {
    max_magnitude(a.sub(b).entries().iter().cloned()).0
}

/// Fits the curvature functions at one point and evaluates every cross-check.
pub fn extract_curvature(fb: &FrameBundle, point: &ChartPoint, digits: usize) -> Result<CurvatureReport, FrameError> {
    let tpl = templates();
    if tpl.rank < CURVATURE_UNKNOWNS.len() {
        return Err(FrameError::IllConditioned(format!(
            "design matrix has rank {} for {} unknowns",
            tpl.rank,
            CURVATURE_UNKNOWNS.len()
        )));
    }
    // Exact arithmetic only pays off when every coefficient is rational.
    let env = if fb.spec.f.is_rational_function() { point.assignment() } else { point.approximate_assignment(digits) };
    let mut pe = PointEval::new(&env, digits);
    let t = [pe.scalar(&fb.torsion[0])?, pe.scalar(&fb.torsion[1])?, pe.scalar(&fb.torsion[2])?];
    let rows: Vec<Vec<Number>> = fb.coframe(&fb.characteristic).iter().map(|f| pe.one_form(f)).collect::<Result<_, _>>()?;
    let (_, inv) = frame_matrices(&rows)?;

    let d_pi = fb.d_characteristic();
    let d_t = fb.d_torsion();
    let mut framed_pi = Vec::with_capacity(4);
    for f in d_pi {
        framed_pi.push(to_frame(&inv, &pe.two_form(f)?));
    }
    let mut framed_t = Vec::with_capacity(3);
    for f in d_t {
        framed_t.push(inv.transpose().mul_vec(&pe.one_form(f)?));
    }

    // Parts fixed by the connection.
    let mut vertical = 0.0f64;
    let mut scale = 0.0f64;
    let quadratic: [(usize, usize, usize, i64); 3] = [(PLUS, ZERO + 5, PLUS + 5, 2), (MINUS, ZERO + 5, MINUS + 5, -2), (ZERO, PLUS + 5, MINUS + 5, 1)];
    for (a, w) in framed_pi.iter().enumerate() {
        scale = scale.max(max_magnitude(w.entries().iter().cloned()).0);
        let mut expected = Matrix::<Number>::zeros(9, 9);
        for &(comp, p, q, c) in &quadratic {
            if comp == a {
                expected.set(p, q, Number::from_i64(c));
                expected.set(q, p, Number::from_i64(-c));
            }
        }
        for p in 0..9 {
            for q in 0..9 {
                if p >= 5 || q >= 5 {
                    vertical = vertical.max(w.get(p, q).minus(expected.get(p, q)).magnitude());
                }
            }
        }
    }
    for (i, v) in framed_t.iter().enumerate() {
        scale = scale.max(max_magnitude(v.iter().cloned()).0);
        let mut expected = vec![Number::zero(); 9];
        for &(comp, (n, d), ti) in TORSION_DIFFERENTIAL_CONNECTION[i] {
            expected[5 + comp] = expected[5 + comp].plus(&t[ti].scaled(&rat(n, d)));
        }
        for p in 5..9 {
            vertical = vertical.max(v[p].minus(&expected[p]).magnitude());
        }
    }

    // Linear system for the curvature functions.
    let tenv = env_with(&vec![Number::zero(); CURVATURE_UNKNOWNS.len()], &t);
    let mut rhs = Vec::with_capacity(tpl.design.rows());
    for (a, ts) in &tpl.curvature {
        for ((j, k), template) in pairs().into_iter().zip(ts) {
            let c = crate::expr::eval_number(&template.constant, &tenv, digits)?;
            rhs.push(framed_pi[*a].get(j, k).minus(&c));
        }
    }
    for (i, ts) in tpl.torsion.iter().enumerate() {
        for (m, template) in ts.iter().enumerate() {
            let c = crate::expr::eval_number(&template.constant, &tenv, digits)?;
            rhs.push(framed_t[i][m].minus(&c));
        }
    }
    let design = tpl.design.map(|q| Number::exact(q.clone()));
    let (values, residual) = design
        .least_squares(&rhs)
        .ok_or_else(|| FrameError::IllConditioned("normal equations are singular".into()))?;
    let solve_residual = max_magnitude(residual).0;
    let value = |name: &str| values[CURVATURE_UNKNOWNS.iter().position(|u| *u == name).expect("known unknown")].clone();

    // Curvature tensor R^i_jkl = sum_A (E_A)^i_j Omega_A(kl), Ricci R_jl = R^i_jil.
    let gens = generators();
    let omega: Vec<Matrix<Number>> =
        framed_pi.iter().map(|w| Matrix::from_fn(5, 5, |k, l| w.get(k, l).clone())).collect();
    let ricci = Matrix::from_fn(5, 5, |j, l| {
        let mut acc = Number::zero();
        for (a, e) in gens.iter().enumerate() {
            for i in 0..5 {
                let c = e.get(i, j);
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.plus(&omega[a].get(i, l).scaled(c));
                }
            }
        }
        acc
    });
    let split = ricci_split(&ricci).map_err(|e| FrameError::IllConditioned(e.to_string()))?;
    let (da3, da7) = maxwell_matrices(value);
    let r9 = max_magnitude(split.r9.entries().iter().cloned()).0;
    let maxwell3 = dist(&da3, &split.r3.scale(&Number::from_i64(4)));
    let maxwell7 = dist(&da7, &split.r7.scale(&Number::exact(rat(2, 3))));
    let scalar = split.scalar.minus(&value("R")).magnitude();
    let expected_vector = ricci_vector_from_torsion(&t[0], &t[1], &t[2]);
    let ricci_vector = max_magnitude(split.vector.iter().zip(&expected_vector).map(|(a, b)| a.minus(b))).0;
    let fenv = env_with(&values, &t);
    let endo = ricci_endomorphism(&fenv, digits)?;
    let ginv = inverse_metric().map(|q| Number::exact(q.clone()));
    let ricci_endomorphism = dist(&endo, &ginv.mul(&ricci));

    let mut report = CurvatureReport {
        point: point.clone(),
        torsion: t,
        values,
        solve_residual,
        vertical_residual: vertical,
        r9,
        maxwell3,
        maxwell7,
        scalar,
        ricci_vector,
        ricci_endomorphism,
        alignment: None,
        alignment_residual: 0.0,
        scale,
    };
    let k = report.k_vector();
    let norm = expected_vector.iter().fold(Number::zero(), |acc, v| acc.plus(&v.times(v)));
    if norm.magnitude() > 1e-30 {
        let dot = k.iter().zip(&expected_vector).fold(Number::zero(), |acc, (a, b)| acc.plus(&a.times(b)));
        let u = dot.divided(&norm).expect("nonzero norm");
        report.alignment_residual =
            max_magnitude(k.iter().zip(&expected_vector).map(|(a, b)| a.minus(&b.times(&u)))).0;
        report.alignment = Some(u);
    }
    Ok(report)
}
