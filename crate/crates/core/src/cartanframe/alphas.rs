//! The bundle coefficients and torsion coefficients of the fifth-order frame,
//! written over placeholders for the derivatives of `F` and then instantiated.

use std::collections::{BTreeMap, HashMap};

use crate::expr::{Expr, Symbol};
use crate::jetode::total_derivative;
use crate::parse::{jet_symbol, parse_expr, OdeSpec};

/// `(name, template)` for every determined bundle coefficient `alpha^i_j`,
/// named `a<i><j>`.
pub(crate) const ALPHA_TEMPLATES: [(&str, &str); 14] = [
    ("a00", "-4*a11*a55"),
    ("a20", "(-75*a10^2 + a11^2*(-20*DF4 + 20*F3 + 7*F4^2))/(300*a11*a55)"),
    ("a21", "(-15*a10 + a11*F4)/(30*a55)"),
    ("a22", "-a11/(3*a55)"),
    (
        "a30",
        "(1125*a10^3 + 45*a10*a11^2*(20*DF4 - 20*F3 - 7*F4^2) \
         + 2*a11^3*(100*D2F4 - 200*F2 - 30*F4*DF4 - 60*F3*F4 - 11*F4^3))/(18000*(a11*a55)^2)",
    ),
    ("a31", "(225*a10^2 - 30*a10*a11*F4 + a11^2*(80*DF4 - 100*F3 - 31*F4^2))/(1200*a11*a55^2)"),
    ("a32", "(5*a10 - a11*F4)/(20*a55^2)"),
    ("a33", "a11/(6*a55^2)"),
    (
        "a40",
        "(-1875*a10^4 - 150*(a10*a11)^2*(20*DF4 - 20*F3 - 7*F4^2) \
         - 40*a10*a11^3*(50*DF3 - 100*F2 + 30*F4*DF4 - 40*F3*F4 - 9*F4^3) \
         + a11^4*(400*(-5*D2F3 + 10*DF2 - 6*DF4^2 + 10*F3*DF4 - 3*F3^2 + F4*DF3) \
         + 120*F4^2*(7*DF4 - 5*F3) - 63*F4^4))/(120000*(a11*a55)^3)",
    ),
    (
        "a41",
        "(-1125*a10^3 + 225*a10^2*a11*F4 - 15*a10*a11^2*(80*DF4 - 100*F3 - 31*F4^2) \
         + a11^3*(-400*D2F4 + 1400*F2 + 240*F4*DF4 + 180*F3*F4 + 11*F4^3))/(18000*a11^2*a55^3)",
    ),
    ("a42", "(-75*a10^2 + 30*a10*a11*F4 + a11^2*(-40*DF4 + 80*F3 + 17*F4^2))/(600*a11*a55^3)"),
    ("a43", "(-5*a10 + 3*a11*F4)/(30*a55^3)"),
    ("a44", "-a11/(6*a55^3)"),
    ("a51", "a55*(10*DF44 + 5*F34 + 6*F4*F44)/50"),
];

pub(crate) const ALPHA50_TEMPLATE: &str = "a55*(50*(DF34 + 7*F24 - 5*F33) + 5*F4*(6*DF44 - 37*F34) \
     + 2*F44*(-60*DF4 + 145*F3 + 21*F4^2))/250";

/// Torsion coefficients `t1, t2, t3` of the frame connection.
pub(crate) const TORSION_TEMPLATES: [&str; 3] = [
    "(225*a10^2*F44 + 90*a10*a11*(10*DF44 + 3*F4*F44) \
     - 9*a11^2*(20*(5*DF34 + 20*F24 - 15*F33 + 3*F4*DF44 - 11*F4*F34) \
     + F44*(-120*DF4 + 340*F3 + 51*F4^2)))/(1000*a11^3)",
    "9*a55*(a11*(10*DF44 + 3*F4*F44) + 5*a10*F44)/(50*a11^2)",
    "6*a55^2*F44/(5*a11)",
];

/// `theta_+` parts of the connection forms modulo the `theta^i`, in the order
/// `(minus, zero, one)`.
pub(crate) const CONNECTION_PLUS_TEMPLATES: [&str; 3] = [
    "-(25*a10^2 + 10*a10*a11*F4 + a11^2*(20*DF4 - 20*F3 - 7*F4^2))/(400*(a11*a55)^2)",
    "-(5*a10 + a11*F4)/(20*a11*a55)",
    "F4/(20*a55)",
];

/// Derivatives of `F` that appear in the templates.
struct Derivatives<'a> {
    spec: &'a OdeSpec,
    cache: HashMap<String, Expr>,
}

impl<'a> Derivatives<'a> {
    fn new(spec: &'a OdeSpec) -> Self {
        Derivatives { spec, cache: HashMap::new() }
    }

    /// Resolves names such as `F4`, `F34`, `DF44` and `D2F3`.
    fn get(&mut self, name: &str) -> Option<Expr> {
        if let Some(e) = self.cache.get(name) {
            return Some(e.clone());
        }
        let value = if let Some(rest) = name.strip_prefix("D2") {
            let inner = self.get(rest)?;
            let once = total_derivative(&inner, self.spec);
            total_derivative(&once, self.spec)
        } else if let Some(rest) = name.strip_prefix('D') {
            total_derivative(&self.get(rest)?, self.spec)
        } else {
            let digits = name.strip_prefix('F')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let mut e = self.spec.f.clone();
            for b in digits.bytes() {
                e = e.diff(&jet_symbol((b - b'0') as usize));
            }
            e
        };
        self.cache.insert(name.to_string(), value.clone());
        Some(value)
    }

    fn instantiate(&mut self, template: &str) -> Expr {
        let parsed = parse_expr(template).expect("built-in template parses");
        let mut map = HashMap::new();
        for s in parsed.symbols() {
            if let Some(v) = self.get(s.name()) {
                map.insert(s, v);
            }
        }
        parsed.substitute(&map)
    }
}

/// The instantiated coefficients of a fifth-order equation.
#[derive(Clone, Debug)]
pub struct AlphaSet {
    /// `alpha^i_j` keyed by `a<i><j>`; includes the chart coordinates
    /// `a10`, `a11`, `a55` as plain symbols.
    pub alphas: BTreeMap<String, Expr>,
    pub torsion: [Expr; 3],
    pub connection_plus: [Expr; 3],
}

impl AlphaSet {
    pub fn alpha(&self, i: usize, j: usize) -> Expr {
        self.alphas.get(&format!("a{i}{j}")).cloned().unwrap_or_else(Expr::zero)
    }
}

pub(crate) fn instantiate(spec: &OdeSpec) -> AlphaSet {
    let mut d = Derivatives::new(spec);
    let mut alphas = BTreeMap::new();
    for name in ["a10", "a11", "a55"] {
        alphas.insert(name.to_string(), Expr::from_symbol(&Symbol::new(name)));
    }
    for (name, t) in ALPHA_TEMPLATES {
        alphas.insert(name.to_string(), d.instantiate(t));
    }
    alphas.insert("a50".to_string(), d.instantiate(ALPHA50_TEMPLATE));
    let torsion = TORSION_TEMPLATES.map(|t| d.instantiate(t));
    let connection_plus = CONNECTION_PLUS_TEMPLATES.map(|t| d.instantiate(t));
    AlphaSet { alphas, torsion, connection_plus }
}
