//! The built-in example equations and their expected properties.

use serde::Serialize;

use crate::parse::{parse_ode, OdeSpec};

/// Expected sign of the Ricci scalar `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RSign {
    Positive,
    Negative,
    Zero,
    /// The sign of the given expression in the jet coordinates.
    SignOf(String),
}

/// Properties an entry is known to have; `None` marks properties left open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedFlags {
    pub wunschmann: bool,
    pub torsion_free: Option<bool>,
    pub da3_zero: Option<bool>,
    pub da7_zero: Option<bool>,
    /// `u` in `K = u R_v`, as a reduced fraction.
    pub k_alignment: Option<(i64, i64)>,
    pub r_sign: Option<RSign>,
}

/// A named example equation.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Short description of the family the entry belongs to.
    pub description: &'static str,
    /// The equation in the ODE file format.
    pub source: String,
    pub spec: OdeSpec,
    pub expected: ExpectedFlags,
}

const NOTORSION: &str = "c*(5*y3^3*(5 - 27*c*y2^2)/(9*(1 + c*y2^2)^2) + 10*y2*y3*y4/(1 + c*y2^2))";

const EXW_RADICAND: &str = "y1^6 + 3*y1^4*y2 + 9*y1^2*y2^2 - 9*y2^3 - 4*y1^3*y3 + 12*y1*y2*y3 + 4*y3^2 \
                            - 3*y1^2*y4 - 3*y2*y4";

const EXW: &str = "(5*w*(y1^6 + 3*y1^4*y2 + 9*y1^2*y2^2 - 9*y2^3 - 4*y1^3*y3 + 12*y1*y2*y3 + 4*y3^2 - 3*y4*s) \
                   + 45*y4*s*(2*y1*y2 + y3) - 4*y1^9 - 18*y1^7*y2 - 54*y1^5*y2^2 - 90*y1^3*y2^3 \
                   + 270*y1*y2^4 + 15*y1^6*y3 + 45*y1^4*y2*y3 - 405*y1^2*y2^2*y3 + 45*y2^3*y3 \
                   + 60*y1^3*y3^2 - 180*y1*y2*y3^2 - 40*y3^3)/(9*s^2)";

fn source(name: &str, lets: &[(&str, &str)], f: &str) -> String {
    let mut out = format!("name = {name}\norder = 5\n");
    for (s, e) in lets {
        out.push_str(&format!("let {s} = {e}\n"));
    }
    out.push_str(&format!("F = {f}\n"));
    out
}

fn flags(
    torsion_free: bool,
    da3_zero: Option<bool>,
    da7_zero: Option<bool>,
    k_alignment: Option<(i64, i64)>,
    r_sign: Option<RSign>,
) -> ExpectedFlags {
    ExpectedFlags { wunschmann: true, torsion_free: Some(torsion_free), da3_zero, da7_zero, k_alignment, r_sign }
}

fn entry(name: &'static str, description: &'static str, source: String, expected: ExpectedFlags) -> CatalogEntry {
    let spec = parse_ode(&source).unwrap_or_else(|e| panic!("catalog entry {name} parses: {e}"));
    CatalogEntry { name, description, source, spec, expected }
}

fn sign_of(v: i64) -> RSign {
    match v.signum() {
        1 => RSign::Positive,
        -1 => RSign::Negative,
        _ => RSign::Zero,
    }
}

/// All built-in entries.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (name, c) in [("notorsion_cp1", 1), ("notorsion_c0", 0), ("notorsion_cm1", -1)] {
        let r_sign = Some(sign_of(c));
        out.push(entry(
            name,
            "torsion-free family with vanishing Maxwell form",
            source(name, &[("c", &c.to_string())], NOTORSION),
            flags(true, Some(true), Some(true), None, r_sign),
        ));
    }
    for (name, eps) in [("ex53_epsm1", -1), ("ex53_eps0", 0), ("ex53_eps1", 1)] {
        out.push(entry(
            name,
            "dA = 0 structure with u = -1/420 and sgn R = epsilon",
            source(name, &[("eps", &eps.to_string())], "5*y4^2/(3*y3) + eps*y3^(5/3)"),
            flags(false, Some(true), Some(true), Some((-1, 420)), Some(sign_of(eps))),
        ));
    }
    out.push(entry(
        "ex54",
        "dA = 0 structure with u = 2/105 and R = 0",
        source("ex54", &[], "5*y4^2/(4*y3)"),
        flags(false, Some(true), Some(true), Some((2, 105)), Some(RSign::Zero)),
    ));
    out.push(entry(
        "exfrac",
        "dA = 0 structure with u = 2/105 and sgn R = sgn(3 y2^2 - 2 y1 y3)",
        source("exfrac", &[], "5*(8*y3^3 - 12*y2*y3*y4 + 3*y1*y4^2)/(6*(2*y1*y3 - 3*y2^2))"),
        flags(false, Some(true), Some(true), Some((2, 105)), Some(RSign::SignOf("3*y2^2 - 2*y1*y3".into()))),
    ));
    out.push(entry(
        "exy4",
        "Maxwell form in the seven-dimensional piece, R = 0, K = (2/105) R_v",
        source("exy4", &[], "y4^(5/4)"),
        flags(false, Some(true), Some(false), Some((2, 105)), Some(RSign::Zero)),
    ));
    out.push(entry(
        "exw",
        "algebraic equation with an auxiliary square root w",
        source("exw", &[("s", "y1^2 + y2"), ("w", &format!("({EXW_RADICAND})^(1/2)"))], EXW),
        flags(false, None, Some(false), None, None),
    ));
    out.push(entry(
        "gor_q53",
        "y3^(5/3) q(y4^3/y3^4) with q = (5/3) z^(2/3)",
        source("gor_q53", &[("z", "y4^3/y3^4")], "y3^(5/3)*(5/3)*z^(2/3)"),
        flags(false, Some(true), Some(true), Some((-1, 420)), Some(RSign::Zero)),
    ));
    out.push(entry(
        "gor_q54",
        "y3^(5/3) q(y4^3/y3^4) with q = (5/4) z^(2/3)",
        source("gor_q54", &[("z", "y4^3/y3^4")], "y3^(5/3)*(5/4)*z^(2/3)"),
        flags(false, Some(true), Some(true), Some((2, 105)), Some(RSign::Zero)),
    ));
    out
}

/// Looks up an entry by name; `flat` is an alias of `notorsion_c0`.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    let name = if name == "flat" { "notorsion_c0" } else { name };
    catalog().into_iter().find(|e| e.name == name)
}
