use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::InvariantError;
use crate::expr::{bareiss_determinant, Expr, Poly, Symbol};

/// Resultant of `p` and `q` with respect to variable `var`, as the determinant
/// of their Sylvester matrix. Rows hold coefficients in descending powers.
pub fn sylvester_resultant_poly(p: &Poly, q: &Poly, var: usize) -> Result<Poly, InvariantError> {
    if p.is_zero() || q.is_zero() {
        return Err(InvariantError::Argument("resultant of a zero polynomial".into()));
    }
    let nvars = p.nvars();
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let (m, k) = (pc.len() - 1, qc.len() - 1);
    let size = m + k;
    if size == 0 {
        return Ok(Poly::one(nvars));
    }
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&pc, k), (&qc, m)] {
        let deg = coeffs.len() - 1;
        for s in 0..shifts {
            let mut row = vec![Poly::zero(nvars); size];
            for (i, c) in coeffs.iter().enumerate() {
                row[s + deg - i] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(bareiss_determinant(rows, nvars))
}

/// Resultant of two expressions that are polynomial in `x` and in every other
/// symbol they contain.
pub fn sylvester_resultant(p: &Expr, q: &Expr, x: &Symbol) -> Result<Expr, InvariantError> {
    let mut vars: Vec<Symbol> = p.symbols().into_iter().chain(q.symbols()).filter(|s| s != x).collect();
    vars.sort();
    vars.dedup();
    let others = vars.len();
    vars.push(x.clone());
    let to_poly = |e: &Expr| {
        Poly::from_expr(e, &vars).ok_or_else(|| InvariantError::Argument(format!("not a polynomial in its symbols: {e}")))
    };
    let r = sylvester_resultant_poly(&to_poly(p)?, &to_poly(q)?, others)?;
    let exprs: Vec<Expr> = vars.iter().map(Expr::from_symbol).collect();
    Ok(r.to_expr(&exprs))
}

/// The polynomial `w = sum C(n-1, i) theta^i x^i` and its `x`-derivative, in
/// `n + 1` variables with `x` last.
pub fn uwn_pair(n: usize) -> (Poly, Poly) {
    let nv = n + 1;
    let mut w = Poly::zero(nv);
    for i in 0..n {
        let mut e = vec![0u32; nv];
        e[i] = 1;
        e[n] = i as u32;
        let c = BigRational::from_integer(binomial(BigInt::from(n - 1), BigInt::from(i)));
        w = w.add(&Poly::monomial(e, c));
    }
    let dw = w.diff(n);
    (w, dw)
}

/// `Res(w, w')` with the factor `theta^{n-1}` divided out, as a polynomial in
/// `theta^0 .. theta^{n-1}`. Its vanishing means `w` has a repeated root.
pub fn discriminant_form(n: usize) -> Result<Poly, InvariantError> {
    if n < 3 {
        return Err(InvariantError::Argument(format!("need n >= 3, got {n}")));
    }
    let (w, dw) = uwn_pair(n);
    let r = sylvester_resultant_poly(&w, &dw, n)?;
    let lead = Poly::var(n + 1, n - 1);
    let reduced = r.div_exact(&lead).ok_or_else(|| InvariantError::Argument("leading coefficient does not divide".into()))?;
    reduced.with_nvars(n).ok_or_else(|| InvariantError::Argument("resultant still depends on x".into()))
}
