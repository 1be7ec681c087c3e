use super::*;
use crate::expr::Poly;
use crate::parse::parse_expr;
use proptest::prelude::*;

fn ode(order: usize, text: &str) -> OdeSpec {
    OdeSpec::new(order, parse_expr(text).unwrap()).unwrap()
}

fn cfg() -> ZeroTestConfig {
    ZeroTestConfig::default()
}

fn y(k: usize) -> Expr {
    Expr::from_symbol(&jet_symbol(k))
}

/// `d/dx + y1 d/dy + ... + y_top d/dy_{top-1}` with `y_top` left free.
fn free_total(e: &Expr, top: usize) -> Expr {
    let mut terms = vec![e.diff(&Symbol::new("x"))];
    for k in 0..top {
        terms.push(Expr::product([y(k + 1), e.diff(&jet_symbol(k))]));
    }
    Expr::sum(terms).canonicalize()
}

/// Solves `expr = 0` for `y_n`, where `expr` is affine in it.
fn solve_top(expr: &Expr, n: usize) -> Expr {
    let a = expr.diff(&jet_symbol(n));
    let mut zero = HashMap::new();
    zero.insert(jet_symbol(n), Expr::zero());
    let b = expr.substitute(&zero);
    Expr::product([b, a.recip()]).scale(&q(-1, 1)).canonicalize()
}

/// `u^(n) = 0` with `u = exp(y)`: `u^(k) = P_k e^y`, `P_{k+1} = D P_k + y1 P_k`.
fn log_transform(n: usize) -> OdeSpec {
    let mut p = Expr::one();
    for k in 0..n {
        p = Expr::sum([free_total(&p, k + 1), Expr::product([y(1), p])]).canonicalize();
    }
    OdeSpec::new(n, solve_top(&p, n)).unwrap()
}

/// `d^n x / dy^n = 0` rewritten for `y(x)`.
fn hodograph(n: usize) -> OdeSpec {
    let mut q_k = y(1).recip();
    for k in 1..n {
        q_k = Expr::product([free_total(&q_k, k + 1), y(1).recip()]).canonicalize();
    }
    OdeSpec::new(n, solve_top(&q_k, n)).unwrap()
}

/// `u^(n) = 0` with `u = y + x y^2`, which makes `F_y` nonzero.
fn fibre_transform(n: usize) -> OdeSpec {
    let mut u = Expr::sum([y(0), Expr::product([Expr::symbol("x"), y(0).powi(2)])]);
    for k in 0..n {
        u = free_total(&u, k + 1);
    }
    OdeSpec::new(n, solve_top(&u, n)).unwrap()
}

#[test]
fn total_derivative_basics() {
    let spec = ode(5, "y4^2");
    assert_eq!(total_derivative(&Expr::symbol("y"), &spec), Expr::symbol("y1"));
    assert!(total_derivative(&Expr::symbol("x"), &spec).is_one_constant());
    let f4 = spec.f_partial(4);
    let d = total_derivative(&f4, &spec);
    assert!(is_zero(&Expr::sum([d, parse_expr("-2*y4^2").unwrap()]), &cfg()).is_zero());
}

#[test]
fn total_derivative_is_a_derivation() {
    let spec = ode(4, "y3^2/y1 + x*y2");
    let a = parse_expr("x*y^2 + y3*y1").unwrap();
    let b = parse_expr("y2^3/(1 + y^2) + x").unwrap();
    let lhs = total_derivative(&Expr::product([a.clone(), b.clone()]), &spec);
    let rhs = Expr::sum([
        Expr::product([total_derivative(&a, &spec), b.clone()]),
        Expr::product([a, total_derivative(&b, &spec)]),
    ]);
    assert!(matches!(is_zero(&Expr::sum([lhs, rhs.scale(&q(-1, 1))]), &cfg()).kind, VerdictKind::Zero));
}

#[test]
fn encodings_agree() {
    for n in 3..=7 {
        let flat = condition_templates(n, Encoding::Flat).unwrap();
        let grouped = condition_templates(n, Encoding::Grouped).unwrap();
        assert_eq!(flat.len(), n - 2);
        assert_eq!(grouped.len(), n - 2);
        for (i, (a, b)) in flat.iter().zip(&grouped).enumerate() {
            let diff = Expr::sum([a.clone(), b.scale(&q(-1, 1))]);
            let v = is_zero(&diff, &cfg());
            assert!(matches!(v.kind, VerdictKind::Zero), "order {n} condition {}: {:?}", i + 1, v.kind);
        }
    }
}

#[test]
fn conditions_are_weight_homogeneous() {
    for n in 3..=7 {
        for (i, t) in condition_templates(n, Encoding::Flat).unwrap().iter().enumerate() {
            let symbols = t.symbols();
            let p = Poly::from_expr(t, &symbols).unwrap();
            let weights: Vec<usize> =
                symbols.iter().map(|s| placeholder_weight(s.name(), n).expect("known placeholder")).collect();
            for (exps, _) in p.terms() {
                let w: usize = exps.iter().zip(&weights).map(|(e, w)| *e as usize * w).sum();
                assert_eq!(w, i + 3, "order {n} condition {}", i + 1);
            }
        }
    }
}

#[test]
fn unsupported_orders() {
    for n in [8, 9] {
        let spec = OdeSpec::new(n, Expr::zero()).unwrap();
        assert!(matches!(wunschmann_conditions(&spec), Err(JetError::UnsupportedOrder(m)) if m == n));
    }
}

#[test]
fn flat_equation_satisfies_everything() {
    for n in 3..=7 {
        let spec = OdeSpec::new(n, Expr::zero()).unwrap();
        for c in wunschmann_conditions(&spec).unwrap() {
            assert!(c.canonicalize().is_zero_constant());
        }
    }
}

#[test]
fn point_transforms_of_the_trivial_equation() {
    for n in 3..=7 {
        for (label, spec) in [("log", log_transform(n)), ("hodograph", hodograph(n)), ("fibre", fibre_transform(n))] {
            let report = check_wunschmann(&spec, &cfg()).unwrap();
            for (i, v) in report.verdicts.iter().enumerate() {
                assert!(matches!(v.kind, VerdictKind::Zero), "{label} n={n} condition {}: {:?}", i + 1, v.kind);
            }
        }
    }
}

#[test]
fn fibre_transform_has_nonzero_fy() {
    let spec = fibre_transform(5);
    assert!(is_zero(&spec.f_partial(0), &cfg()).is_nonzero());
}

#[test]
fn y4_squared_first_condition() {
    let spec = ode(5, "y4^2");
    let conditions = wunschmann_conditions(&spec).unwrap();
    let expected = parse_expr("24*y4^3").unwrap();
    let diff = Expr::sum([conditions[0].clone(), expected.scale(&q(-1, 1))]);
    assert!(matches!(is_zero(&diff, &cfg()).kind, VerdictKind::Zero));
    let point = JetPoint::from_ints(5, &[0, 0, 0, 0, 0, 1]).unwrap();
    let values = evaluate_conditions(&spec, &point, 30).unwrap();
    assert_eq!(values[0], Number::from_i64(24));
}

#[test]
fn y4_cubed_fails_first_condition() {
    let spec = ode(5, "y4^3");
    let report = check_wunschmann(&spec, &cfg()).unwrap();
    assert!(report.verdicts[0].is_nonzero());
    assert!(!report.satisfied());
    assert_eq!(report.witnesses()[0].0, 1);
    // W1 = 50*24 y4^6 - 60*3*6 y4^6 + 8*27 y4^6 = 336 y4^6.
    let point = JetPoint::from_ints(5, &[1, 1, 1, 1, 1, 2]).unwrap();
    assert_eq!(evaluate_conditions(&spec, &point, 30).unwrap()[0], Number::from_i64(336 * 64));
}

#[test]
fn rational_examples_are_certified() {
    for text in ["5*y4^2/(3*y3)", "5*(8*y3^3 - 12*y2*y3*y4 + 3*y1*y4^2)/(6*(2*y1*y3 - 3*y2^2))"] {
        let report = check_wunschmann(&ode(5, text), &cfg()).unwrap();
        assert_eq!(report.verdicts.len(), 3);
        for v in &report.verdicts {
            assert!(matches!(v.kind, VerdictKind::Zero), "{text}: {:?}", v.kind);
        }
    }
}

#[test]
fn fractional_power_examples_vanish() {
    for text in ["y4^(5/4)", "5*y4^2/(3*y3) + y3^(5/3)"] {
        let report = check_wunschmann(&ode(5, text), &cfg()).unwrap();
        for v in &report.verdicts {
            assert!(v.is_zero(), "{text}: {:?}", v.kind);
        }
    }
}

#[test]
fn third_order_negative_control() {
    // F2 = 2y2, DF2 = 2y2^2, D^2F2 = 4y2^3, so W = 36y2^3 - 72y2^3 + 32y2^3 = -4y2^3.
    let spec = ode(3, "y2^2");
    let report = check_wunschmann(&spec, &cfg()).unwrap();
    assert!(report.verdicts[0].is_nonzero());
    let point = JetPoint::from_ints(3, &[0, 0, 0, 1]).unwrap();
    assert_eq!(evaluate_conditions(&spec, &point, 30).unwrap()[0], Number::from_i64(-4));
}

#[test]
fn jet_point_arity() {
    assert!(matches!(JetPoint::from_ints(5, &[1, 2, 3]), Err(JetError::Arity { expected: 5, found: 3 })));
    let p = JetPoint::from_ints(3, &[1, 2, 3, 4]).unwrap();
    assert_eq!(p.order(), 3);
    assert_eq!(p.y(2), &q(4, 1));
    assert!(evaluate_conditions(&ode(4, "0"), &p, 20).is_err());
}

#[test]
fn translation_smoke_test() {
    let t = Expr::rational(7, 3);
    for text in ["0", "5*y4^2/(3*y3)", "x*y4^2"] {
        let spec = ode(5, text);
        let mut shift = HashMap::new();
        shift.insert(Symbol::new("x"), Expr::sum([Expr::symbol("x"), t.clone()]));
        let moved = OdeSpec::new(5, spec.f.substitute(&shift)).unwrap();
        let a = check_wunschmann(&spec, &cfg()).unwrap();
        let b = check_wunschmann(&moved, &cfg()).unwrap();
        let la: Vec<_> = a.verdicts.iter().map(|v| v.label()).collect();
        let lb: Vec<_> = b.verdicts.iter().map(|v| v.label()).collect();
        assert_eq!(la, lb, "{text}");
    }
}

#[test]
fn classify_flat() {
    let c = classify5(&ode(5, "0"), &cfg()).unwrap();
    assert!(c.wunschmann.satisfied());
    assert!(c.torsion_free.is_zero());
    assert!(c.da3_zero.is_zero());
    assert!(c.da7_zero.is_zero());
    assert!(c.k_aligned.verdict.is_inconclusive());
    assert!(c.k_aligned.u.is_none());
}

#[test]
fn classify_quadratic_example() {
    let c = classify5(&ode(5, "5*y4^2/(3*y3) + y3^(5/3)"), &cfg()).unwrap();
    assert!(c.torsion_free.is_nonzero());
    assert!(c.da7_zero.is_zero());
}

#[test]
fn classify_fractional_power() {
    let c = classify5(&ode(5, "y4^(5/4)"), &cfg()).unwrap();
    assert!(c.wunschmann.satisfied());
    assert!(c.torsion_free.is_nonzero());
    assert!(c.da7_zero.is_nonzero());
}

#[test]
fn classify_rejects_other_orders() {
    assert!(matches!(classify5(&ode(4, "y3^2"), &cfg()), Err(JetError::OrderMismatch { expected: 5, found: 4 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn total_derivative_is_linear(a in -20i64..20, b in -20i64..20, k in 0usize..4) {
        let spec = ode(5, "y4^2/y3 + x");
        let e1 = y(k).powi(2);
        let e2 = Expr::product([Expr::symbol("x"), y(k + 1)]);
        let combo = Expr::sum([e1.scale(&q(a, 1)), e2.scale(&q(b, 1))]);
        let lhs = total_derivative(&combo, &spec);
        let rhs = Expr::sum([
            total_derivative(&e1, &spec).scale(&q(a, 1)),
            total_derivative(&e2, &spec).scale(&q(b, 1)),
        ]);
        let v = is_zero(&Expr::sum([lhs, rhs.scale(&q(-1, 1))]), &cfg());
        prop_assert!(v.is_zero());
    }
}


