use super::*;
use crate::scalar::{int, rat, Number};
use proptest::prelude::*;

fn s(name: &str) -> Expr {
    Expr::symbol(name)
}

fn env(pairs: &[(&str, i64)]) -> Assignment<BigRational> {
    pairs.iter().map(|(k, v)| (Symbol::new(k), int(*v))).collect()
}

#[test]
fn power_rule() {
    let e = s("y4").powi(2);
    assert_eq!(e.diff_by("y4"), Expr::int(2) * s("y4"));
}

#[test]
fn quotient_as_negative_power() {
    let e = Expr::int(5) * s("y4").powi(2) / (Expr::int(3) * s("y3"));
    let expected = Expr::rational(-5, 3) * s("y4").powi(2) * s("y3").powi(-2);
    assert_eq!(e.diff_by("y3"), expected);
}

#[test]
fn fractional_power_rule() {
    let e = s("y3").pow_frac(5, 3);
    assert_eq!(e.diff_by("y3"), Expr::rational(5, 3) * s("y3").pow_frac(2, 3));
}

#[test]
fn absent_symbol_differentiates_to_zero() {
    assert!(s("y3").powi(4).diff_by("y2").is_zero_constant());
}

#[test]
fn evaluates_polynomial_exactly() {
    let e = Expr::int(3) * s("y4").powi(3) - s("y4");
    assert_eq!(eval(&e, &env(&[("y4", 2)]), 60).unwrap(), Number::Exact(int(22)));
}

#[test]
fn evaluates_exact_fractional_power() {
    let e = s("y3").pow_frac(5, 3);
    assert_eq!(eval(&e, &env(&[("y3", 8)]), 60).unwrap(), Number::Exact(int(32)));
}

#[test]
fn pole_is_division_by_zero() {
    let e = s("y3").recip();
    assert_eq!(eval(&e, &env(&[("y3", 0)]), 60), Err(EvalError::DivisionByZero));
}

#[test]
fn negative_base_with_even_root_is_domain_error() {
    let e = s("y3").pow_frac(1, 2);
    assert!(matches!(eval(&e, &env(&[("y3", -4)]), 60), Err(EvalError::Domain(_))));
}

#[test]
fn unbound_symbol_is_reported() {
    assert!(matches!(eval(&s("q"), &env(&[]), 60), Err(EvalError::Unbound(_))));
}

#[test]
fn like_terms_and_bases_merge() {
    let a = s("a");
    assert!((a.clone() * a.clone() - a.powi(2)).is_zero_constant());
    assert_eq!(a.clone() + a.clone() + a.clone(), Expr::int(3) * a.clone());
    assert_eq!(a.pow_frac(1, 2) * a.pow_frac(1, 2), a);
}

#[test]
fn constant_surds_fold() {
    let r3 = Expr::int(3).pow_frac(1, 2);
    assert_eq!(&r3 * &r3, Expr::int(3));
    assert_eq!(Expr::int(12).pow_frac(1, 2), Expr::int(2) * r3);
    assert_eq!(Expr::int(8).pow_frac(2, 3), Expr::int(4));
}

#[test]
fn syntactic_identity_is_zero() {
    let e = Expr::sum([s("y1").powi(2), -(s("y1") * s("y1"))]);
    let v = is_zero(&e, &ZeroTestConfig::default());
    assert!(matches!(v.kind, VerdictKind::Zero));
}

#[test]
fn expanded_square_is_certified() {
    let a = s("a");
    let b = s("b");
    let lhs = (a.clone() + b.clone()).powi(2);
    let rhs = a.powi(2) + Expr::int(2) * a.clone() * b.clone() + b.powi(2);
    let v = is_zero(&(lhs - rhs), &ZeroTestConfig::default());
    assert!(matches!(v.kind, VerdictKind::Zero));
    assert!(v.failure_bound.unwrap() < 1e-100);
}

#[test]
fn nonzero_carries_reproducible_witness() {
    let a = s("a");
    let b = s("b");
    let e = (a.clone() + b.clone()).powi(2) - a.powi(2) - b.powi(2);
    let v = is_zero(&e, &ZeroTestConfig::default());
    let w = v.witness().expect("witness").clone();
    let point: Assignment<BigRational> =
        w.point.iter().map(|(k, v)| (Symbol::new(k), v.parse::<BigRational>().unwrap())).collect();
    let again = eval(&e, &point, 60).unwrap();
    assert!(!again.is_zero());
    assert_eq!(again.to_decimal_string(12), w.value);
}

#[test]
fn fractional_identity_is_numerically_zero() {
    let y = s("y");
    let e = y.pow_frac(1, 3) * y.pow_frac(1, 6) - y.pow_frac(1, 2);
    assert!(e.is_zero_constant());
    let t = (y.clone() + Expr::one()).pow_frac(1, 2);
    let e = &t * &t * &t - (y.clone() + Expr::one()) * t.clone();
    let v = is_zero(&e, &ZeroTestConfig::default());
    assert!(v.is_zero());
    let e = (y.clone() + Expr::one()).pow_frac(1, 3) - y.pow_frac(1, 3);
    assert!(is_zero(&e, &ZeroTestConfig::default()).is_nonzero());
}

#[test]
fn all_poles_is_inconclusive() {
    let y = s("y");
    let cfg = ZeroTestConfig { domain: Domain::default().with_range("y", int(0), int(0)), ..Default::default() };
    let v = is_zero(&(y.recip() - y.recip().powi(2)), &cfg);
    assert!(v.is_inconclusive());
}

#[test]
fn verdicts_are_deterministic() {
    let e = s("a").powi(3) - s("b");
    let c = ZeroTestConfig::default();
    let v1 = is_zero(&e, &c);
    let v2 = is_zero(&e, &c);
    assert_eq!(v1.witness().unwrap().point, v2.witness().unwrap().point);
}

#[test]
fn substitution_replaces_symbols() {
    let e = s("a").powi(2) + s("b");
    let map: HashMap<Symbol, Expr> = [(Symbol::new("a"), s("b") + Expr::one())].into_iter().collect();
    let out = e.substitute(&map);
    let expected = (s("b") + Expr::one()).powi(2) + s("b");
    assert!(is_zero(&(out - expected), &ZeroTestConfig::default()).is_zero());
}

#[test]
fn printed_form_is_readable() {
    let e = Expr::rational(5, 3) * s("y4").powi(2) / s("y3");
    assert_eq!(e.to_string(), "5/3*y3^(-1)*y4^2");
    assert_eq!(rat(1, 2).to_string(), "1/2");
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-4i64..5).prop_map(Expr::int),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Expr::symbol),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::sum),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Expr::product),
            (inner.clone(), 0i64..4).prop_map(|(e, k)| e.powi(k)),
            (inner, 1i64..3).prop_map(|(e, k)| (e + Expr::symbol("a").powi(2) + Expr::int(1)).powi(-k)),
        ]
    })
}

fn quick() -> ZeroTestConfig {
    ZeroTestConfig { trials: 6, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diff_is_linear(a in arb_expr(), b in arb_expr()) {
        let v = Symbol::new("a");
        let lhs = (a.clone() + b.clone()).diff(&v);
        let e = lhs - a.diff(&v) - b.diff(&v);
        prop_assert!(!is_zero(&e, &quick()).is_nonzero());
    }

    #[test]
    fn leibniz_rule(a in arb_expr(), b in arb_expr()) {
        let v = Symbol::new("b");
        let e = (a.clone() * b.clone()).diff(&v) - a.diff(&v) * b.clone() - a.clone() * b.diff(&v);
        prop_assert!(!is_zero(&e, &quick()).is_nonzero());
    }

    #[test]
    fn canonicalize_is_idempotent(a in arb_expr()) {
        let once = a.canonicalize();
        prop_assert_eq!(once.canonicalize(), once);
    }

    #[test]
    fn substitution_commutes_with_evaluation(a in arb_expr(), x in -5i64..6, y in -5i64..6, z in -5i64..6) {
        let sub: HashMap<Symbol, Expr> = [
            (Symbol::new("a"), Expr::symbol("b") + Expr::int(x)),
            (Symbol::new("c"), Expr::int(z)),
        ].into_iter().collect();
        let direct = eval(&a, &env(&[("a", y + x), ("b", y), ("c", z)]), 40);
        let via = eval(&a.substitute(&sub), &env(&[("b", y)]), 40);
        match (direct, via) {
            (Ok(p), Ok(q)) => prop_assert_eq!(p, q),
            (Err(_), _) | (_, Err(_)) => {}
        }
    }
}
