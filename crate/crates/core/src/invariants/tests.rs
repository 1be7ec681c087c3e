use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::expr::{is_zero, ZeroTestConfig};
use crate::gl2::{rep_generators, Gl2Element};
use crate::scalar::{int, rat, Matrix, QSqrt3, Scalar};

fn theta_at(values: &[i64]) -> ThetaVector {
    ThetaVector::from_ints(values)
}

fn value(kind: InvariantKind, values: &[i64]) -> BigRational {
    invariant_poly(kind, &theta_at(values)).unwrap().as_constant().cloned().unwrap()
}

#[test]
fn catalog_point_values() {
    assert_eq!(value(InvariantKind::G5, &[1, 0, 0, 0, 1]), int(1));
    assert_eq!(value(InvariantKind::G7, &[0, 0, 0, 1, 0, 0, 0]), int(-10));
}

#[test]
fn dimension_mismatch_is_reported() {
    let err = invariant_poly(InvariantKind::G5, &ThetaVector::symbolic(4)).unwrap_err();
    assert_eq!(err, InvariantError::DimensionMismatch { expected: 5, found: 4 });
}

#[test]
fn sextic_is_square_of_cubic_minus_cube_of_metric() {
    let theta = ThetaVector::symbolic(5);
    let i5 = invariant_poly(InvariantKind::I5, &theta).unwrap();
    let ups = upsilon_form(&theta).unwrap();
    let g = invariant_poly(InvariantKind::G5, &theta).unwrap();
    let diff = Expr::sum([i5, -Expr::sum([ups.powi(2), -g.powi(3)])]);
    assert!(is_zero(&diff, &ZeroTestConfig::default()).is_zero());
}

#[test]
fn general_quadratic_matches_printed_tables() {
    assert_eq!(general_quadratic_poly(5).unwrap(), InvariantKind::G5.poly());
    assert_eq!(general_quadratic_poly(7).unwrap(), InvariantKind::G7.poly());
    assert_eq!(general_quadratic_poly(9).unwrap(), InvariantKind::G9.poly());
    assert_eq!(general_quadratic_poly(3).unwrap(), InvariantKind::G3.poly().neg());
    assert!(matches!(general_quadratic_poly(6), Err(InvariantError::Argument(_))));
    assert!(general_quadratic_invariant(5).is_ok());
}

#[test]
fn cubic_catalog_entry_is_opposite_of_bracket() {
    assert_eq!(upsilon5_tilde(), InvariantKind::Upsilon5.poly().neg());
    assert_eq!(upsilon4_tilde(), InvariantKind::I4.poly());
}

#[test]
fn linear_resultant() {
    let x = crate::expr::Symbol::new("x");
    let p = crate::parse::parse_expr("x - a").unwrap();
    let q = crate::parse::parse_expr("x - b").unwrap();
    let r = sylvester_resultant(&p, &q, &x).unwrap();
    let expected = crate::parse::parse_expr("b - a").unwrap();
    let sum = Expr::sum([r.clone(), -expected.clone()]);
    let alt = Expr::sum([r, expected]);
    let cfg = ZeroTestConfig::default();
    assert!(is_zero(&sum, &cfg).is_zero() || is_zero(&alt, &cfg).is_zero());
}

#[test]
fn zero_polynomial_is_rejected() {
    let x = crate::expr::Symbol::new("x");
    let p = crate::parse::parse_expr("x - a").unwrap();
    assert!(matches!(sylvester_resultant(&p, &Expr::zero(), &x), Err(InvariantError::Argument(_))));
}

#[test]
fn resultants_match_transcribed_invariants() {
    for (n, kind) in [(3, InvariantKind::G3), (4, InvariantKind::I4), (5, InvariantKind::I5)] {
        let d = discriminant_form(n).unwrap();
        assert!(d.is_homogeneous(2 * (n as u32 - 2)), "degree for n={n}");
        let ratio = d.proportionality(&kind.poly());
        assert!(ratio.is_some(), "n={n}: {d:?}");
    }
}

#[test]
fn resultant_scales_with_degree() {
    let lambda = int(3);
    for n in 3..=5 {
        let d = discriminant_form(n).unwrap();
        let pt: Vec<BigRational> = (0..n).map(|i| int(i as i64 * 2 - 3)).collect();
        let scaled: Vec<BigRational> = pt.iter().map(|v| v * &lambda).collect();
        let expect = d.eval(&pt) * num_traits::pow(lambda.clone(), 2 * (n - 2));
        assert_eq!(d.eval(&scaled), expect);
    }
}

fn sample_element() -> Gl2Element {
    Gl2Element::rational(rat(3, 2), int(-1), rat(2, 3), int(2)).unwrap()
}

#[test]
fn metric_weight_under_diagonal_element() {
    let a = Gl2Element::rational(int(2), int(0), int(0), int(1)).unwrap();
    let rep = check_equivariance(InvariantKind::G3, &a, 10, 1).unwrap();
    assert!(rep.is_relative_invariant());
    assert_eq!(rep.weight, Some(int(2)));
    assert_eq!(rep.matches_stated(), Some(true));
}

#[test]
fn every_catalog_entry_is_relative_invariant() {
    let a = sample_element();
    for kind in InvariantKind::ALL {
        let rep = check_equivariance(kind, &a, 10, 7).unwrap();
        assert!(rep.consistent, "{kind} ratio not constant");
        assert_eq!(rep.weight, Some(kind.homogeneity_weight()), "{kind}");
    }
}

#[test]
fn quartic_and_sextic_weights_follow_homogeneity() {
    let a = sample_element();
    let i4 = check_equivariance(InvariantKind::I4, &a, 8, 5).unwrap();
    let i5 = check_equivariance(InvariantKind::I5, &a, 8, 5).unwrap();
    assert_eq!(i4.weight, Some(int(6)));
    assert_eq!(i5.weight, Some(int(12)));
    assert_eq!(i4.matches_stated(), Some(false));
    assert_eq!(i5.matches_stated(), Some(false));
}

#[test]
fn quarter_scaled_cubic_breaks_identity() {
    let (g, u) = exact_pair();
    let r = cartan_identity_check(&g, &u.scaled(&QSqrt3::from_rational(&rat(1, 4)))).unwrap();
    assert!(!r.exact_zero);
    assert_eq!(r.trace, 0.0);
}

#[test]
fn all_vanishing_samples_are_inconclusive() {
    let a = sample_element();
    assert!(matches!(check_equivariance(InvariantKind::G3, &a, 0, 1), Err(InvariantError::Inconclusive(_))));
}

fn exact_pair() -> (CoeffTensor<QSqrt3>, CoeffTensor<QSqrt3>) {
    (five_dim_metric().lift(), five_dim_upsilon())
}

#[test]
fn metric_and_cubic_components() {
    let g = five_dim_metric();
    assert_eq!(g.get(&[0, 4]), rat(1, 2));
    assert_eq!(g.get(&[1, 3]), int(-2));
    assert_eq!(g.get(&[2, 2]), int(3));
    let ginv = g.to_matrix().inverse().unwrap();
    assert_eq!(*ginv.get(0, 4), int(2));
    assert_eq!(*ginv.get(1, 3), rat(-1, 2));
    assert_eq!(*ginv.get(2, 2), rat(1, 3));
    let u: CoeffTensor<QSqrt3> = five_dim_upsilon();
    let s = |b: BigRational| QSqrt3::new(int(0), b);
    assert_eq!(u.get(&[0, 2, 4]), s(rat(1, 2)));
    assert_eq!(u.get(&[1, 2, 3]), s(int(1)));
    assert_eq!(u.get(&[2, 2, 2]), s(int(-3)));
    assert_eq!(u.get(&[0, 3, 3]), s(int(-1)));
    assert_eq!(u.get(&[1, 1, 4]), s(int(-1)));
}

#[test]
fn cartan_identities_hold_exactly() {
    let (g, u) = exact_pair();
    let r = cartan_identity_check(&g, &u).unwrap();
    assert!(r.exact_zero, "{r:?}");
}

#[test]
fn cartan_identities_are_conformal() {
    let (g, u) = exact_pair();
    let r = cartan_identity_check(&g.scaled(&QSqrt3::from_i64(4)), &u.scaled(&QSqrt3::from_i64(8))).unwrap();
    assert!(r.exact_zero);
}

#[test]
fn cubic_without_prefactor_breaks_identity() {
    let g = five_dim_metric();
    let bracket = CoeffTensor::from_polynomial(&InvariantKind::Upsilon5.poly(), 3).unwrap();
    let r = cartan_identity_check(&g, &bracket).unwrap();
    assert_eq!(r.trace, 0.0);
    assert!(r.identity > 0.1);
    assert!(!r.exact_zero);
}

#[test]
fn singular_metric_is_rejected() {
    let g: CoeffTensor<BigRational> = CoeffTensor::zeros(2, 5);
    let u = CoeffTensor::zeros(3, 5);
    assert_eq!(cartan_identity_check(&g, &u).unwrap_err(), InvariantError::SingularMetric);
}

fn span_rank(ms: &[&Matrix<QSqrt3>]) -> usize {
    let rows: Vec<Vec<QSqrt3>> = ms.iter().map(|m| m.entries().to_vec()).collect();
    Matrix::from_rows(rows).rank()
}

#[test]
fn stabilizer_of_cubic_is_gl2() {
    let (_, u) = exact_pair();
    let basis = stabilizer_algebra(&u).unwrap();
    assert_eq!(basis.len(), 4);
    let gens = rep_generators(5).unwrap();
    let lifted: Vec<Matrix<QSqrt3>> = gens.all().iter().map(|m| m.map(QSqrt3::from_rational)).collect();
    let mut all: Vec<&Matrix<QSqrt3>> = basis.iter().collect();
    all.extend(lifted.iter());
    assert_eq!(span_rank(&all), 4);
}

#[test]
fn identity_always_stabilizes() {
    let (_, u) = exact_pair();
    let basis = stabilizer_algebra(&u).unwrap();
    let id = Matrix::<QSqrt3>::identity(5);
    let mut all: Vec<&Matrix<QSqrt3>> = basis.iter().collect();
    all.push(&id);
    assert_eq!(span_rank(&all), basis.len());
}

#[test]
fn stabilizer_closed_under_brackets() {
    let (_, u) = exact_pair();
    let basis = stabilizer_algebra(&u).unwrap();
    for a in &basis {
        for b in &basis {
            let c = a.commutator(b);
            let mut all: Vec<&Matrix<QSqrt3>> = basis.iter().collect();
            all.push(&c);
            assert_eq!(span_rank(&all), basis.len());
        }
    }
}

#[test]
fn generic_traceless_cubic_has_trivial_stabilizer() {
    use rand::{Rng, SeedableRng};
    let g = five_dim_metric();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let mut t = CoeffTensor::zeros(3, 5);
        for idx in sorted_index_tuples(3, 5) {
            t.set(&idx, int(rng.gen_range(-5i64..=5)));
        }
        let t = traceless_part(&t, &g).unwrap();
        assert!(t.trace(&g.to_matrix().inverse().unwrap()).is_zero());
        assert_eq!(stabilizer_algebra(&t).unwrap().len(), 1);
    }
}

#[test]
fn quartic_in_seven_dimensions_is_traceless() {
    let g = CoeffTensor::from_polynomial(&InvariantKind::G7.poly(), 2).unwrap();
    let u = CoeffTensor::from_polynomial(&InvariantKind::Upsilon7.poly(), 4).unwrap();
    let ginv = g.to_matrix().inverse().unwrap();
    assert!(u.trace(&ginv).is_zero());
}

#[test]
fn polarization_round_trips_catalog() {
    for kind in InvariantKind::ALL {
        let p = kind.poly();
        let t = CoeffTensor::from_polynomial(&p, kind.degree() as usize).unwrap();
        assert_eq!(t.to_poly(), p, "{kind}");
    }
}

#[test]
fn kind_names_parse() {
    for kind in InvariantKind::ALL {
        assert_eq!(kind.name().parse::<InvariantKind>().unwrap(), kind);
    }
    assert!("nope".parse::<InvariantKind>().is_err());
}

proptest! {
    #[test]
    fn contraction_equals_polynomial(vals in proptest::collection::vec(-20i64..20, 6)) {
        let p = InvariantKind::Upsilon6.poly();
        let t = CoeffTensor::from_polynomial(&p, 4).unwrap();
        let theta: Vec<BigRational> = vals.iter().map(|&v| int(v)).collect();
        prop_assert_eq!(t.contract(&theta), p.eval(&theta));
    }

    #[test]
    fn metric_relative_invariance(a in 1i64..6, b in -5i64..6, c in -5i64..6, d in 1i64..6) {
        prop_assume!(a * d - b * c != 0 && (a * d - b * c).abs() != 1);
        let el = Gl2Element::rational(int(a), int(b), int(c), int(d)).unwrap();
        let rep = check_equivariance(InvariantKind::G5, &el, 4, 3).unwrap();
        prop_assert_eq!(rep.weight, Some(int(4)));
    }
}
