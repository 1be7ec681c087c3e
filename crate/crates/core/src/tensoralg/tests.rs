use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::gl2::rep_generators;
use crate::scalar::{int, rat, Matrix, QSqrt3, Scalar};

fn q(v: i64) -> BigRational {
    int(v)
}

fn random_tensor(seed: u64, symmetric: bool) -> TwoTensor<BigRational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = Matrix::from_fn(DIM, DIM, |_, _| rat(rng.gen_range(-20..=20), rng.gen_range(1..=4)));
    if symmetric {
        m.add(&m.transpose())
    } else {
        m
    }
}

fn lift_q(m: &TwoTensor<BigRational>) -> TwoTensor<QSqrt3> {
    m.map(QSqrt3::from_rational)
}

#[test]
fn metric_is_an_eigenvector() {
    let g = metric().clone();
    assert_eq!(apply_y(&g), g.scale(&q(14)));
}

#[test]
fn trace_of_y_matches_spectrum() {
    let y = y_operator();
    let expected: i64 = EIGENVALUES.iter().zip(MULTIPLICITIES).map(|(l, m)| l * m as i64).sum();
    assert_eq!(expected, 0);
    assert_eq!(y.trace(), q(expected));
}

#[test]
fn eigenspace_dimensions() {
    let y = y_operator();
    let id = Matrix::<BigRational>::identity(DIM * DIM);
    for (lambda, mult) in EIGENVALUES.iter().zip(MULTIPLICITIES) {
        let kernel = y.sub(&id.scale(&q(*lambda))).nullspace().len();
        assert_eq!(kernel, mult, "eigenvalue {lambda}");
    }
}

#[test]
fn projector_algebra() {
    let p = projectors();
    let id = Matrix::<BigRational>::identity(DIM * DIM);
    let mut total = Matrix::zeros(DIM * DIM, DIM * DIM);
    for a in 0..5 {
        assert_eq!(p[a].mul(&p[a]), p[a]);
        assert_eq!(p[a].rank(), MULTIPLICITIES[a]);
        for b in 0..5 {
            if a != b {
                assert!(p[a].mul(&p[b]).is_zero());
            }
        }
        total = total.add(&p[a]);
    }
    assert_eq!(total, id);
}

#[test]
fn lowered_sl2_generator_is_in_lambda3() {
    let gens = rep_generators(DIM).unwrap();
    let f = metric().mul(&gens.plus);
    assert_eq!(f.add(&f.transpose()), Matrix::zeros(DIM, DIM));
    assert_eq!(apply_y(&f), f.scale(&q(7)));
}

#[test]
fn decomposition_of_metric() {
    let d = decompose_two_tensor(metric()).unwrap();
    assert_eq!(&d.sym1, metric());
    for (_, c) in &d.labelled()[1..] {
        assert!(c.is_zero());
    }
}

#[test]
fn decomposition_components_are_eigenvectors() {
    for seed in 0..3 {
        let w = random_tensor(seed, false);
        let d = decompose_two_tensor(&w).unwrap();
        assert_eq!(d.sum(), w);
        for (lambda, c) in d.labelled() {
            assert_eq!(apply_y(c), c.scale(&q(lambda)));
        }
    }
}

#[test]
fn lambda3_basis_elements() {
    let basis = lambda3_basis();
    assert_eq!(*basis[0].0.get(0, 3), q(1));
    assert_eq!(*basis[0].0.get(1, 2), q(-3));
    assert_eq!(basis[2].1.component([0, 3, 4]), q(-1));
    assert_eq!(basis[2].1.component([1, 2, 4]), q(2));
    for (f, _) in &basis {
        assert_eq!(apply_y(f), f.scale(&q(7)));
        let d = decompose_two_tensor(f).unwrap();
        assert_eq!(&d.skew3, f);
    }
}

#[test]
fn lambda3_duals_match_hodge_star() {
    for (f, dual) in lambda3_basis() {
        let star = hodge_star(&lift_q(&f));
        let printed = ThreeForm::from_terms(dual.terms().map(|(k, v)| (*k, QSqrt3::from_rational(v))));
        assert!(star.ratio_to(&printed).is_some(), "{star:?} vs {printed:?}");
    }
}

#[test]
fn ricci_split_of_metric() {
    let g = lift_q(metric());
    let s = ricci_split(&g).unwrap();
    assert_eq!(s.scalar, QSqrt3::from_i64(5));
    assert!(s.vector.iter().all(Scalar::is_zero_value));
    assert!(s.r9.is_zero() && s.r3.is_zero() && s.r7.is_zero());
}

#[test]
fn ricci_split_reassembles_and_is_graded() {
    for seed in 0..5 {
        let r = lift_q(&random_tensor(seed, false));
        let s = ricci_split(&r).unwrap();
        assert_eq!(s.reassemble(), r);
        assert_eq!(apply_y(&s.r9), s.r9.scale(&QSqrt3::from_i64(4)));
        let five = s.vector_part();
        assert_eq!(apply_y(&five), five.scale(&QSqrt3::from_i64(-3)));
        assert_eq!(apply_y(&s.r3), s.r3.scale(&QSqrt3::from_i64(7)));
        assert_eq!(apply_y(&s.r7), s.r7.scale(&QSqrt3::from_i64(-8)));
    }
}

#[test]
fn ricci_vector_part_matches_projector() {
    let r = lift_q(&random_tensor(9, true));
    let s = ricci_split(&r).unwrap();
    let d = decompose_two_tensor(&r).unwrap();
    assert_eq!(s.vector_part().scale(&QSqrt3::from_rational(&rat(2, 7))), d.sym5);
}

#[test]
fn antisymmetric_lambda3_input() {
    let f = lift_q(&lambda3_basis()[1].0);
    let s = ricci_split(&f).unwrap();
    assert_eq!(s.r3, f);
    assert!(s.r7.is_zero());
}

#[test]
fn maxwell_split_cases() {
    let f3 = lambda3_basis()[0].0.clone();
    let (a, b) = maxwell_split(&f3).unwrap();
    assert_eq!(a, f3);
    assert!(b.is_zero());
    let skew = random_tensor(4, false);
    let skew = skew.sub(&skew.transpose());
    let f7 = decompose_two_tensor(&skew).unwrap().skew7;
    assert!(!f7.is_zero());
    let (a, b) = maxwell_split(&f7).unwrap();
    assert!(a.is_zero());
    assert_eq!(b, f7);
    let (a, b) = maxwell_split(&f3.add(&f7)).unwrap();
    assert_eq!((a, b), (f3, f7));
    assert!(matches!(maxwell_split(metric()), Err(TensorError::NotAntisymmetric(_))));
}

#[test]
fn ricci_vector_from_torsion_values() {
    let z = QSqrt3::zero_value();
    let one = QSqrt3::one_value();
    let k = QSqrt3::new(int(0), rat(7, 6));
    assert!(ricci_vector_from_torsion(&z, &z, &z).iter().all(Scalar::is_zero_value));
    assert_eq!(ricci_vector_from_torsion(&z, &z, &one), vec![k.clone(), z.clone(), z.clone(), z.clone(), z.clone()]);
    let nine = QSqrt3::from_i64(9);
    assert_eq!(ricci_vector_from_torsion(&nine, &z, &z), vec![z.clone(), z.clone(), z.clone(), z, k.times(&nine)]);
}

#[test]
fn kernel_has_dimension_thirty() {
    let k = upsilon_bar_kernel();
    assert_eq!(co32_basis().len(), 11);
    assert_eq!(k.ambient_dim, 55);
    assert_eq!(k.dimension, 30);
    assert_eq!(k.basis.len(), 30);
    assert!(k.tagged_basis_spans);
    let gl = k.basis.iter().filter(|(p, _)| matches!(p, KernelPart::Gl2 { .. })).count();
    assert_eq!(gl, 20);
}

#[test]
fn weyl_split_pure_parts() {
    let basis = &upsilon_bar_kernel().basis;
    let gl: ConnectionCoeffs<QSqrt3> = basis[3].1.lift();
    let s = weyl_split(&gl, 0.0).unwrap();
    assert_eq!(s.gamma, gl);
    assert!(s.torsion.is_zero());
    let t: ConnectionCoeffs<QSqrt3> = basis[25].1.lift();
    let s = weyl_split(&t, 0.0).unwrap();
    assert!(s.gamma.is_zero());
    assert_eq!(s.torsion, t.scale(&QSqrt3::from_i64(2)));
}

#[test]
fn weyl_split_mixed() {
    let gl = gl2_tensor_r5_basis();
    let e_plus_0 = gl.iter().find(|(p, _)| *p == KernelPart::Gl2 { generator: 1, slot: 0 }).unwrap().1.lift::<QSqrt3>();
    let skew = lambda3_connections()[0].1.lift::<QSqrt3>();
    let w = e_plus_0.add(&skew.scale(&QSqrt3::from_rational(&rat(1, 2))));
    let s = weyl_split(&w, 0.0).unwrap();
    assert_eq!(s.gamma, e_plus_0);
    assert_eq!(s.torsion, skew);
}

#[test]
fn weyl_split_rejects_outside_kernel() {
    let mut c = ConnectionCoeffs::<QSqrt3>::zeros();
    c.set(0, 0, 0, QSqrt3::one_value());
    assert!(matches!(weyl_split(&c, 1e-30), Err(TensorError::NotInKernel(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn ricci_reconstruction(vals in proptest::collection::vec(-30i64..30, 25)) {
        let r = Matrix::from_fn(DIM, DIM, |i, j| QSqrt3::from_i64(vals[i * DIM + j]));
        let s = ricci_split(&r).unwrap();
        prop_assert_eq!(s.reassemble(), r);
    }
}
