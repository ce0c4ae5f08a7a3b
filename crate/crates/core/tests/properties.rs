use proptest::prelude::*;

use octoslice::algebra::{block_inverse_residual, complete_sbasis, scalar_product, verify_cjk};
use octoslice::catalog::stem_test_functions;
use octoslice::cli::suites::{admissible_mk, admissible_mlq};
use octoslice::regularity::split_components;
use octoslice::slice::{repr_linear_function, repr_linear_unit, repr_matrix, repr_two_point};
use octoslice::taylor::{bound_check_mk, bound_check_mlq, star_power_apply, MultiIndex};
use octoslice::{sampling, ImaginaryUnit, Octonion, SlicePoint};

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-10.0f64..10.0).prop_map(Octonion::new)
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    prop::array::uniform7(-1.0f64..1.0)
        .prop_filter("imaginary part too small", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-4)
        .prop_map(|v| {
            let mut c = [0.0; 8];
            c[1..].copy_from_slice(&v);
            ImaginaryUnit::normalized(Octonion::new(c)).unwrap()
        })
}

fn separated_units() -> impl Strategy<Value = (ImaginaryUnit, ImaginaryUnit)> {
    (unit(), unit()).prop_filter("units too close", |(j, k)| j.as_octonion().dist(&k.as_octonion()) >= 1e-3)
}

fn scale(x: &Octonion, y: &Octonion) -> f64 {
    1.0 + x.norm_sqr() * y.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn alternative_laws(x in octonion(), y in octonion()) {
        prop_assert!(((x * x) * y).dist(&(x * (x * y))) <= 1e-12 * scale(&x, &y));
        prop_assert!(((y * x) * x).dist(&(y * (x * x))) <= 1e-12 * scale(&x, &y));
        prop_assert!(((x * y) * x).dist(&(x * (y * x))) <= 1e-12 * scale(&x, &y));
    }

    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        prop_assert!(((x * y).norm() - x.norm() * y.norm()).abs() <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn right_multiplication_adjoint(x in octonion(), y in octonion(), z in octonion()) {
        let d = scalar_product(&(x * y), &z) - scalar_product(&x, &(z * y.conj()));
        prop_assert!(d.abs() <= 1e-12 * (1.0 + x.norm() * y.norm() * z.norm()));
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        prop_assert!((x * y).conj().dist(&(y.conj() * x.conj())) <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn units_square_to_minus_one(j in unit()) {
        let q = j.as_octonion();
        prop_assert!((q * q).dist(&-Octonion::ONE) <= 1e-14);
    }

    #[test]
    fn operator_identities((j, k) in separated_units()) {
        prop_assert!(verify_cjk(j, k).unwrap() <= 1e-9);
        prop_assert!(block_inverse_residual(j, k).unwrap() <= 1e-9);
    }

    #[test]
    fn canonical_form_ignores_sign_of_unit(
        x in prop::collection::vec(-2.0f64..2.0, 2),
        y in prop::collection::vec(-2.0f64..2.0, 2),
        j in unit(),
    ) {
        let a = SlicePoint::new(x.clone(), y.clone(), j).unwrap();
        let b = SlicePoint::new(x, y.iter().map(|v| -v).collect(), -j).unwrap();
        prop_assert_eq!(a.to_octonions(), b.to_octonions());
        prop_assert!(a.y().iter().find(|v| **v != 0.0).is_none_or(|v| *v > 0.0));
        prop_assert!(a.dist(&b).unwrap() <= 1e-15);
    }

    #[test]
    fn representation_forms_agree(
        which in 0usize..10,
        (j, k) in separated_units(),
        i in unit(),
        seed in any::<u64>(),
    ) {
        let t = &stem_test_functions()[which];
        let f = t.function();
        let mut rng = sampling::rng(seed);
        let x = sampling::real_vec(&mut rng, t.stem.dim(), -1.5, 1.5);
        let y = sampling::real_vec(&mut rng, t.stem.dim(), -1.5, 1.5);
        let direct = f.eval_at(&x, &y, i).unwrap();
        let tol = 1e-9 * (1.0 + direct.norm());
        prop_assert!(repr_matrix(&f, i, j, k, &x, &y).unwrap().dist(&direct) <= tol);
        prop_assert!(repr_linear_unit(&f, i, j, k, &x, &y).unwrap().dist(&direct) <= tol);
        prop_assert!(repr_linear_function(&f, i, j, k, &x, &y).unwrap().dist(&direct) <= tol);
        prop_assert!(repr_two_point(&f, i, j, &x, &y).unwrap().dist(&direct) <= tol);
    }

    #[test]
    fn splitting_round_trips(i in unit(), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let f = stem_test_functions().swap_remove(3).function();
        let split = split_components(&f, complete_sbasis(i)).unwrap();
        let z = SlicePoint::new(vec![x], vec![y], i).unwrap();
        prop_assert!(split.round_trip_residual(&z).unwrap() <= 1e-12);
    }

    #[test]
    fn star_power_is_linear_in_coefficient(
        seed in any::<u64>(),
        a in octonion(),
        b in octonion(),
        t in -3.0f64..3.0,
        alpha in prop::collection::vec(0u32..3, 2),
    ) {
        let mut rng = sampling::rng(seed);
        let j = sampling::unit(&mut rng);
        let p = SlicePoint::new(sampling::real_vec(&mut rng, 2, -1.0, 1.0), sampling::real_vec(&mut rng, 2, -1.0, 1.0), j).unwrap();
        let q = SlicePoint::new(sampling::real_vec(&mut rng, 2, -1.0, 1.0), sampling::real_vec(&mut rng, 2, -1.0, 1.0), sampling::unit(&mut rng)).unwrap();
        let alpha = MultiIndex::new(alpha);
        let lhs = star_power_apply(&q, &p, &alpha, a * t + b).unwrap();
        let rhs = star_power_apply(&q, &p, &alpha, a).unwrap() * t + star_power_apply(&q, &p, &alpha, b).unwrap();
        prop_assert!(lhs.dist(&rhs) <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn star_power_about_real_center_is_ordinary_power(
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
        j in unit(),
        c in -2.0f64..2.0,
        k in 0u32..5,
        a in octonion(),
    ) {
        let p = SlicePoint::real(vec![c]);
        let qs = SlicePoint::new(vec![x], vec![y], j).unwrap();
        let d = Octonion::real(x - c) + j.as_octonion() * y;
        let expected = (0..k).fold(a, |acc, _| d * acc);
        let got = star_power_apply(&qs, &p, &MultiIndex::new(vec![k]), a).unwrap();
        prop_assert!(got.dist(&expected) <= 1e-9 * (1.0 + expected.norm()));
    }

    #[test]
    fn modulus_bounds_hold(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (r, s, i, j) = admissible_mk(&mut rng);
        prop_assert!(bound_check_mk(r, s, i, j).unwrap().holds);
        let (p, q, alpha, a) = admissible_mlq(&mut rng).unwrap();
        prop_assert!(bound_check_mlq(&p, &q, &alpha, a).unwrap().holds);
    }
}
