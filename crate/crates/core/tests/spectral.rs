mod common;

use endomotive::arith::DirichletCharacter;
use endomotive::error::Error;
use endomotive::spectral::*;
use endomotive::testfn::{AdelicFunction, TestFunction};
use num_complex::Complex64;
use proptest::prelude::*;
use rayon::prelude::*;

const ZETA_ZEROS: [f64; 5] =
    [14.134725141734693, 21.022039638771555, 25.010_857_580_145_69, 30.424876125859513, 32.935_061_587_739_19];

#[test]
fn product_functions_factor_through_l_functions() {
    let points = [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(2.0, 5.0)];
    let family = common::factorization_family();
    assert_eq!(family.len(), 10);
    family.par_iter().for_each(|x| {
        for (s, f) in points.iter().zip(l_factorizations(&x.f0, &x.chi, &x.f_inf, 1, &points).unwrap()) {
            assert!(
                f.difference <= 1e-6 * (1.0 + f.lhs.norm()),
                "chi {} mod {}, {}, s = {s}: {f:?}",
                x.chi.index(),
                x.chi.modulus(),
                x.f_inf.name()
            );
        }
    });
}

#[test]
fn factorization_at_a_shifted_base_point() {
    // E(xi)(u, .) picks up chi(u) for a unit u
    let chi = DirichletCharacter::by_index(5, 1).unwrap();
    let f0: Vec<Complex64> = (0..5).map(|a| chi.value(a)).collect();
    let h = TestFunction::power_exp(1.0, 1.0);
    let s = Complex64::new(2.5, 1.0);
    let one = l_factorization(&f0, &chi, &h, 1, s).unwrap();
    let two = l_factorization(&f0, &chi, &h, 2, s).unwrap();
    assert!(two.difference <= 1e-6 * (1.0 + two.lhs.norm()));
    assert!((two.lhs - chi.value(2) * one.lhs).norm() <= 1e-6 * (1.0 + one.lhs.norm()));
}

#[test]
fn non_covariant_input_is_rejected() {
    let chi = DirichletCharacter::by_index(5, 1).unwrap();
    let f0 = vec![Complex64::new(1.0, 0.0); 5];
    let r = l_factorization(&f0, &chi, &TestFunction::power_exp(1.0, 1.0), 1, Complex64::new(2.0, 0.0));
    assert!(matches!(r, Err(Error::NotCovariant(_))));
}

#[test]
fn summation_of_a_power_exponential() {
    // sum_n n l e^(-n l) = l e^l / (e^l - 1)^2
    let xi = AdelicFunction::level_one(TestFunction::power_exp(1.0, 1.0));
    for l in [0.1f64, 0.5, 1.0, 2.0, 7.0] {
        let e = l.exp();
        let want = l * e / (e - 1.0).powi(2);
        let got = summation_e(&xi, 1, l).unwrap();
        assert!((got.re - want).abs() <= 1e-12 * want.max(1e-300) && got.im.abs() < 1e-15, "l = {l}");
    }
}

#[test]
fn mellin_of_power_exponential_is_gamma() {
    // int l^a e^(-b l) l^s d*l = Gamma(s + a) b^-(s + a)
    let h = TestFunction::power_exp(1.0, 2.0);
    for s in [Complex64::new(1.0, 0.0), Complex64::new(0.5, 3.0), Complex64::new(2.0, -1.0)] {
        let z = s + 1.0;
        let want = endomotive::numkernel::log_gamma(z).unwrap().exp() * (-(z) * 2f64.ln()).exp();
        let got = mellin(&h, s).unwrap();
        assert!((got - want).norm() <= 1e-9 * want.norm(), "s = {s}");
    }
}

fn profiles() -> Vec<TestFunction> {
    vec![
        TestFunction::power_exp(1.0, 1.0),
        TestFunction::log_gaussian(0.2, 0.6),
        TestFunction::weighted_log_gaussian(0.5, 0.7),
        TestFunction::log_bump(0.0, 1.5),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mellin_is_linear(i in 0usize..4, j in 0usize..4, a in -2.0f64..2.0, b in -2.0f64..2.0, sr in 0.6f64..2.5, si in -6.0f64..6.0) {
        let ps = profiles();
        let s = Complex64::new(sr, si);
        let comb = ps[i].scale(Complex64::new(a, 0.0)).add(&ps[j].scale(Complex64::new(0.0, b)));
        let lhs = mellin(&comb, s).unwrap();
        let rhs = a * mellin(&ps[i], s).unwrap() + Complex64::new(0.0, b) * mellin(&ps[j], s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn mellin_intertwines_dilation(i in 0usize..4, mu in 0.3f64..3.0, sr in 0.6f64..2.5, si in -6.0f64..6.0) {
        // h(mu l) has transform mu^-s M h(s)
        let h = &profiles()[i];
        let s = Complex64::new(sr, si);
        let lhs = mellin(&h.dilate(mu), s).unwrap();
        let rhs = (-s * mu.ln()).exp() * mellin(h, s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }
}

#[test]
fn located_zeta_zeros() {
    let t = ZeroTable::zeta(100.0).unwrap();
    assert_eq!(t.len(), 29);
    for (g, want) in t.ordinates.iter().zip(ZETA_ZEROS) {
        assert!((g - want).abs() < 1e-8, "{g} vs {want}");
    }
    assert!(t.validate(&DirichletCharacter::principal(1).unwrap()).unwrap() <= 1e-6);
}

#[test]
fn located_dirichlet_zeros() {
    let chi = DirichletCharacter::kronecker(-4).unwrap();
    let t = ZeroTable::dirichlet(&chi, 30.0).unwrap();
    assert!((t.ordinates[0] - 6.020948904697597).abs() < 1e-8, "{:?}", t.ordinates);
    assert!(t.validate(&chi).unwrap() <= 1e-6);
    // complex characters have zeros on both sides, unpaired
    let chi = DirichletCharacter::by_index(5, 1).unwrap();
    let t = ZeroTable::dirichlet(&chi, 20.0).unwrap();
    assert!(t.ordinates.iter().any(|g| *g < 0.0) && t.ordinates.iter().any(|g| *g > 0.0));
    assert!(t.validate(&chi).unwrap() <= 1e-6);
}

#[test]
fn zero_table_text_round_trip() {
    let t = ZeroTable::zeta(40.0).unwrap();
    let back = ZeroTable::parse(&t.to_text(), 1, 0).unwrap();
    assert_eq!(back.len(), t.len());
    for (a, b) in back.ordinates.iter().zip(&t.ordinates) {
        assert!((a - b).abs() < 1e-11);
    }
    assert!(ZeroTable::parse("14.1\nnot a number\n", 1, 0).is_err());
}

#[test]
fn poisson_decay_is_rapid() {
    let xi = AdelicFunction::level_one(TestFunction::log_bump(0.0, 1.0));
    let grid: Vec<f64> = (1..=24).map(|k| (-0.25 * k as f64).exp()).collect();
    let r = poisson_residual(&xi, 1, &grid).unwrap();
    assert!(r.fitted_exponent >= 4.0, "{r:?}");
}

#[test]
fn transform_vanishes_at_zeta_zeros() {
    let xi = AdelicFunction::level_one(TestFunction::log_gaussian(0.0, 0.1));
    let zeros = ZeroTable::zeta(40.0).unwrap();
    let rows = vanishing_check(&xi, &zeros, 5).unwrap();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert!(r.value <= 1e-4 * r.line_scale, "{r:?}");
    }
    // between zeros the transform is of the size of the line scale
    let tr = SummationTransform::new(&xi, 1, TransformOptions::default()).unwrap();
    let mid = tr.at(Complex64::new(0.5, 17.5), true).unwrap().norm();
    assert!(mid > 1e-2 * rows[0].line_scale);
}

#[test]
fn vanishing_needs_the_subtraction_and_decay_at_zero() {
    let xi = AdelicFunction::level_one(TestFunction::log_gaussian(0.0, 0.1));
    let tr = SummationTransform::new(&xi, 1, TransformOptions::default()).unwrap();
    let s = Complex64::new(0.5, ZETA_ZEROS[0]);
    let with = tr.at(s, true).unwrap().norm();
    let without = tr.truncated_at(s).unwrap().norm();
    assert!(without > 1e3 * with, "{without} vs {with}");
    let bad = AdelicFunction::level_one(TestFunction::power_exp(0.0, 1.0));
    let zeros = ZeroTable::zeta(20.0).unwrap();
    assert!(matches!(vanishing_check(&bad, &zeros, 1), Err(Error::ConditionsViolated(_))));
}

#[test]
fn nonzero_value_at_the_origin_breaks_poisson_decay() {
    // sum_n e^(-n l) - 1/l tends to -1/2
    let xi = AdelicFunction::level_one(TestFunction::power_exp(0.0, 1.0));
    let grid: Vec<f64> = (1..=24).map(|k| (-0.25 * k as f64).exp()).collect();
    let r = poisson_residual(&xi, 1, &grid).unwrap();
    assert!(r.fitted_exponent < 1.0, "{r:?}");
    let last = r.rows.last().unwrap().1;
    assert!((last - 0.5).abs() < 1e-2, "{last}");
}

#[test]
fn power_exponential_vanishes_at_the_first_zero() {
    let xi = AdelicFunction::level_one(TestFunction::power_exp(1.0, 1.0));
    let zeros = ZeroTable::zeta(20.0).unwrap();
    let row = vanishing_check(&xi, &zeros, 1).unwrap()[0];
    assert!((row.gamma - ZETA_ZEROS[0]).abs() < 1e-8);
    assert!(row.value <= 1e-4 * row.line_scale, "{row:?}");
}
