use std::f64::consts::PI;

use endomotive::numkernel::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn strip() -> impl Strategy<Value = Complex64> {
    (-4.5f64..6.0, -40.0f64..40.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn away_from_poles(z: Complex64) -> bool {
    z.im.abs() > 0.05 || (z.re - z.re.round()).abs() > 0.05 || z.re > 0.5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(z in strip().prop_filter("poles", |z| away_from_poles(*z))) {
        let lhs = (log_gamma(z + 1.0).unwrap()).exp();
        let rhs = z * log_gamma(z).unwrap().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm(), "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn digamma_is_the_log_derivative(z in strip().prop_filter("poles", |z| away_from_poles(*z) && z.norm() > 0.2)) {
        let h = 1e-5;
        let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        let d = digamma(z).unwrap();
        prop_assert!((d - fd).norm() <= 1e-6 * (1.0 + d.norm()), "{z}: {d} vs {fd}");
    }

    #[test]
    fn hurwitz_matches_the_series(x in 2.0f64..6.0, y in -30.0f64..30.0, a in 0.2f64..3.0) {
        let s = Complex64::new(x, y);
        // direct sum plus the Euler-Maclaurin tail from N
        let n = 20_000;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            sum += (-s * (k as f64 + a).ln()).exp();
        }
        let b = n as f64 + a;
        let tail = (-(s - 1.0) * b.ln()).exp() / (s - 1.0) + 0.5 * (-s * b.ln()).exp();
        let want = sum + tail;
        let got = hurwitz_zeta(s, a).unwrap();
        prop_assert!((got - want).norm() <= 1e-10 * (1.0 + want.norm()), "{s}, {a}: {got} vs {want}");
    }
}

#[test]
fn special_values() {
    assert!((zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    assert!((zeta_real(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-14);
    assert!((zeta_real(0.0).unwrap() + 0.5).abs() < 1e-14);
    let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
    assert!((g.re - PI.sqrt()).abs() < 1e-14);
    // psi(1) = -gamma_E
    assert!((digamma_real(1.0).unwrap() + 0.577_215_664_901_532_9).abs() < 1e-14);
    assert!(gamma(Complex64::new(-2.0, 0.0)).is_err());
    assert!(riemann_zeta(Complex64::new(1.0, 0.0)).is_err());
}

#[test]
fn reflection_formula() {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    for z in [Complex64::new(0.3, 0.0), Complex64::new(0.25, 2.0), Complex64::new(-1.7, -0.4)] {
        let lhs = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
        let rhs = PI / (PI * z).sin();
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "{z}");
    }
}

#[test]
fn quadrature_on_each_domain() {
    let opts = QuadOptions::default();
    let (v, _) = integrate_real(|x| (-x * x).exp(), Domain::RealLine, opts).unwrap();
    assert!((v - PI.sqrt()).abs() < 1e-12);
    let (v, _) = integrate_real(|x| (-x).exp(), Domain::HalfLine(0.0), opts).unwrap();
    assert!((v - 1.0).abs() < 1e-12);
    let (v, _) = integrate_real(|x| 1.0 / (1.0 + x * x), Domain::Interval(-1.0, 1.0), opts).unwrap();
    assert!((v - PI / 2.0).abs() < 1e-12);
    // int_0^inf e^(-u) u^2 du/u = Gamma(2)
    let (v, _) = integrate_real(|u| (2.0 * u.ln() - u).exp(), Domain::MultiplicativeHalfLine, opts).unwrap();
    assert!((v - 1.0).abs() < 1e-12);
}
