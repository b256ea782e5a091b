use std::f64::consts::PI;

use endomotive::archfactors::*;
use endomotive::numkernel::{digamma_real, integrate_real, Domain, QuadOptions, EULER_GAMMA};
use endomotive::spectral::ZeroTable;
use num_complex::Complex64;

fn fiber_by_quadrature(n: i64, nu: f64) -> f64 {
    let rho = nu.sqrt();
    let f = |t: f64| {
        let d = Complex64::new(1.0, 0.0) - Complex64::from_polar(rho, t);
        (n as f64 * t).cos() / d.norm_sqr()
    };
    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-14, max_intervals: 4000 };
    integrate_real(f, Domain::Interval(-PI, PI), opts).unwrap().0 / (2.0 * PI)
}

#[test]
fn fiber_matches_quadrature() {
    for n in -3..=3 {
        for nu in [0.05, 0.3, 0.7, 1.4, 3.0, 12.0] {
            let a = fiber_integral(n, nu).unwrap();
            let b = fiber_by_quadrature(n, nu);
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "n={n} nu={nu}: {a} vs {b}");
        }
    }
}

#[test]
fn point_value() {
    let v = weil_pv(&PrincipalValueSpec { n: 0, s: 0.0, scheme: PvScheme::cutoff() }).unwrap();
    let expected = 2.0 * (2.0 * PI).ln() - 2.0 * digamma_real(0.5).unwrap();
    assert!((expected - (2.0 * (2.0 * PI).ln() + 2.0 * EULER_GAMMA + 4.0 * 2f64.ln())).abs() < 1e-14);
    assert!((v.value - expected).abs() < 1e-7, "{} vs {expected}", v.value);
}

#[test]
fn general_psi_route() {
    // psi = f_0 / f_1 written directly, not through the twisted family
    let sym = |y: f64| {
        let r = (-y).exp();
        2.0 * r / -(-y).exp_m1()
    };
    let v = pf0_cutoff(&sym, 1.0, 4, 12).unwrap();
    assert!((v.value - 2.0 * ((2.0 * PI).ln() + EULER_GAMMA)).abs() < 1e-6);
}

#[test]
fn schemes_agree() {
    for n in 0..=3 {
        for s in [0.0, 1.0, 5.0, 20.0] {
            let a = weil_pv(&PrincipalValueSpec { n, s, scheme: PvScheme::cutoff() }).unwrap();
            let b = weil_pv(&PrincipalValueSpec { n, s, scheme: PvScheme::MinimalSubtraction }).unwrap();
            let d = weil_pv_digamma(n, s).unwrap();
            assert!((a.value - b.value).abs() < 1e-6, "n={n} s={s}: {} vs {}", a.value, b.value);
            assert!((b.value - d).abs() < 1e-9, "n={n} s={s}");
            assert!((a.c_estimate - 1.0).abs() < 1e-2);
        }
    }
}

fn structures() -> Vec<HodgeStructure> {
    vec![
        HodgeStructure::point(),
        HodgeStructure::elliptic_h1(),
        HodgeStructure::from_pairs(2, &[((1, 1), 1)], Some((1, 0))).unwrap(),
        HodgeStructure::from_pairs(2, &[((1, 1), 1)], Some((0, 1))).unwrap(),
        HodgeStructure::from_pairs(2, &[((2, 0), 1), ((0, 2), 1), ((1, 1), 20)], Some((9, 11))).unwrap(),
        HodgeStructure::from_pairs(3, &[((3, 0), 1), ((2, 1), 2), ((1, 2), 2), ((0, 3), 1)], None).unwrap(),
    ]
}

#[test]
fn lefschetz_both_places() {
    for h in structures() {
        for s in [0.0, 0.5, 3.0, 10.0] {
            let c = lefschetz_complex(&h, s).unwrap();
            assert!(c.diff <= 1e-6, "complex {h:?} s={s}: {c:?}");
            let r = lefschetz_real(&h, s).unwrap();
            assert!(r.diff <= 1e-6, "real {h:?} s={s}: {r:?}");
        }
    }
}

#[test]
fn j_part_closed_form() {
    for s in [0.0, 0.7, 2.0] {
        let v = j_part_integral(Complex64::new(0.5, s)).unwrap();
        assert!((v.re - PI / (PI * s).cosh()).abs() < 1e-10 && v.im.abs() < 1e-10);
    }
    assert!(j_part_integral(Complex64::new(1.0, 0.0)).is_err());
}

#[test]
fn zeta_zero_counts() {
    let zeros = ZeroTable::zeta(100.0).unwrap();
    let h = HodgeStructure::point();
    for e in [30.0, 50.0, 100.0] {
        let located = zeros.ordinates.iter().filter(|g| **g <= e).count() as f64;
        let smooth = smooth_zero_count(&h, &[Place::Real], e, 2).unwrap();
        assert!((smooth - located).abs() <= 1.0, "E={e}: {smooth} vs {located}");
    }
    let s30 = smooth_zero_count(&h, &[Place::Real], 30.0, 2).unwrap();
    assert!((s30 - 3.565).abs() < 1e-3, "{s30}");
}
