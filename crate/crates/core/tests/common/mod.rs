//! Test families shared by the integration suites.
#![allow(dead_code)]

use endomotive::arith::DirichletCharacter;
use endomotive::explicit::IdeleTestFunction;
use endomotive::testfn::TestFunction;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Sum of three Gaussians in `log u` normalised to unit coefficient norm.
pub fn random_function(rng: &mut ChaCha8Rng) -> IdeleTestFunction {
    let terms: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.3..1.0))).collect();
    let norm = terms.iter().map(|t| t.0 * t.0).sum::<f64>().sqrt();
    terms
        .iter()
        .map(|&(a, m, s)| IdeleTestFunction::gaussian(a / norm, m, s))
        .reduce(|x, y| x.add(&y))
        .unwrap()
}

/// A product-form `xi = f0 (x) f_inf` with `f0` covariant for `chi`.
pub struct ProductXi {
    pub chi: DirichletCharacter,
    pub f0: Vec<Complex64>,
    pub f_inf: TestFunction,
}

fn on_units(chi: &DirichletCharacter) -> Vec<Complex64> {
    (0..chi.modulus()).map(|a| chi.value(a)).collect()
}

/// Indicator of the residues divisible by `g`, invariant under units mod `n`.
fn multiples(n: u64, g: u64) -> Vec<Complex64> {
    (0..n).map(|a| Complex64::new(if a % g == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
}

/// Ten product-form functions: characters of conductor up to 8, with and without
/// support on non-units, against three archimedean profiles.
pub fn factorization_family() -> Vec<ProductXi> {
    let pe = TestFunction::power_exp(1.0, 1.0);
    let pe2 = TestFunction::power_exp(2.0, 0.5);
    let lg = TestFunction::log_gaussian(0.3, 0.5);
    let ch = |n, i| DirichletCharacter::by_index(n, i).unwrap();
    let mut out = vec![
        ProductXi { chi: ch(1, 0), f0: vec![Complex64::new(1.0, 0.0)], f_inf: pe.clone() },
        ProductXi { chi: ch(1, 0), f0: vec![Complex64::new(1.0, 0.0)], f_inf: lg.clone() },
        ProductXi { chi: ch(4, 0), f0: multiples(4, 2), f_inf: pe.clone() },
        ProductXi { chi: ch(6, 0), f0: multiples(6, 3), f_inf: pe2.clone() },
    ];
    for (chi, f) in [
        (DirichletCharacter::kronecker(-4).unwrap(), pe.clone()),
        (DirichletCharacter::kronecker(-3).unwrap(), lg.clone()),
        (ch(5, 1), pe.clone()),
        (ch(5, 2), pe2.clone()),
        (DirichletCharacter::kronecker(8).unwrap(), lg.clone()),
        (ch(7, 1), pe),
    ] {
        out.push(ProductXi { f0: on_units(&chi), chi, f_inf: f });
    }
    out
}
