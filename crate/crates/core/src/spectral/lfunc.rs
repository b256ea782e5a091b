use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::numkernel::{hurwitz_zeta, log_gamma};

/// `L(s, chi) = q^-s sum_(a mod q) chi(a) zeta(s, a/q)` for any character modulo `q`.
pub fn dirichlet_l(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    let q = chi.modulus();
    if q == 1 {
        return hurwitz_zeta(s, 1.0);
    }
    if chi.is_principal() && s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("L(s, chi_0) at s = 1".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let c = chi.value(a);
        if c.norm_sqr() == 0.0 {
            continue;
        }
        total += c * hurwitz_zeta(s, a as f64 / q as f64)?;
    }
    Ok(total * (-s * (q as f64).ln()).exp())
}

/// The phase `theta_chi(t) = (t/2) log(q/pi) + Im log Gamma((1/2 + delta + i t)/2)` of a
/// primitive character; for `q = 1` this is the Riemann-Siegel theta function.
pub fn theta(chi: &DirichletCharacter, t: f64) -> Result<f64> {
    let q = chi.modulus() as f64;
    let delta = chi.parity() as f64;
    let lg = log_gamma(Complex64::new((0.5 + delta) / 2.0, t / 2.0))?;
    Ok(lg.im + 0.5 * t * (q / PI).ln())
}

/// The real function `Z_chi(t) = W^(-1/2) e^(i theta_chi(t)) L(1/2 + i t, chi)` of a
/// primitive character with root number `W`; `|Z_chi(t)| = |L(1/2 + it, chi)|`.
pub fn hardy_z(chi: &DirichletCharacter, t: f64) -> Result<f64> {
    if !chi.is_primitive() {
        return Err(Error::input("hardy_z needs a primitive character"));
    }
    let w = if chi.modulus() == 1 { Complex64::new(1.0, 0.0) } else { chi.root_number() };
    let rot = Complex64::from_polar(1.0, theta(chi, t)? - 0.5 * w.arg());
    let v = rot * dirichlet_l(chi, Complex64::new(0.5, t))?;
    Ok(v.re)
}

/// The completed function `(q/pi)^((s+delta)/2) Gamma((s+delta)/2) L(s, chi)`.
pub fn completed_l(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    let q = chi.modulus() as f64;
    let delta = chi.parity() as f64;
    let w = (s + delta) / 2.0;
    Ok((w * (q / PI).ln() + log_gamma(w)?).exp() * dirichlet_l(chi, s)?)
}
