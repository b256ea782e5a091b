use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::bernoulli;
use crate::error::{Error, Result};
use crate::exact::rat_to_f64;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;
const SHIFT_RADIUS: f64 = 15.0;
const STIRLING_TERMS: usize = 10;

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{what}({z})")))
    }
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

fn stirling_coeffs() -> &'static [f64] {
    static C: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
    C.get_or_init(|| {
        (1..=STIRLING_TERMS)
            .map(|k| rat_to_f64(&bernoulli(2 * k)) / ((2 * k) * (2 * k - 1)) as f64)
            .collect()
    })
}

fn digamma_coeffs() -> &'static [f64] {
    static C: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
    C.get_or_init(|| {
        (1..=STIRLING_TERMS)
            .map(|k| rat_to_f64(&bernoulli(2 * k)) / (2 * k) as f64)
            .collect()
    })
}

fn shift_count(z: Complex64) -> usize {
    if z.norm() >= SHIFT_RADIUS {
        0
    } else {
        (SHIFT_RADIUS - z.re).ceil().max(0.0) as usize
    }
}

/// Principal branch of `log Gamma(z)`, continuous off the negative real axis.
///
/// For `Re z < 1/2` the value is obtained from the upward recurrence, which keeps the
/// imaginary part continuous along vertical lines.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma at {}", z.re)));
    }
    if z.re < 0.5 {
        let n = (0.5 - z.re).ceil() as usize;
        let mut acc = log_gamma_right(z + n as f64);
        for k in 0..n {
            acc -= (z + k as f64).ln();
        }
        return Ok(acc);
    }
    Ok(log_gamma_right(z))
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    let n = shift_count(z);
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in stirling_coeffs() {
        series += p * *c;
        p *= inv2;
    }
    let mut v = (w - 0.5) * w.ln() - w + LN_2PI_HALF + series;
    for k in 0..n {
        v -= (z + k as f64).ln();
    }
    v
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

fn cot_pi(z: Complex64) -> Complex64 {
    let x = PI * z.re;
    let y = PI * z.im;
    if y.abs() > 20.0 {
        return Complex64::new(0.0, -y.signum());
    }
    let den = (2.0 * y).cosh() - (2.0 * x).cos();
    Complex64::new((2.0 * x).sin() / den, -(2.0 * y).sinh() / den)
}

/// Digamma `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "digamma")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {}", z.re)));
    }
    if z.re < 0.5 {
        let c = cot_pi(z);
        return Ok(digamma_right(1.0 - z) - c * PI);
    }
    Ok(digamma_right(z))
}

fn digamma_right(z: Complex64) -> Complex64 {
    let n = shift_count(z);
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for c in digamma_coeffs() {
        series += p * *c;
        p *= inv2;
    }
    let mut v = w.ln() - inv * 0.5 - series;
    for k in 0..n {
        v -= (z + k as f64).inv();
    }
    v
}

pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(Complex64::new(x, 0.0))?.re)
}

/// `Gamma_C(z) = (2 pi)^(-z) Gamma(z)`, as a logarithm.
pub fn log_gamma_c(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)? - z * (2.0 * PI).ln())
}

/// `Gamma_R(z) = 2^(-1/2) pi^(-z/2) Gamma(z/2)`, as a logarithm.
pub fn log_gamma_r(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z * 0.5)? - z * 0.5 * PI.ln() - 0.5 * 2f64.ln())
}
