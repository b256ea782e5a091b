use num_complex::Complex64;

use crate::arith::bernoulli_over_factorial;
use crate::error::{Error, Result};

const MAX_EM_TERMS: usize = 40;

/// Hurwitz zeta `sum_{k >= 0} (k + a)^(-s)` by Euler-Maclaurin, for `a > 0`, `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite() && a.is_finite()) {
        return Err(Error::NonFinite(format!("hurwitz_zeta({s}, {a})")));
    }
    if a <= 0.0 {
        return Err(Error::input(format!("hurwitz_zeta requires a > 0, got {a}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    let target = 12.0f64.max(s.norm() / 2.0);
    let n = (target - a).ceil().max(0.0) as usize;
    let mut head = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for k in (0..n).rev() {
        let t = (-s * (a + k as f64).ln()).exp();
        scale += t.norm();
        head += t;
    }
    let x = a + n as f64;
    let lx = x.ln();
    let xs = (-s * lx).exp();
    let mut total = head + xs * x / (s - 1.0) + xs * 0.5;
    let scale = scale + (xs * x / (s - 1.0)).norm() + xs.norm();
    // s (s+1) ... (s+2j-2) x^(-s-2j+1)
    let mut poch = s;
    let mut pw = xs / x;
    let inv_x2 = 1.0 / (x * x);
    for j in 1..=MAX_EM_TERMS {
        let term = pw * poch * bernoulli_over_factorial(j);
        total += term;
        if term.norm() <= 1e-17 * scale {
            return Ok(total);
        }
        let k = (2 * j) as f64;
        poch *= (s + (k - 1.0)) * (s + k);
        pw *= inv_x2;
    }
    Err(Error::Convergence(format!("hurwitz_zeta({s}, {a})")))
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(riemann_zeta(Complex64::new(x, 0.0))?.re)
}
