//! Special functions and quadrature: complex log-gamma, digamma, Hurwitz zeta,
//! double-exponential and Gauss-Kronrod rules, root bracketing, extrapolation.

mod gamma;
mod quad;
mod zeta;

pub use gamma::{digamma, digamma_real, gamma, log_gamma, log_gamma_c, log_gamma_r};
pub use quad::{gauss_kronrod, integrate, integrate_real, Domain, QuadOptions, QuadResult};
pub use zeta::{hurwitz_zeta, riemann_zeta, zeta_real};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Root of `f` in `[a, b]` by Brent's method; `f(a)` and `f(b)` must differ in sign.
pub fn brent<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::input(format!("brent: no sign change on [{a}, {b}]")));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..200 {
        if fb == 0.0 || (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let out_of_range = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < tol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < tol
        };
        if out_of_range || slow {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::Convergence("brent: iteration limit".into()))
}

/// Polynomial extrapolation of `ys(hs)` to `h = 0` (Neville), with the difference of
/// the two highest orders as an error estimate.
pub fn extrapolate_to_zero(hs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(hs.len(), ys.len());
    assert!(!hs.is_empty());
    let n = hs.len();
    let mut p = ys.to_vec();
    let mut last_two = (ys[n - 1], ys[n - 1]);
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (hs[i + m] * p[i] - hs[i] * p[i + 1]) / (hs[i + m] - hs[i]);
        }
        if m == n - 2 {
            last_two.0 = p[1];
        }
        if m == n - 1 {
            last_two.1 = p[0];
        }
    }
    if n == 1 {
        return (ys[0], f64::INFINITY);
    }
    if n == 2 {
        return (p[0], (p[0] - ys[1]).abs());
    }
    (last_two.1, (last_two.1 - last_two.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_roots() {
        let r = brent(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert!(brent(|x| Ok(x * x + 1.0), 0.0, 2.0, 1e-14).is_err());
    }

    #[test]
    fn extrapolation_recovers_polynomial_limit() {
        let hs: Vec<f64> = (4..10).map(|k| 1.0 / (1u64 << k) as f64).collect();
        let ys: Vec<f64> = hs.iter().map(|h| 3.0 + 2.0 * h - 5.0 * h * h + h * h * h).collect();
        let (v, e) = extrapolate_to_zero(&hs, &ys);
        assert!((v - 3.0).abs() < 1e-12 && e < 1e-10);
    }

    #[test]
    fn compensated_sum() {
        let mut s = NeumaierSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
