//! Cooling and distillation made numerical: the summation map `E`, Mellin transforms,
//! Poisson decay, factorisation through Dirichlet `L`-functions and vanishing at zeros.

mod lfunc;
mod zeros;

pub use lfunc::{completed_l, dirichlet_l, hardy_z, theta};
pub use zeros::{ZeroSource, ZeroTable};

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{divisors, factorize, units, DirichletCharacter};
use crate::error::{Error, Result};
use crate::numkernel::{integrate, Domain, QuadOptions};
use crate::testfn::{power, AdelicFunction, TestFunction};

/// `E(xi)(u, l) = sum_(n >= 1) xi(n u, n l)`.
pub fn summation_e(xi: &AdelicFunction, u: u64, lambda: f64) -> Result<Complex64> {
    if xi.terms().is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    xi.summation(u, lambda, 1e-17)
}

pub fn mellin(h: &TestFunction, s: Complex64) -> Result<Complex64> {
    h.mellin(s)
}

/// Options for the Mellin transform of `E(xi)`.
#[derive(Debug, Clone, Copy)]
pub struct TransformOptions {
    /// Below this `l` the function `E(xi)(l) - A/l` is treated as constant.
    pub lambda_lo: f64,
    pub quad: QuadOptions,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            lambda_lo: 1e-3,
            quad: QuadOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 4000 },
        }
    }
}

/// Mellin transforms of `l -> E(xi)(u, l)` sharing one table of summed values.
pub struct SummationTransform<'a> {
    xi: &'a AdelicFunction,
    u: u64,
    opts: TransformOptions,
    integral: Complex64,
    cache: Mutex<HashMap<u64, Complex64>>,
}

impl<'a> SummationTransform<'a> {
    pub fn new(xi: &'a AdelicFunction, u: u64, opts: TransformOptions) -> Result<Self> {
        let integral = if xi.terms().is_empty() { Complex64::new(0.0, 0.0) } else { xi.haar_integral()? };
        Ok(SummationTransform { xi, u, opts, integral, cache: Mutex::new(HashMap::new()) })
    }

    /// `A = int xi` against additive Haar measure.
    pub fn integral(&self) -> Complex64 {
        self.integral
    }

    fn e_at(&self, x: f64) -> Result<Complex64> {
        let key = x.to_bits();
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = summation_e(self.xi, self.u, x.exp())?;
        self.cache.lock().unwrap().insert(key, v);
        Ok(v)
    }

    /// `int_0^infinity (E(xi)(u, l) - c A / l) l^s dl/l` with `c = 1` when `subtract` (valid
    /// for `0 < Re s < 1`) and `c = 0` otherwise (valid for `Re s > 1`). Below `lambda_lo`
    /// the integrand is `A/l + h` with `h` the quadratic through its values at `lambda_lo`,
    /// `lambda_lo / 2` and `lambda_lo / 4`, the leading terms of its Euler-Maclaurin expansion.
    pub fn at(&self, s: Complex64, subtract: bool) -> Result<Complex64> {
        if self.xi.terms().is_empty() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if subtract && !(s.re > 0.0 && s.re < 1.0) {
            return Err(Error::Convergence(format!("subtracted transform needs 0 < Re s < 1, got {s}")));
        }
        if !subtract && !(s.re > 1.0) {
            return Err(Error::Convergence(format!("transform of E needs Re s > 1, got {s}")));
        }
        let body = self.body(s, subtract)?;
        let a = self.integral;
        let l0 = self.opts.lambda_lo;
        let ls = [l0, l0 / 2.0, l0 / 4.0];
        let mut hs = [Complex64::new(0.0, 0.0); 3];
        for (h, &l) in hs.iter_mut().zip(&ls) {
            *h = self.e_at(l.ln())? - a / l;
        }
        let head_h = quadratic_head(ls, hs, s);
        let head = if subtract { head_h } else { a * power(l0, s - 1.0) / (s - 1.0) + head_h };
        Ok(body + head)
    }

    /// `int_(lambda_lo)^infinity E(xi)(u, l) l^s dl/l` with nothing subtracted; used as a
    /// control, it is dominated by `A lambda_lo^(s-1) / (1-s)` when `A != 0` and `Re s < 1`.
    pub fn truncated_at(&self, s: Complex64) -> Result<Complex64> {
        self.body(s, false)
    }

    fn body(&self, s: Complex64, subtract: bool) -> Result<Complex64> {
        let a = self.integral;
        let x_lo = self.opts.lambda_lo.ln();
        let failure = RefCell::new(None);
        let body = integrate(
            |x| {
                let l = x.exp();
                if !l.is_finite() {
                    return Complex64::new(0.0, 0.0);
                }
                match self.e_at(x) {
                    Ok(e) => {
                        let v = if subtract { e - a / l } else { e };
                        if v.norm_sqr() == 0.0 {
                            v
                        } else {
                            v * (s * x).exp()
                        }
                    }
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            Domain::HalfLine(x_lo),
            self.opts.quad,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(body?.value)
    }
}

/// `int_0^(l_0) q(l) l^s dl/l` for the quadratic `q` through `(l_i, h_i)`.
fn quadratic_head(ls: [f64; 3], hs: [Complex64; 3], s: Complex64) -> Complex64 {
    let mut c = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let w = hs[i] / ((ls[i] - ls[j]) * (ls[i] - ls[k]));
        c[0] += w * ls[j] * ls[k];
        c[1] -= w * (ls[j] + ls[k]);
        c[2] += w;
    }
    let l0 = ls[0];
    (0..3).map(|p| c[p] * power(l0, s + p as f64) / (s + p as f64)).sum()
}

/// One-off [`SummationTransform::at`].
pub fn summation_mellin(
    xi: &AdelicFunction,
    u: u64,
    s: Complex64,
    subtract: bool,
    opts: TransformOptions,
) -> Result<Complex64> {
    SummationTransform::new(xi, u, opts)?.at(s, subtract)
}

/// `r(l) = E(xi)(u, l) - A / l` on a grid, with a fitted exponent `N` in `|r| ~ |log l|^-N`.
#[derive(Debug, Clone)]
pub struct PoissonReport {
    pub rows: Vec<(f64, f64)>,
    pub fitted_exponent: f64,
}

pub fn poisson_residual(xi: &AdelicFunction, u: u64, grid: &[f64]) -> Result<PoissonReport> {
    let a = if xi.terms().is_empty() { Complex64::new(0.0, 0.0) } else { xi.haar_integral()? };
    let rows: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&l| Ok((l, (summation_e(xi, u, l)? - a / l).norm())))
        .collect::<Result<_>>()?;
    Ok(PoissonReport { fitted_exponent: fit_log_decay(&rows, a.norm()), rows })
}

/// Least-squares slope of `log |r|` against `log |log l|` on the points with `l < 1` whose
/// residual stands above rounding noise; `+inf` when every such residual is noise.
fn fit_log_decay(rows: &[(f64, f64)], a: f64) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(l, r)| *l < 0.5 && *r > 1e-13 * (1.0 + a / l))
        .map(|(l, r)| (l.ln().abs().ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return f64::INFINITY;
    }
    -sxy / sxx
}

/// Whether `f0(m a) = chi(m) f0(a)` for every unit `m` and residue `a`.
pub fn is_covariant(f0: &[Complex64], chi: &DirichletCharacter) -> bool {
    let n = f0.len() as u64;
    if chi.modulus() != n {
        return false;
    }
    units(n).iter().all(|&m| {
        (0..n).all(|a| {
            let lhs = f0[((m * a) % n) as usize];
            let rhs = chi.value(m) * f0[a as usize];
            (lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm())
        })
    })
}

/// `<D'_f(s), f0> = sum_(g | N) f0(g) g^-s prod_(p | N/g) (1 - chi'(p) p^-s)` with `chi'` the
/// primitive character of `chi`: the finite-place factor, a finite exponential sum.
pub fn finite_factor(f0: &[Complex64], chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    if !is_covariant(f0, chi) {
        return Err(Error::NotCovariant(format!("f0 is not chi-covariant mod {}", f0.len())));
    }
    let n = f0.len() as u64;
    let prim = chi.primitive();
    let mut total = Complex64::new(0.0, 0.0);
    for g in divisors(n) {
        let v = f0[(g % n) as usize];
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let mut euler = Complex64::new(1.0, 0.0);
        for (p, _) in factorize(n / g) {
            let cp = prim.value_int(p as i64);
            euler *= Complex64::new(1.0, 0.0) - cp * power(p as f64, -s);
        }
        total += v * power(g as f64, -s) * euler;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy)]
pub struct Factorization {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub difference: f64,
}

/// Both sides of `int E(xi)(u, l) l^s d*l = chi(u) L(chi', s) <D'_f(s), f0> <D'_inf(s), f_inf>`
/// for `xi = f0 (x) f_inf`: the left by quadrature of the summed function, the right
/// from Hurwitz zeta values, the finite exponential sum and the Mellin transform of `f_inf`.
pub fn l_factorization(
    f0: &[Complex64],
    chi: &DirichletCharacter,
    f_inf: &TestFunction,
    u: u64,
    s: Complex64,
) -> Result<Factorization> {
    Ok(l_factorizations(f0, chi, f_inf, u, &[s])?[0])
}

/// [`l_factorization`] at several points, summing `E(xi)` once per abscissa.
pub fn l_factorizations(
    f0: &[Complex64],
    chi: &DirichletCharacter,
    f_inf: &TestFunction,
    u: u64,
    points: &[Complex64],
) -> Result<Vec<Factorization>> {
    let fins = points.iter().map(|&s| finite_factor(f0, chi, s)).collect::<Result<Vec<_>>>()?;
    if f0.iter().all(|c| c.norm_sqr() == 0.0) {
        let z = Complex64::new(0.0, 0.0);
        return Ok(points.iter().map(|_| Factorization { lhs: z, rhs: z, difference: 0.0 }).collect());
    }
    let xi = AdelicFunction::product(f0.to_vec(), f_inf.clone())?;
    let tr = SummationTransform::new(&xi, u, TransformOptions::default())?;
    let cu = chi.value(u % chi.modulus().max(1));
    points
        .iter()
        .zip(fins)
        .map(|(&s, fin)| {
            let lhs = tr.at(s, false)?;
            let rhs = cu * dirichlet_l(&chi.primitive(), s)? * fin * f_inf.mellin(s)?;
            Ok(Factorization { lhs, rhs, difference: (lhs - rhs).norm() })
        })
        .collect()
}

/// Value of the transform of `h = E(xi) - A/l` at one point of the critical line.
#[derive(Debug, Clone, Copy)]
pub struct VanishingRow {
    pub gamma: f64,
    pub value: f64,
    /// Largest `|F h|` on the line over `[gamma - 1, gamma + 1]`.
    pub line_scale: f64,
}

/// `|F h(1/2 + i gamma)|` at the first `k_max` zeros, `F h(s) = int h(l) l^s d*l` with
/// `h(l) = E(xi)(1, l) - A/l`. Requires `f_inf` to vanish at `0` so that `h` stays bounded.
pub fn vanishing_check(xi: &AdelicFunction, zeros: &ZeroTable, k_max: usize) -> Result<Vec<VanishingRow>> {
    if xi.decay().at_zero <= 0.0 {
        return Err(Error::ConditionsViolated("the archimedean component must vanish at 0".into()));
    }
    let tr = SummationTransform::new(xi, 1, TransformOptions::default())?;
    let at = |t: f64| tr.at(Complex64::new(0.5, t), true);
    zeros
        .ordinates
        .iter()
        .take(k_max)
        .map(|&g| {
            let value = at(g)?.norm();
            let samples: Vec<f64> = (0..=8).map(|k| g - 1.0 + 0.25 * k as f64).collect();
            let line_scale = samples
                .par_iter()
                .map(|&t| at(t).map(|v| v.norm()))
                .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
            Ok(VanishingRow { gamma: g, value, line_scale })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn factorization_level_one() {
        let chi = DirichletCharacter::principal(1).unwrap();
        let f = TestFunction::power_exp(1.0, 1.0);
        let r = l_factorization(&[c(1.0)], &chi, &f, 1, c(2.0)).unwrap();
        assert!((r.rhs.re - PI * PI / 3.0).abs() < 1e-10, "{r:?}");
        assert!(r.difference < 1e-8, "{r:?}");
    }

    #[test]
    fn factorization_mod_4() {
        let chi = DirichletCharacter::kronecker(-4).unwrap();
        let f0: Vec<Complex64> = (0..4).map(|a| chi.value(a)).collect();
        let f = TestFunction::power_exp(1.0, 1.0);
        let r = l_factorization(&f0, &chi, &f, 1, c(2.0)).unwrap();
        assert!(((r.lhs / r.rhs) - 1.0).norm() < 1e-6, "{r:?}");
        let bad = vec![c(0.0), c(1.0), c(0.0), c(1.0)];
        assert!(matches!(l_factorization(&bad, &chi, &f, 1, c(2.0)), Err(Error::NotCovariant(_))));
    }

    #[test]
    fn poisson_smooth_and_control() {
        let xi = AdelicFunction::level_one(TestFunction::log_gaussian(0.0, 0.3));
        let rep = poisson_residual(&xi, 1, &[0.1, 0.03, 0.01, 0.003, 0.001]).unwrap();
        assert!(rep.rows.last().unwrap().1 < 1e-8, "{rep:?}");
        let bad = AdelicFunction::level_one(TestFunction::power_exp(0.0, 1.0));
        let rep = poisson_residual(&bad, 1, &[0.1, 0.03, 0.01, 0.003, 0.001]).unwrap();
        assert!(rep.fitted_exponent < 1.0, "{rep:?}");
    }
}
