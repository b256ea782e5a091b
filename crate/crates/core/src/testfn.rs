//! Test functions on the multiplicative half line and their finite-level adelic products.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{integrate, Domain, QuadOptions};

type Eval = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Declared power decay: `|f(l)| <= C l^at_zero` as `l -> 0` and `|f(l)| <= C l^-at_infinity`
/// as `l -> infinity`. `f64::INFINITY` means rapid decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub at_zero: f64,
    pub at_infinity: f64,
}

impl Decay {
    pub const RAPID: Decay = Decay {
        at_zero: f64::INFINITY,
        at_infinity: f64::INFINITY,
    };

    pub fn new(at_zero: f64, at_infinity: f64) -> Self {
        Decay { at_zero, at_infinity }
    }

    /// Open strip `(-at_zero, at_infinity)` of `Re s` where the Mellin integral converges.
    pub fn mellin_strip(&self) -> (f64, f64) {
        (-self.at_zero, self.at_infinity)
    }

    fn min(self, o: Decay) -> Decay {
        Decay::new(self.at_zero.min(o.at_zero), self.at_infinity.min(o.at_infinity))
    }

    fn shift(self, a: f64) -> Decay {
        Decay::new(self.at_zero + a, self.at_infinity - a)
    }
}

/// A complex function of `l > 0` with decay metadata.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    eval: Eval,
    decay: Decay,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestFunction({}, {:?})", self.name, self.decay)
    }
}

impl TestFunction {
    pub fn new(name: impl Into<String>, decay: Decay, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        TestFunction {
            name: name.into(),
            eval: Arc::new(f),
            decay,
        }
    }

    pub fn real(name: impl Into<String>, decay: Decay, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(name, decay, move |l| Complex64::new(f(l), 0.0))
    }

    pub fn zero() -> Self {
        Self::real("0", Decay::RAPID, |_| 0.0)
    }

    /// `l^a e^(-b l)`.
    pub fn power_exp(a: f64, b: f64) -> Self {
        Self::real(format!("l^{a} e^(-{b} l)"), Decay::new(a, f64::INFINITY), move |l| {
            if l.is_infinite() {
                0.0
            } else {
                (a * l.ln() - b * l).exp()
            }
        })
    }

    /// `exp(-(log l - c)^2 / (2 w^2))`.
    pub fn log_gaussian(c: f64, w: f64) -> Self {
        Self::real(format!("loggauss({c},{w})"), Decay::RAPID, move |l| {
            let x = (l.ln() - c) / w;
            (-0.5 * x * x).exp()
        })
    }

    /// `l^a exp(-(log l)^2 / (2 w^2))`.
    pub fn weighted_log_gaussian(a: f64, w: f64) -> Self {
        Self::real(format!("l^{a} loggauss(0,{w})"), Decay::RAPID, move |l| {
            let x = l.ln();
            (a * x - 0.5 * x * x / (w * w)).exp()
        })
    }

    /// A smooth bump in `log l`, supported on `|log l - c| < w`.
    pub fn log_bump(c: f64, w: f64) -> Self {
        Self::real(format!("logbump({c},{w})"), Decay::RAPID, move |l| {
            let x = (l.ln() - c) / w;
            if x.abs() >= 1.0 {
                0.0
            } else {
                (-1.0 / (1.0 - x * x)).exp()
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn eval(&self, l: f64) -> Complex64 {
        (self.eval)(l)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let f = self.eval.clone();
        Self::new(format!("{c}*{}", self.name), self.decay, move |l| c * f(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Self::new(format!("{}+{}", self.name, other.name), self.decay.min(other.decay), move |l| f(l) + g(l))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `l -> f(mu l)`.
    pub fn dilate(&self, mu: f64) -> Self {
        let f = self.eval.clone();
        Self::new(format!("{}(({mu})l)", self.name), self.decay, move |l| f(mu * l))
    }

    /// `l -> l^a f(l)`.
    pub fn times_power(&self, a: f64) -> Self {
        let f = self.eval.clone();
        Self::new(format!("l^{a}*{}", self.name), self.decay.shift(a), move |l| l.powf(a) * f(l))
    }

    /// `l -> f(1/l)`.
    pub fn invert(&self) -> Self {
        let f = self.eval.clone();
        let d = Decay::new(self.decay.at_infinity, self.decay.at_zero);
        Self::new(format!("{}(1/l)", self.name), d, move |l| f(1.0 / l))
    }

    /// Spot-check of the declared decay on a logarithmic grid: returns the smallest
    /// constant `C` such that `|f(l)| <= C min(l, 1/l)^p` with `p` capped at `cap`.
    pub fn decay_constant(&self, cap: f64) -> f64 {
        let p0 = self.decay.at_zero.min(cap);
        let p1 = self.decay.at_infinity.min(cap);
        let mut c: f64 = 0.0;
        for i in -200..=200 {
            let l = (i as f64 * 0.05).exp();
            let w = if l < 1.0 { l.powf(p0) } else { l.powf(-p1) };
            c = c.max(self.eval(l).norm() / w);
        }
        c
    }

    /// `int_0^infinity f(l) l^s dl/l`.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        self.mellin_with(s, QuadOptions { abs_tol: 1e-13, rel_tol: 1e-13, ..Default::default() })
    }

    pub fn mellin_with(&self, s: Complex64, opts: QuadOptions) -> Result<Complex64> {
        let (lo, hi) = self.decay.mellin_strip();
        if !(s.re > lo && s.re < hi) {
            return Err(Error::Convergence(format!(
                "Re s = {} outside the strip ({lo}, {hi}) of {}",
                s.re, self.name
            )));
        }
        let r = integrate(
            |l| {
                let v = self.eval(l);
                if v.norm_sqr() == 0.0 {
                    v
                } else {
                    v * power(l, s)
                }
            },
            Domain::MultiplicativeHalfLine,
            opts,
        )?;
        Ok(r.value)
    }
}

/// `l^s` for real `l > 0`.
pub fn power(l: f64, s: Complex64) -> Complex64 {
    (s * l.ln()).exp()
}

/// `xi(rho, l) = sum_i g_i(rho mod N) f_i(l)` on `Z^ x R+*`, with the `g_i` given by
/// their values on residues `0..N`.
#[derive(Debug, Clone)]
pub struct AdelicFunction {
    level: u64,
    terms: Vec<(Vec<Complex64>, TestFunction)>,
}

impl AdelicFunction {
    pub fn new(level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::input("level must be positive"));
        }
        Ok(AdelicFunction { level, terms: Vec::new() })
    }

    /// A product `g(rho) f(l)` with `g` on residues mod `N`.
    pub fn product(residues: Vec<Complex64>, f: TestFunction) -> Result<Self> {
        let mut out = Self::new(residues.len() as u64)?;
        out.terms.push((residues, f));
        Ok(out)
    }

    /// `f(l)` constant in `rho`.
    pub fn level_one(f: TestFunction) -> Self {
        AdelicFunction {
            level: 1,
            terms: vec![(vec![Complex64::new(1.0, 0.0)], f)],
        }
    }

    pub fn zero() -> Self {
        AdelicFunction { level: 1, terms: Vec::new() }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn terms(&self) -> &[(Vec<Complex64>, TestFunction)] {
        &self.terms
    }

    pub fn push(&mut self, residues: Vec<Complex64>, f: TestFunction) -> Result<()> {
        if residues.len() as u64 != self.level {
            return Err(Error::LevelMismatch(format!(
                "{} residues for level {}",
                residues.len(),
                self.level
            )));
        }
        self.terms.push((residues, f));
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let level = crate::arith::lcm(self.level, other.level);
        let lift = |g: &[Complex64]| -> Vec<Complex64> { (0..level).map(|r| g[(r % g.len() as u64) as usize]).collect() };
        let terms = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(g, f)| (lift(g), f.clone()))
            .collect();
        AdelicFunction { level, terms }
    }

    pub fn decay(&self) -> Decay {
        self.terms.iter().fold(Decay::RAPID, |d, (_, f)| d.min(f.decay()))
    }

    pub fn eval(&self, rho: u64, l: f64) -> Complex64 {
        let r = (rho % self.level) as usize;
        self.terms.iter().map(|(g, f)| g[r] * f.eval(l)).sum()
    }

    /// Mean over residues of `g_i` times `int f_i(l) dl`, the integral against additive Haar measure.
    pub fn haar_integral(&self) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (g, f) in &self.terms {
            let mean: Complex64 = g.iter().sum::<Complex64>() / g.len() as f64;
            if mean.norm() == 0.0 {
                continue;
            }
            total += mean * f.mellin(Complex64::new(1.0, 0.0))?;
        }
        Ok(total)
    }

    /// The function `l -> sum_n xi(n u, n l)` at a fixed unit `u`, truncated once the
    /// remaining tail is below `tol` relative to the running scale.
    pub fn summation(&self, u: u64, l: f64, tol: f64) -> Result<Complex64> {
        if !(l > 0.0) {
            return Err(Error::input("l must be positive"));
        }
        let d = self.decay().at_infinity;
        if d <= 1.0 {
            return Err(Error::Convergence(format!("decay l^-{d} too slow for the summation")));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        let mut quiet = 0;
        let max_terms = ((1e7 / l.max(1e-300)) as u64).clamp(1000, 50_000_000);
        for n in 1..=max_terms {
            let t = self.eval((n % self.level) * (u % self.level) % self.level, n as f64 * l);
            sum += t;
            scale = scale.max(t.norm());
            // past the peak and small for a full period of residues
            if n as f64 * l > 1.0 && t.norm() <= tol * scale.max(f64::MIN_POSITIVE) {
                quiet += 1;
                if quiet >= self.level.max(8) as usize && self.tail_small(u, n, l, tol * scale) {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Convergence(format!("summation at l = {l} did not settle")))
    }

    fn tail_small(&self, u: u64, n: u64, l: f64, tol: f64) -> bool {
        // probe a few later points to guard against oscillating or delayed mass
        [2u64, 4, 16].iter().all(|&k| {
            let m = n * k;
            self.eval((m % self.level) * (u % self.level) % self.level, m as f64 * l).norm() <= tol
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mellin_gamma() {
        let f = TestFunction::power_exp(1.0, 1.0);
        let v = f.mellin(Complex64::new(2.0, 0.0)).unwrap();
        assert!((v - 2.0).norm() < 1e-10, "{v}");
        let g = TestFunction::log_gaussian(0.0, 1.0 / 2f64.sqrt());
        let v = g.mellin(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn strip_is_enforced() {
        let f = TestFunction::power_exp(1.0, 1.0);
        assert!(f.mellin(Complex64::new(-2.0, 0.0)).is_err());
    }

    #[test]
    fn summation_geometric() {
        let xi = AdelicFunction::level_one(TestFunction::power_exp(1.0, 1.0));
        let v = xi.summation(1, 1.0, 1e-16).unwrap();
        let e = std::f64::consts::E;
        assert!((v.re - e / (e - 1.0).powi(2)).abs() < 1e-13);
    }
}
