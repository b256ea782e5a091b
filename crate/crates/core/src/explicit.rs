//! The Riemann-Weil explicit formula over `Q`: sums over zeros against the poles, the
//! archimedean principal value and the prime-power terms, with Dirichlet twists.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::archfactors::pf0_cutoff;
use crate::arith::{prime_powers_up_to, DirichletCharacter};
use crate::error::{Error, Result};
use crate::numkernel::{digamma, integrate, Domain, QuadOptions};
use crate::spectral::{SummationTransform, TransformOptions, ZeroTable};
use crate::testfn::{AdelicFunction, Decay, TestFunction};

type Majorant = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Largest prime-power cutoff the finite-place sum will sieve to.
pub const MAX_PRIME_CUTOFF: u64 = 200_000_000;

/// A function `h` on `R+*` with power decay of order at least 2 at both ends, optionally
/// twisted by a Dirichlet character and carrying a bound `M(|t|) >= |h^(1/2 + i t)|`.
#[derive(Clone)]
pub struct IdeleTestFunction {
    h: TestFunction,
    twist: Option<DirichletCharacter>,
    majorant: Option<Majorant>,
    /// Features `(centre, width)` in `log u` used to place quadrature breakpoints.
    scales: Vec<(f64, f64)>,
}

impl std::fmt::Debug for IdeleTestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdeleTestFunction")
            .field("h", &self.h)
            .field("twist", &self.twist.as_ref().map(|c| (c.modulus(), c.index())))
            .field("majorant", &self.majorant.is_some())
            .finish()
    }
}

impl IdeleTestFunction {
    pub fn new(h: TestFunction) -> Result<Self> {
        let d = h.decay();
        if d.at_zero < 2.0 || d.at_infinity < 2.0 {
            return Err(Error::input(format!("{} decays too slowly: {d:?}", h.name())));
        }
        let c = h.decay_constant(2.0);
        if !c.is_finite() {
            return Err(Error::input(format!("{} violates its declared decay", h.name())));
        }
        Ok(IdeleTestFunction { h, twist: None, majorant: None, scales: Vec::new() })
    }

    pub fn zero() -> Self {
        IdeleTestFunction { h: TestFunction::zero(), twist: None, majorant: Some(Arc::new(|_| 0.0)), scales: Vec::new() }
    }

    /// `a exp(-(log u - c)^2 / (2 sigma^2))`, whose transform is
    /// `a sigma sqrt(2 pi) exp(c z + sigma^2 z^2 / 2)`.
    pub fn gaussian(a: f64, c: f64, sigma: f64) -> Self {
        let h = TestFunction::log_gaussian(c, sigma).scale(Complex64::new(a, 0.0));
        let k = a.abs() * sigma * (2.0 * PI).sqrt() * (c / 2.0 + sigma * sigma / 8.0).exp();
        IdeleTestFunction {
            h,
            twist: None,
            majorant: Some(Arc::new(move |t| k * (-0.5 * sigma * sigma * t * t).exp())),
            scales: vec![(c, sigma)],
        }
    }

    pub fn with_twist(mut self, chi: DirichletCharacter) -> Self {
        self.twist = Some(chi);
        self
    }

    pub fn with_majorant(mut self, m: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.majorant = Some(Arc::new(m));
        self
    }

    /// Declares a feature of `h` of width `w` around `log u = c`.
    pub fn with_scale(mut self, c: f64, w: f64) -> Self {
        self.scales.push((c, w));
        self
    }

    pub fn h(&self) -> &TestFunction {
        &self.h
    }

    pub fn twist(&self) -> Option<&DirichletCharacter> {
        self.twist.as_ref()
    }

    pub fn eval(&self, u: f64) -> Complex64 {
        self.h.eval(u)
    }

    pub fn line_majorant(&self, t: f64) -> Option<f64> {
        self.majorant.as_ref().map(|m| m(t.abs()))
    }

    pub fn scale(&self, a: f64) -> Self {
        let majorant = self.majorant.clone().map(|m| Arc::new(move |t| a.abs() * m(t)) as Majorant);
        IdeleTestFunction { h: self.h.scale(Complex64::new(a, 0.0)), twist: self.twist.clone(), majorant, scales: self.scales.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let majorant = match (&self.majorant, &other.majorant) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |t| a(t) + b(t)) as Majorant)
            }
            _ => None,
        };
        let scales = self.scales.iter().chain(&other.scales).copied().collect();
        IdeleTestFunction { h: self.h.add(&other.h), twist: self.twist.clone(), majorant, scales }
    }

    /// `u -> h(u / mu)`.
    pub fn dilate(&self, mu: f64) -> Self {
        let majorant = self.majorant.clone().map(|m| Arc::new(move |t| mu.sqrt() * m(t)) as Majorant);
        let scales = self.scales.iter().map(|&(c, w)| (c + mu.ln(), w)).collect();
        IdeleTestFunction { h: self.h.dilate(1.0 / mu), twist: self.twist.clone(), majorant, scales }
    }
}

/// `h^(rho) = int h(u) u^rho d*u`.
pub fn fourier_hat(f: &IdeleTestFunction, rho: Complex64) -> Result<Complex64> {
    if f.scales.is_empty() {
        return f.h.mellin(rho);
    }
    let (lo, hi) = f.h.decay().mellin_strip();
    if !(rho.re > lo && rho.re < hi) {
        return Err(Error::Convergence(format!("Re rho = {} outside ({lo}, {hi})", rho.re)));
    }
    let h = &f.h;
    line_integral(&f.scales, |x| {
        let v = h.eval(x.exp());
        if v.norm_sqr() == 0.0 {
            v
        } else {
            v * (rho * x).exp()
        }
    })
}

fn breakpoints(scales: &[(f64, f64)]) -> Vec<f64> {
    let mut xs: Vec<f64> = scales
        .iter()
        .flat_map(|&(c, w)| [-12.0, -6.0, -3.0, 0.0, 3.0, 6.0, 12.0].map(move |k| c + k * w))
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    xs
}

/// `int_R g(x) dx` split at the breakpoints of `scales`.
fn line_integral(scales: &[(f64, f64)], g: impl Fn(f64) -> Complex64) -> Result<Complex64> {
    let xs = breakpoints(scales);
    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 20_000 };
    let (a, b) = (xs[0], xs[xs.len() - 1]);
    let mid = crate::numkernel::gauss_kronrod(&g, a, b, &xs[1..xs.len() - 1], opts)?.value;
    let right = integrate(&g, Domain::HalfLine(b), opts)?.value;
    let left = integrate(|y| g(-y), Domain::HalfLine(-a), opts)?.value;
    Ok(left + mid + right)
}

/// `(f * g)(u) = int f(k) g(u/k) d*k`, evaluated by quadrature in `log k`.
pub fn convolve(f: &IdeleTestFunction, g: &IdeleTestFunction) -> IdeleTestFunction {
    let (fh, gh) = (f.h.clone(), g.h.clone());
    let (df, dg) = (fh.decay(), gh.decay());
    let decay = Decay::new(df.at_zero.min(dg.at_zero), df.at_infinity.min(dg.at_infinity));
    let name = format!("({})*({})", fh.name(), gh.name());
    let (fs, gs) = (f.scales.clone(), g.scales.clone());
    let h = TestFunction::new(name, decay, move |u| {
        let lu = u.ln();
        // both factors decay, so the convolution vanishes at 0 and infinity
        if !lu.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let k = |x: f64| {
            let a = fh.eval(x.exp());
            if a.norm_sqr() == 0.0 {
                a
            } else {
                a * gh.eval((lu - x).exp())
            }
        };
        // the features of f locate the mass unless only g declares any
        let scales: Vec<(f64, f64)> = if fs.is_empty() { gs.iter().map(|&(c, w)| (lu - c, w)).collect() } else { fs.clone() };
        let r = if scales.is_empty() {
            integrate(k, Domain::RealLine, QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 4000 })
                .map(|r| r.value)
        } else {
            line_integral(&scales, k)
        };
        r.unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    });
    let majorant = match (&f.majorant, &g.majorant) {
        (Some(a), Some(b)) => {
            let (a, b) = (a.clone(), b.clone());
            Some(Arc::new(move |t| a(t) * b(t)) as Majorant)
        }
        _ => None,
    };
    let scales = f
        .scales
        .iter()
        .flat_map(|&(a, v)| g.scales.iter().map(move |&(b, w)| (a + b, (v * v + w * w).sqrt())))
        .collect();
    IdeleTestFunction { h, twist: f.twist.clone(), majorant, scales }
}

/// `f#(u) = u^-1 conj(f(1/u))`.
pub fn adjoint(f: &IdeleTestFunction) -> IdeleTestFunction {
    let fh = f.h.clone();
    let d = fh.decay();
    let decay = Decay::new(d.at_infinity - 1.0, d.at_zero + 1.0);
    let h = TestFunction::new(format!("({})#", fh.name()), decay, move |u| {
        let v = fh.eval(1.0 / u);
        if v.norm_sqr() == 0.0 {
            v
        } else {
            v.conj() / u
        }
    });
    let scales = f.scales.iter().map(|&(c, w)| (-c, w)).collect();
    IdeleTestFunction { h, twist: f.twist.clone(), majorant: f.majorant.clone(), scales }
}

/// `(d, d') = (h^(1), h^(0))`.
pub fn degrees(f: &IdeleTestFunction) -> Result<(Complex64, Complex64)> {
    Ok((fourier_hat(f, Complex64::new(1.0, 0.0))?, fourier_hat(f, Complex64::new(0.0, 0.0))?))
}

/// `Delta . Delta = -log |D|` for a number field of discriminant `D`.
pub fn self_intersection(discriminant: i64) -> Result<f64> {
    if discriminant == 0 {
        return Err(Error::input("discriminant must be nonzero"));
    }
    Ok(-(discriminant.unsigned_abs() as f64).ln())
}

#[derive(Debug, Clone, Copy)]
pub struct BalanceOptions {
    /// Largest tolerated bound on the zeros above the table height.
    pub zero_tail_tol: f64,
    /// Target bound on the prime powers beyond the cutoff.
    pub prime_tail_tol: f64,
    /// Exponents `k` of the cutoff ladder `t = 2^k` for the archimedean principal value.
    pub ladder: (u32, u32),
}

impl Default for BalanceOptions {
    fn default() -> Self {
        BalanceOptions { zero_tail_tol: 1e-8, prime_tail_tol: 1e-12, ladder: (6, 14) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSide {
    pub value: Complex64,
    pub tail: f64,
    pub zeros: usize,
}

/// `sum h^(1/2 + i gamma)` over tabulated ordinates `|gamma| <= height`, both signs for real
/// characters, with a bound on the omitted zeros from the line majorant and the zero density.
pub fn spectral_side(f: &IdeleTestFunction, zeros: &ZeroTable, height: f64, tol: f64) -> Result<SpectralSide> {
    let chi = primitive_twist(f)?;
    let ords = zeros.symmetric(height, chi.is_real());
    let value = ords
        .par_iter()
        .map(|&g| fourier_hat(f, Complex64::new(0.5, g)))
        .try_reduce(|| Complex64::new(0.0, 0.0), |a, b| Ok(a + b))?;
    let tail = zero_tail(f, chi.modulus() as f64, height)?;
    if tail > tol {
        return Err(Error::InsufficientZeros(format!("tail bound {tail:e} above {tol:e} at height {height}")));
    }
    Ok(SpectralSide { value, tail, zeros: ords.len() })
}

/// `2 int_E^inf M(t) log(q t / 2 pi) / 2 pi dt + 4 M(E) (0.14 log(q E) + 5)`: the density
/// of zeros plus the error term of the zero-counting function.
fn zero_tail(f: &IdeleTestFunction, q: f64, height: f64) -> Result<f64> {
    let e = height.max(2.0 * PI);
    let m = |t: f64| -> Result<f64> {
        match f.line_majorant(t) {
            Some(v) => Ok(v),
            None => Ok(fourier_hat(f, Complex64::new(0.5, t))?.norm()),
        }
    };
    // without a declared majorant, sample |h^| and take running maxima from the right
    let bound = if f.majorant.is_some() {
        let density = integrate(
            |t| Complex64::new(m(t).unwrap_or(f64::NAN) * (q * t / (2.0 * PI)).ln() / (2.0 * PI), 0.0),
            Domain::HalfLine(e),
            QuadOptions { abs_tol: 1e-16, rel_tol: 1e-8, max_intervals: 2000 },
        )?;
        2.0 * (density.value.re + density.error) + 4.0 * m(e)? * (0.14 * (q * e).ln() + 5.0)
    } else {
        let grid: Vec<f64> = (0..=32).map(|k| e * (1.0 + k as f64 / 8.0)).collect();
        let vals: Vec<f64> = grid.par_iter().map(|&t| m(t)).collect::<Result<_>>()?;
        let mut total = 0.0;
        for w in 0..grid.len() - 1 {
            let peak = vals[w..].iter().cloned().fold(0.0, f64::max);
            let dt = grid[w + 1] - grid[w];
            total += 2.0 * peak * dt * (q * grid[w + 1] / (2.0 * PI)).ln() / (2.0 * PI);
        }
        // beyond the grid, |h^| <= peak (T/t)^2
        let (t_end, last) = (grid[grid.len() - 1], vals[vals.len() - 1]);
        let beyond = 2.0 * last * t_end * ((q * t_end / (2.0 * PI)).ln() + 1.0) / (2.0 * PI);
        total + beyond + 4.0 * vals[0] * (0.14 * (q * e).ln() + 5.0)
    };
    Ok(bound)
}

fn primitive_twist(f: &IdeleTestFunction) -> Result<DirichletCharacter> {
    match &f.twist {
        Some(c) => Ok(c.primitive()),
        None => DirichletCharacter::principal(1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteTerm {
    pub value: Complex64,
    pub cutoff: u64,
    pub tail: f64,
}

/// `sum_(p^m <= X) log p (chi(p^m) h(p^m) + conj(chi(p^m)) p^-m h(p^-m))`, with `X` the first
/// power of 2 past which the dyadic-block bounds `1.04 * 2Y * max_[Y,2Y] |g|` sum below `tol`.
pub fn finite_places(f: &IdeleTestFunction, tol: f64) -> Result<FiniteTerm> {
    let chi = primitive_twist(f)?;
    let g = |x: f64| f.eval(x).norm() + f.eval(1.0 / x).norm() / x;
    let block = |y: f64| {
        let peak = (0..=16).map(|k| g(y * (1.0 + k as f64 / 16.0))).fold(0.0, f64::max);
        1.04 * 2.0 * y * peak
    };
    let mut blocks = Vec::new();
    let mut y = 2.0f64;
    loop {
        let b = block(y);
        if !b.is_finite() {
            return Err(Error::Convergence(format!("{} prime-power tail is not finite", f.h.name())));
        }
        blocks.push(b);
        let total: f64 = blocks.iter().sum();
        if (b < 1e-300 || b < total * 1e-17) && blocks.len() > 4 || blocks.len() > 200 {
            break;
        }
        y *= 2.0;
    }
    // tails[j] bounds the prime powers above 2^(j+1)
    let mut tails = vec![0.0; blocks.len()];
    let mut acc = 0.0;
    for j in (0..blocks.len()).rev() {
        acc += blocks[j];
        tails[j] = acc;
    }
    let j = tails
        .iter()
        .position(|t| *t <= tol)
        .ok_or_else(|| Error::Convergence(format!("prime-power tail {:e} stays above {tol:e}", tails[tails.len() - 1])))?;
    let cutoff = 1u64 << (j + 1);
    if cutoff > MAX_PRIME_CUTOFF {
        return Err(Error::Convergence(format!("prime-power cutoff {cutoff} above {MAX_PRIME_CUTOFF}")));
    }
    let tail = tails[j];
    let value = prime_powers_up_to(cutoff)
        .par_iter()
        .map(|&(p, _, n)| {
            let c = chi.value(n % chi.modulus());
            let x = n as f64;
            (p as f64).ln() * (c * f.eval(x) + c.conj() * f.eval(1.0 / x) / x)
        })
        .reduce(|| Complex64::new(0.0, 0.0), |a, b| a + b);
    Ok(FiniteTerm { value, cutoff, tail })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchTerm {
    pub value: Complex64,
    pub error: f64,
}

/// `int'_(R*) h(u^-1) / |1 - u| d*u` twisted by the sign character of parity `delta`: half the
/// cutoff principal value over `u > 0` plus `(-1)^delta / 2` times the regular `u < 0` part.
pub fn archimedean_geometric(f: &IdeleTestFunction, parity: u32, ladder: (u32, u32)) -> Result<ArchTerm> {
    let h = f.h.clone();
    let part = |im: bool| -> Result<(f64, f64)> {
        let pick = |v: Complex64| if im { v.im } else { v.re };
        let sym = |y: f64| {
            let a = pick(h.eval(y.exp()));
            let b = pick(h.eval((-y).exp()));
            let d = -(-y).exp_m1();
            a / d + b * (-y).exp() / d
        };
        let c = pick(h.eval(1.0));
        let pv = pf0_cutoff(&sym, c, ladder.0, ladder.1)?;
        let neg = integrate(
            |v| {
                let w = pick(h.eval(1.0 / v));
                Complex64::new(if w == 0.0 { 0.0 } else { w / (1.0 + v) }, 0.0)
            },
            Domain::MultiplicativeHalfLine,
            QuadOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 4000 },
        )?
        .value
        .re;
        let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok((0.5 * pv.value + 0.5 * sign * neg, 0.5 * pv.error))
    };
    let (re, e_re) = part(false)?;
    let (im, e_im) = if h_is_real(&f.h) { (0.0, 0.0) } else { part(true)? };
    Ok(ArchTerm { value: Complex64::new(re, im), error: e_re + e_im })
}

fn h_is_real(h: &TestFunction) -> bool {
    (-80..=80).all(|k| h.eval((k as f64 * 0.1).exp()).im == 0.0)
}

/// The same term as `(1/2 pi) int h^(1/2 + i t) (log pi - Re psi((1/2 + delta + i t)/2)) dt`.
pub fn archimedean_spectral(f: &IdeleTestFunction, parity: u32, t_max: f64) -> Result<ArchTerm> {
    let d = parity as f64;
    let failure = std::sync::Mutex::new(None);
    let bps: Vec<f64> = (1..(2.0 * t_max) as usize).map(|k| -t_max + k as f64).collect();
    let r = crate::numkernel::gauss_kronrod(
        |t| {
            let w = match digamma(Complex64::new((0.5 + d) / 2.0, t / 2.0)) {
                Ok(v) => PI.ln() - v.re,
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    0.0
                }
            };
            match fourier_hat(f, Complex64::new(0.5, t)) {
                Ok(v) => v * w / (2.0 * PI),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        -t_max,
        t_max,
        &bps,
        QuadOptions { abs_tol: 1e-12, rel_tol: 1e-11, max_intervals: 4000 },
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(ArchTerm { value: r.value, error: r.error })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitFormulaReport {
    pub function: String,
    pub modulus: u64,
    pub height: f64,
    pub zeros: usize,
    pub spectral_side: Complex64,
    pub spectral_tail: f64,
    pub hhat0: Complex64,
    pub hhat1: Complex64,
    pub delta_term: Complex64,
    pub conductor_term: Complex64,
    pub archimedean: Complex64,
    pub archimedean_error: f64,
    pub finite: Complex64,
    pub prime_cutoff: u64,
    pub finite_tail: f64,
    pub geometric_side: Complex64,
    pub residual: f64,
}

fn dec(x: f64) -> Value {
    Value::String(format!("{x:e}"))
}

fn cdec(z: Complex64) -> Value {
    json!({ "re": dec(z.re), "im": dec(z.im) })
}

impl ExplicitFormulaReport {
    /// All numbers as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "function": self.function,
            "modulus": self.modulus.to_string(),
            "height": dec(self.height),
            "zeros": self.zeros.to_string(),
            "spectral_side": cdec(self.spectral_side),
            "spectral_tail": dec(self.spectral_tail),
            "hhat0": cdec(self.hhat0),
            "hhat1": cdec(self.hhat1),
            "delta_term": cdec(self.delta_term),
            "conductor_term": cdec(self.conductor_term),
            "archimedean": cdec(self.archimedean),
            "archimedean_error": dec(self.archimedean_error),
            "finite": cdec(self.finite),
            "prime_cutoff": self.prime_cutoff.to_string(),
            "finite_tail": dec(self.finite_tail),
            "geometric_side": cdec(self.geometric_side),
            "residual": dec(self.residual),
        })
    }

    /// Bound on `residual` expected from truncations alone.
    pub fn budget(&self) -> f64 {
        self.spectral_tail + self.finite_tail + self.archimedean_error
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSide {
    pub hhat0: Complex64,
    pub hhat1: Complex64,
    pub delta_term: Complex64,
    pub conductor_term: Complex64,
    pub archimedean: ArchTerm,
    pub finite: FiniteTerm,
    pub total: Complex64,
}

/// `h^(0) + h^(1) - (Delta . Delta) h(1) - sum_v int'_v` over `Q`; for a primitive character of
/// conductor `q > 1` the poles drop out and `h(1) log q` enters.
pub fn geometric_side(f: &IdeleTestFunction, opts: &BalanceOptions) -> Result<GeometricSide> {
    let chi = primitive_twist(f)?;
    let zero = Complex64::new(0.0, 0.0);
    let h1 = f.eval(1.0);
    let (hhat0, hhat1) = if chi.modulus() == 1 {
        (fourier_hat(f, zero)?, fourier_hat(f, Complex64::new(1.0, 0.0))?)
    } else {
        (zero, zero)
    };
    let delta_term = self_intersection(1)? * h1;
    let conductor_term = (chi.modulus() as f64).ln() * h1;
    let (archimedean, finite) = rayon::join(
        || archimedean_geometric(f, chi.parity(), opts.ladder),
        || finite_places(f, opts.prime_tail_tol),
    );
    let (archimedean, finite) = (archimedean?, finite?);
    let total = hhat0 + hhat1 - delta_term + conductor_term - archimedean.value - finite.value;
    Ok(GeometricSide { hhat0, hhat1, delta_term, conductor_term, archimedean, finite, total })
}

/// Both sides of the explicit formula and their difference.
pub fn balance(f: &IdeleTestFunction, zeros: &ZeroTable, height: f64, opts: &BalanceOptions) -> Result<ExplicitFormulaReport> {
    let chi = primitive_twist(f)?;
    if zeros.modulus != chi.modulus() || (chi.modulus() > 1 && zeros.index != chi.index()) {
        return Err(Error::input(format!(
            "zero table is for character {} mod {}, the twist is {} mod {}",
            zeros.index,
            zeros.modulus,
            chi.index(),
            chi.modulus()
        )));
    }
    let (spec, geo) = rayon::join(|| spectral_side(f, zeros, height, opts.zero_tail_tol), || geometric_side(f, opts));
    let (spec, geo) = (spec?, geo?);
    Ok(ExplicitFormulaReport {
        function: f.h.name().to_string(),
        modulus: chi.modulus(),
        height,
        zeros: spec.zeros,
        spectral_side: spec.value,
        spectral_tail: spec.tail,
        hhat0: geo.hhat0,
        hhat1: geo.hhat1,
        delta_term: geo.delta_term,
        conductor_term: geo.conductor_term,
        archimedean: geo.archimedean.value,
        archimedean_error: geo.archimedean.error,
        finite: geo.finite.value,
        prime_cutoff: geo.finite.cutoff,
        finite_tail: geo.finite.tail,
        geometric_side: geo.total,
        residual: (spec.value - geo.total).norm(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    /// `sum |f^(rho)|^2` over the tabulated zeros.
    pub value: f64,
    /// The geometric side of `f * f#`.
    pub geometric: f64,
    pub residual: f64,
}

/// The Weil functional on `f * f#` from both sides of the formula.
pub fn positivity_form(f: &IdeleTestFunction, zeros: &ZeroTable, height: f64, opts: &BalanceOptions) -> Result<PositivityReport> {
    let chi = primitive_twist(f)?;
    let ords = zeros.symmetric(height, chi.is_real());
    let value: f64 = ords
        .par_iter()
        .map(|&g| fourier_hat(f, Complex64::new(0.5, g)).map(|v| v.norm_sqr()))
        .try_reduce(|| 0.0, |a, b| Ok(a + b))?;
    let ff = convolve(f, &adjoint(f));
    let geo = geometric_side(&ff, opts)?;
    Ok(PositivityReport { value, geometric: geo.total.re, residual: (geo.total - value).norm() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadicalRow {
    pub gamma: f64,
    pub value: f64,
    pub scale: f64,
}

/// `|int E(xi)(l) l^rho d*l|` at the first `k_max` ordinates, `scale` being the largest
/// value at nine points of `[gamma - 1, gamma + 1]`. No hypotheses are checked.
pub fn radical_values(xi: &AdelicFunction, zeros: &ZeroTable, k_max: usize) -> Result<Vec<RadicalRow>> {
    let tr = SummationTransform::new(xi, 1, TransformOptions::default())?;
    let at = |t: f64| tr.truncated_at(Complex64::new(0.5, t)).map(|v| v.norm());
    zeros
        .ordinates
        .iter()
        .filter(|g| **g > 0.0)
        .take(k_max)
        .map(|&g| {
            let value = at(g)?;
            let scale = (0..=8)
                .into_par_iter()
                .map(|k| at(g - 1.0 + 0.25 * k as f64))
                .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
            Ok(RadicalRow { gamma: g, value, scale })
        })
        .collect()
}

/// [`radical_values`] for `xi` vanishing at 0 with `int xi = 0`; returns the rows and the
/// largest `value / scale`.
pub fn radical_check(xi: &AdelicFunction, zeros: &ZeroTable, k_max: usize) -> Result<(Vec<RadicalRow>, f64)> {
    if xi.terms().is_empty() {
        return Ok((Vec::new(), 0.0));
    }
    if xi.decay().at_zero <= 0.0 {
        return Err(Error::ConditionsViolated("xi(0) != 0".into()));
    }
    let a = xi.haar_integral()?;
    let size = xi
        .terms()
        .iter()
        .map(|(_, f)| {
            let g = f.clone();
            TestFunction::real("|f|", f.decay(), move |l| g.eval(l).norm())
                .mellin_with(Complex64::new(1.0, 0.0), QuadOptions { abs_tol: 1e-14, rel_tol: 1e-6, max_intervals: 4000 })
                .map(|v| v.re)
        })
        .sum::<Result<f64>>()?;
    if a.norm() > 1e-10 * size.max(1e-300) {
        return Err(Error::ConditionsViolated(format!("int xi = {a} != 0")));
    }
    let rows = radical_values(xi, zeros, k_max)?;
    let worst = rows.iter().map(|r| if r.scale > 0.0 { r.value / r.scale } else { 0.0 }).fold(0.0, f64::max);
    Ok((rows, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::power;

    #[test]
    fn gaussian_transform() {
        let f = IdeleTestFunction::gaussian(1.0, 0.0, 1.0);
        let v = fourier_hat(&f, Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * PI).sqrt() * (0.125f64).exp()).abs() < 1e-10);
        assert_eq!(fourier_hat(&IdeleTestFunction::zero(), Complex64::new(0.5, 3.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dilation_covariance() {
        let f = IdeleTestFunction::gaussian(1.0, 0.2, 0.5);
        let rho = Complex64::new(0.5, 2.0);
        let a = fourier_hat(&f.dilate(3.0), rho).unwrap();
        let b = fourier_hat(&f, rho).unwrap() * power(3.0, rho);
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn discriminants() {
        assert_eq!(self_intersection(1).unwrap(), 0.0);
        assert!((self_intersection(-4).unwrap() + 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn empty_prime_range() {
        let f = IdeleTestFunction::new(TestFunction::log_bump(0.0, 0.6)).unwrap();
        let t = finite_places(&f, 1e-12).unwrap();
        assert_eq!(t.value, Complex64::new(0.0, 0.0));
    }
}
