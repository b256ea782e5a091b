use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn tol(abs_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            rel_tol: 0.0,
            ..Default::default()
        }
    }
}

/// Integration domains understood by [`integrate`].
#[derive(Debug, Clone, Copy)]
pub enum Domain {
    /// `[a, b]`, endpoint singularities allowed.
    Interval(f64, f64),
    /// `[a, infinity)`.
    HalfLine(f64),
    /// The whole real line.
    RealLine,
    /// `(0, infinity)` against `du / u`, integrated in the variable `log u`.
    MultiplicativeHalfLine,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn finite(v: Complex64, x: f64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("integrand at {x}")))
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = finite(f(c), c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = finite(f(c - x), c - x)?;
        let f2 = finite(f(c + x), c + x)?;
        kron += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    Ok((kron * h, ((kron - gauss) * h).norm()))
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Adaptive Gauss-Kronrod (7/15) on `[a, b]` with optional interior breakpoints.
pub fn gauss_kronrod<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::input("gauss_kronrod needs a finite interval"));
    }
    let mut pts = vec![a];
    pts.extend(breakpoints.iter().copied().filter(|&x| x > a.min(b) && x < a.max(b)));
    pts.push(b);
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    for w in pts.windows(2) {
        let (v, e) = gk15(&f, w[0], w[1])?;
        evals += 15;
        total += v;
        err += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }
    while err > opts.abs_tol.max(opts.rel_tol * total.norm()) {
        if heap.len() >= opts.max_intervals {
            return Err(Error::Convergence(format!(
                "gauss_kronrod on [{a}, {b}]: error {err:.3e} after {} intervals",
                heap.len()
            )));
        }
        let s = heap.pop().unwrap();
        let m = 0.5 * (s.a + s.b);
        if m <= s.a.min(s.b) || m >= s.a.max(s.b) {
            return Err(Error::Convergence(format!("gauss_kronrod: interval collapsed near {m}")));
        }
        let (v1, e1) = gk15(&f, s.a, m)?;
        let (v2, e2) = gk15(&f, m, s.b)?;
        evals += 30;
        total += v1 + v2 - s.value;
        err += e1 + e2 - s.error;
        heap.push(Segment { a: s.a, b: m, value: v1, error: e1 });
        heap.push(Segment { a: m, b: s.b, value: v2, error: e2 });
    }
    // recompute from the pieces to shed accumulated rounding
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult { value, error, evaluations: evals })
}

/// Node map of a double-exponential rule: `t -> (x, weight)`, or `None` when the node
/// is numerically outside the domain.
trait DeMap {
    fn node(&self, t: f64) -> Option<(f64, f64)>;
    fn t_max(&self) -> f64;
}

struct TanhSinh {
    a: f64,
    b: f64,
}

impl DeMap for TanhSinh {
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let len = self.b - self.a;
        let x = if u < 0.0 {
            self.a + len / (1.0 + (-2.0 * u).exp())
        } else {
            self.b - len / (1.0 + (2.0 * u).exp())
        };
        let cu = u.cosh();
        let w = 0.5 * len * FRAC_PI_2 * t.cosh() / (cu * cu);
        if x <= self.a || x >= self.b || w == 0.0 {
            None
        } else {
            Some((x, w))
        }
    }
    fn t_max(&self) -> f64 {
        4.5
    }
}

struct ExpSinh {
    a: f64,
}

impl DeMap for ExpSinh {
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let w = FRAC_PI_2 * t.cosh() * e;
        let x = self.a + e;
        if !x.is_finite() || !w.is_finite() || w == 0.0 || x == self.a {
            None
        } else {
            Some((x, w))
        }
    }
    fn t_max(&self) -> f64 {
        4.0
    }
}

struct SinhSinh;

impl DeMap for SinhSinh {
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let x = u.sinh();
        let w = FRAC_PI_2 * t.cosh() * u.cosh();
        if !x.is_finite() || !w.is_finite() {
            None
        } else {
            Some((x, w))
        }
    }
    fn t_max(&self) -> f64 {
        4.0
    }
}

/// Sinh-sinh nodes restricted to `|x| <= 700`, for integrands evaluated at `exp(x)`.
struct LogSinhSinh;

impl DeMap for LogSinhSinh {
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        SinhSinh.node(t).filter(|&(x, _)| x.abs() <= 700.0)
    }
    fn t_max(&self) -> f64 {
        3.5
    }
}

const DE_MAX_LEVEL: u32 = 12;
const DE_MIN_LEVEL: u32 = 3;

fn double_exponential<M: DeMap, F: Fn(f64) -> Complex64>(map: &M, f: &F, opts: QuadOptions) -> Result<QuadResult> {
    let t_max = map.t_max();
    let eval = |t: f64| -> Result<Complex64> {
        match map.node(t) {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some((x, w)) => Ok(finite(f(x), x)? * w),
        }
    };
    let mut h = 1.0;
    let mut sum = eval(0.0)?;
    let mut evals = 1;
    let mut k = 1.0;
    while k * h <= t_max {
        sum += eval(k * h)? + eval(-k * h)?;
        evals += 2;
        k += 1.0;
    }
    let mut prev = sum * h;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let mut add = Complex64::new(0.0, 0.0);
        let mut k = 1.0;
        while k * h <= t_max {
            add += eval(k * h)? + eval(-k * h)?;
            evals += 2;
            k += 2.0;
        }
        sum += add;
        let cur = sum * h;
        let err = (cur - prev).norm();
        if level >= DE_MIN_LEVEL && err <= opts.abs_tol.max(opts.rel_tol * cur.norm()) {
            return Ok(QuadResult { value: cur, error: err, evaluations: evals });
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "double-exponential quadrature did not reach {:.1e}",
        opts.abs_tol
    )))
}

/// Double-exponential quadrature on the given domain.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, domain: Domain, opts: QuadOptions) -> Result<QuadResult> {
    match domain {
        Domain::Interval(a, b) => {
            if !(a.is_finite() && b.is_finite()) || a >= b {
                return Err(Error::input(format!("bad interval [{a}, {b}]")));
            }
            double_exponential(&TanhSinh { a, b }, &f, opts)
        }
        Domain::HalfLine(a) => double_exponential(&ExpSinh { a }, &f, opts),
        Domain::RealLine => double_exponential(&SinhSinh, &f, opts),
        Domain::MultiplicativeHalfLine => double_exponential(&LogSinhSinh, &|x: f64| f(x.exp()), opts),
    }
}

pub fn integrate_real<F: Fn(f64) -> f64>(f: F, domain: Domain, opts: QuadOptions) -> Result<(f64, f64)> {
    let r = integrate(|x| Complex64::new(f(x), 0.0), domain, opts)?;
    Ok((r.value.re, r.error))
}
