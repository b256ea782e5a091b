//! Archimedean local factors from Hodge data, Weil principal values and the Lefschetz
//! formulas for complex and real places.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{
    digamma, extrapolate_to_zero, gauss_kronrod, integrate, log_gamma, Domain, QuadOptions, EULER_GAMMA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Real,
    Complex,
}

/// Hodge numbers `h^(p,q)` of `H^m`, with the split `h^(p,p) = h^(p,+) + h^(p,-)` of the
/// middle term used at real places.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeStructure {
    m: u32,
    hpq: BTreeMap<(u32, u32), u32>,
    hpm: Option<(u32, u32)>,
}

impl HodgeStructure {
    /// `hpm` gives `(h^(p,+), h^(p,-))` for `p = m/2`; when absent and `m` is even the split
    /// defaults to all `+`.
    pub fn new(m: u32, hpq: BTreeMap<(u32, u32), u32>, hpm: Option<(u32, u32)>) -> Result<Self> {
        for (&(p, q), &h) in &hpq {
            if p + q != m {
                return Err(Error::InvalidHodge(format!("h^({p},{q}) in weight {m}")));
            }
            if hpq.get(&(q, p)).copied().unwrap_or(0) != h {
                return Err(Error::InvalidHodge(format!("h^({p},{q}) != h^({q},{p})")));
            }
        }
        let hpq: BTreeMap<(u32, u32), u32> = hpq.into_iter().filter(|(_, h)| *h > 0).collect();
        let middle = if m.is_multiple_of(2) { hpq.get(&(m / 2, m / 2)).copied().unwrap_or(0) } else { 0 };
        let hpm = match hpm {
            Some((a, b)) => {
                if m % 2 == 1 {
                    return Err(Error::InvalidHodge("odd weight has no middle term".into()));
                }
                if a + b != middle {
                    return Err(Error::InvalidHodge(format!("h^+ + h^- = {} but h^(p,p) = {middle}", a + b)));
                }
                Some((a, b))
            }
            None if m.is_multiple_of(2) => Some((middle, 0)),
            None => None,
        };
        Ok(HodgeStructure { m, hpq, hpm })
    }

    pub fn from_pairs(m: u32, pairs: &[((u32, u32), u32)], hpm: Option<(u32, u32)>) -> Result<Self> {
        Self::new(m, pairs.iter().copied().collect(), hpm)
    }

    /// `H^0` of a point.
    pub fn point() -> Self {
        Self::from_pairs(0, &[((0, 0), 1)], Some((1, 0))).unwrap()
    }

    /// `H^1` of an elliptic curve.
    pub fn elliptic_h1() -> Self {
        Self::from_pairs(1, &[((1, 0), 1), ((0, 1), 1)], None).unwrap()
    }

    pub fn zero(m: u32) -> Self {
        Self::new(m, BTreeMap::new(), None).unwrap()
    }

    pub fn weight(&self) -> u32 {
        self.m
    }

    pub fn h(&self, p: u32, q: u32) -> u32 {
        self.hpq.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.hpq.iter().map(|(&(p, q), &h)| (p, q, h))
    }

    pub fn betti(&self) -> u32 {
        self.hpq.values().sum()
    }

    /// `(h^(p,+), h^(p,-))` at `p = m/2`.
    pub fn middle_split(&self) -> Option<(u32, u32)> {
        self.hpm
    }

    /// `k = h^(p,+) - h^(p,-)`.
    pub fn middle_k(&self) -> i64 {
        self.hpm.map(|(a, b)| a as i64 - b as i64).unwrap_or(0)
    }

    pub fn to_json(&self) -> HodgeJson {
        HodgeJson {
            m: self.m,
            hpq: self.hpq.iter().map(|(&(p, q), &h)| (format!("{p},{q}"), h)).collect(),
            hpm: self.hpm.map(|(a, b)| [((self.m / 2).to_string(), [a, b])].into_iter().collect()),
        }
    }

    pub fn from_json(j: &HodgeJson) -> Result<Self> {
        let mut hpq = BTreeMap::new();
        for (k, &h) in &j.hpq {
            let (p, q) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("Hodge index {k:?}")))?;
            hpq.insert((p, q), h);
        }
        let hpm = match &j.hpm {
            None => None,
            Some(map) => {
                if map.len() != 1 {
                    return Err(Error::InvalidHodge("hpm must have a single entry p = m/2".into()));
                }
                let (p, v) = map.iter().next().unwrap();
                if p.parse::<u32>().ok() != Some(j.m / 2) || j.m % 2 == 1 {
                    return Err(Error::InvalidHodge(format!("hpm given at p = {p} in weight {}", j.m)));
                }
                Some((v[0], v[1]))
            }
        };
        Self::new(j.m, hpq, hpm)
    }
}

/// `{"m": 1, "hpq": {"1,0": 1, "0,1": 1}, "hpm": {"0": [1, 0]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HodgeJson {
    pub m: u32,
    pub hpq: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hpm: Option<BTreeMap<String, [u32; 2]>>,
}

/// `Gamma_C(z) = (2 pi)^-z Gamma(z)` or `Gamma_R(z) = 2^(-1/2) pi^(-z/2) Gamma(z/2)`.
pub fn gamma_factor(place: Place, z: Complex64) -> Result<Complex64> {
    log_gamma_factor(place, z).map(|l| l.exp())
}

fn log_gamma_factor(place: Place, z: Complex64) -> Result<Complex64> {
    match place {
        Place::Complex => Ok(-z * (2.0 * PI).ln() + log_gamma(z)?),
        Place::Real => Ok(-0.5 * 2f64.ln() - z / 2.0 * PI.ln() + log_gamma(z / 2.0)?),
    }
}

/// `L_v(H^m, z)` as the product of Gamma factors prescribed by the Hodge numbers.
pub fn local_factor(h: &HodgeStructure, place: Place, z: Complex64) -> Result<Complex64> {
    let mut log = Complex64::new(0.0, 0.0);
    match place {
        Place::Complex => {
            for (p, q, n) in h.terms() {
                log += n as f64 * log_gamma_factor(Place::Complex, z - p.min(q) as f64)?;
            }
        }
        Place::Real => {
            for (p, q, n) in h.terms() {
                if p < q {
                    log += n as f64 * log_gamma_factor(Place::Complex, z - p as f64)?;
                }
            }
            if let Some((plus, minus)) = h.middle_split() {
                let p = (h.weight() / 2) as f64;
                if plus > 0 {
                    log += plus as f64 * log_gamma_factor(Place::Real, z - p)?;
                }
                if minus > 0 {
                    log += minus as f64 * log_gamma_factor(Place::Real, z - p + 1.0)?;
                }
            }
        }
    }
    Ok(log.exp())
}

/// Element `w j^eps` of the Weil group of `R` (`eps = 0` only, at complex places).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilGroupElement {
    pub w: Complex64,
    pub eps: u8,
}

/// Trace of `pi(H^m, u)`: `sum h^(p,q) w^-p conj(w)^-q` on `C*`; on `C* j` only `H^(p,p)`
/// contributes, with trace `k (w conj(w))^-p`.
pub fn rep_trace(h: &HodgeStructure, u: WeilGroupElement) -> Result<Complex64> {
    if u.w.norm_sqr() == 0.0 {
        return Err(Error::input("w must be nonzero"));
    }
    match u.eps {
        0 => Ok(h
            .terms()
            .map(|(p, q, n)| n as f64 * u.w.powi(-(p as i32)) * u.w.conj().powi(-(q as i32)))
            .sum()),
        1 => {
            if h.weight() % 2 == 1 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let p = (h.weight() / 2) as i32;
            Ok(Complex64::new(h.middle_k() as f64 * u.w.norm_sqr().powi(-p), 0.0))
        }
        e => Err(Error::input(format!("eps must be 0 or 1, got {e}"))),
    }
}

/// `f_0(nu) = min(nu^(1/2), nu^(-1/2))`.
pub fn f0(nu: f64) -> f64 {
    nu.sqrt().min(1.0 / nu.sqrt())
}

/// `(1/2 pi) int e^(i n theta) / |1 - e^(i theta) rho|^2 d theta = f_0(nu)^|n| / |1 - nu|`, `nu = rho^2`.
pub fn fiber_integral(n: i64, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::input("nu must be positive"));
    }
    if nu == 1.0 {
        return Err(Error::Singularity("fiber integral at nu = 1".into()));
    }
    Ok(f0(nu).powi(n.unsigned_abs() as i32) / (1.0 - nu).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PvScheme {
    /// `PF_0` with the cutoff `f_0^(2t)`, `t = 2^k` for `k_min..=k_max`, extrapolated in `1/t`.
    WeilCutoff { k_min: u32, k_max: u32 },
    /// Finite part after `|1 - nu| -> |1 - nu|^(1 - eps)`, plus the constant `2(log 2 pi + gamma)`.
    MinimalSubtraction,
}

impl PvScheme {
    pub fn cutoff() -> Self {
        PvScheme::WeilCutoff { k_min: 4, k_max: 12 }
    }
}

/// The integrand `psi(nu) = nu^(1/2 + i s) f_0(nu)^|n| / |1 - nu|` of the twist `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalValueSpec {
    pub n: i64,
    pub s: f64,
    pub scheme: PvScheme,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvValue {
    pub value: f64,
    pub error: f64,
    /// The constant `c` of the `2 c log t` divergence, re-derived from the top of the ladder.
    pub c_estimate: f64,
}

fn quad_opts() -> QuadOptions {
    QuadOptions { abs_tol: 1e-14, rel_tol: 1e-14, max_intervals: 8000 }
}

/// `PF_0 int psi d*nu` for `psi` given through `sym(y) = psi(e^-y) + psi(e^y)`, `y > 0`,
/// with `psi - c f_1^-1` integrable.
pub fn pf0_cutoff(sym: &(dyn Fn(f64) -> f64 + Sync), c: f64, k_min: u32, k_max: u32) -> Result<PvValue> {
    if k_max < k_min + 2 {
        return Err(Error::input("the t ladder needs at least three rungs"));
    }
    let opts = quad_opts();
    // for y >= 1 the cutoff factor 1 - e^(-t y) is 1 to double precision once t >= 40
    let tail = integrate(|y| Complex64::new(sym(y), 0.0), Domain::HalfLine(1.0), opts)?.value.re;
    let rungs: Vec<(f64, f64)> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let t = 2f64.powi(k as i32);
            let f = |y: f64| Complex64::new(-(-t * y).exp_m1() * sym(y), 0.0);
            let bps: Vec<f64> = [1.0, 4.0, 16.0, 64.0, 256.0].iter().map(|b| b / t).filter(|b| *b < 1.0).collect();
            let head = gauss_kronrod(f, 0.0, 1.0, &bps, opts)?.value.re;
            let extra = if t < 40.0 {
                integrate(|y| Complex64::new((-t * y).exp() * sym(y), 0.0), Domain::HalfLine(1.0), opts)?.value.re
            } else {
                0.0
            };
            Ok((1.0 / t, head + tail - extra - 2.0 * c * t.ln()))
        })
        .collect::<Result<_>>()?;
    let hs: Vec<f64> = rungs.iter().map(|r| r.0).collect();
    let ys: Vec<f64> = rungs.iter().map(|r| r.1).collect();
    let (limit, err) = extrapolate_to_zero(&hs, &ys);
    if !limit.is_finite() || err > 1e-4 {
        return Err(Error::Convergence(format!("t-ladder extrapolation unstable (error {err:e})")));
    }
    // slope of the unsubtracted integral against 2 log t at the top rungs
    let n = rungs.len();
    let (h1, y1) = rungs[n - 2];
    let (h2, y2) = rungs[n - 1];
    let i1 = y1 + 2.0 * c * h1.recip().ln();
    let i2 = y2 + 2.0 * c * h2.recip().ln();
    let c_estimate = (i2 - i1) / (2.0 * (h1 / h2).ln());
    Ok(PvValue { value: 2.0 * (2.0 * PI).ln() * c + limit, error: err, c_estimate })
}

/// `psi(e^-y) + psi(e^y) = 2 cos(s y) e^(-a y) / (1 - e^-y)` with `a = (1 + |n|)/2`.
fn standard_sym(n: i64, s: f64) -> impl Fn(f64) -> f64 + Sync {
    let a = 0.5 + n.unsigned_abs() as f64 / 2.0;
    move |y: f64| 2.0 * (s * y).cos() * (-a * y).exp() / -(-y).exp_m1()
}

/// Finite part `int_0^1 (x^(b-1) - 1) / (1 - x) dx` of the `eps`-regularised Beta integral.
fn minimal_subtraction_part(b: Complex64) -> Result<Complex64> {
    let f = |x: f64| {
        let xb = (b - 1.0) * x.ln();
        let num = xb.exp() - 1.0;
        if x == 1.0 {
            b - 1.0
        } else {
            num / (1.0 - x)
        }
    };
    Ok(integrate(f, Domain::Interval(0.0, 1.0), quad_opts())?.value)
}

pub fn weil_pv(spec: &PrincipalValueSpec) -> Result<PvValue> {
    match spec.scheme {
        PvScheme::WeilCutoff { k_min, k_max } => pf0_cutoff(&standard_sym(spec.n, spec.s), 1.0, k_min, k_max),
        PvScheme::MinimalSubtraction => {
            let b = Complex64::new(0.5 + spec.n.unsigned_abs() as f64 / 2.0, spec.s);
            let fp = minimal_subtraction_part(b)?;
            let value = 2.0 * fp.re + 2.0 * ((2.0 * PI).ln() + EULER_GAMMA);
            Ok(PvValue { value, error: 1e-12, c_estimate: 1.0 })
        }
    }
}

/// `2 log 2 pi - psi(a + i s) - psi(a - i s)`, `a = (1 + |n|)/2`: the closed form of `weil_pv`.
pub fn weil_pv_digamma(n: i64, s: f64) -> Result<f64> {
    let a = Complex64::new(0.5 + n.unsigned_abs() as f64 / 2.0, s);
    Ok(2.0 * (2.0 * PI).ln() - 2.0 * digamma(a)?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

/// `-2 d/ds Im log Gamma_C(w + i s) = 2 log 2 pi - 2 Re psi(w + i s)`.
fn dlog_gamma_c(w: f64, s: f64) -> Result<f64> {
    Ok(2.0 * (2.0 * PI).ln() - 2.0 * digamma(Complex64::new(w, s))?.re)
}

/// `-2 d/ds Im log Gamma_R(w + i s) = log pi - Re psi((w + i s)/2)`.
fn dlog_gamma_r(w: f64, s: f64) -> Result<f64> {
    Ok(PI.ln() - digamma(Complex64::new(w / 2.0, s / 2.0))?.re)
}

/// `int' Trace(pi(H^m, u)) |u|^z / |1 - u| d*u` over `C*` (cutoff principal values of each
/// `(p, q)` term) against `-2 d/ds Im log L_C(H^m, z)`, `z = (1 + m)/2 + i s`.
pub fn lefschetz_complex(h: &HodgeStructure, s: f64) -> Result<LefschetzReport> {
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    let mut cache: BTreeMap<u64, f64> = BTreeMap::new();
    let z_re = (1.0 + h.weight() as f64) / 2.0;
    for (p, q, n) in h.terms() {
        let tw = p as i64 - q as i64;
        let pv = match cache.get(&tw.unsigned_abs()) {
            Some(v) => *v,
            None => {
                let v = weil_pv(&PrincipalValueSpec { n: tw, s, scheme: PvScheme::cutoff() })?.value;
                cache.insert(tw.unsigned_abs(), v);
                v
            }
        };
        lhs += n as f64 * pv;
        rhs += n as f64 * dlog_gamma_c(z_re - p.min(q) as f64, s)?;
    }
    Ok(LefschetzReport { s, lhs, rhs, diff: (lhs - rhs).abs() })
}

/// `int_(R+*) v^w / (1 + v) d*v` by quadrature, `0 < Re w < 1`.
pub fn j_part_integral(w: Complex64) -> Result<Complex64> {
    if !(w.re > 0.0 && w.re < 1.0) {
        return Err(Error::Convergence(format!("j-part integral diverges at {w}")));
    }
    let f = |v: f64| {
        let lv = v.ln();
        // v^w / (1 + v) computed stably at both ends
        if lv > 0.0 {
            ((w - 1.0) * lv).exp() / (1.0 + (-lv).exp())
        } else {
            (w * lv).exp() / (1.0 + v)
        }
    };
    Ok(integrate(f, Domain::MultiplicativeHalfLine, quad_opts())?.value)
}

/// The same identity over the Weil group of `R`: half the complex-place principal values plus
/// `(k/2) int v^(z-p) / (1 + v) d*v` from `C* j` (where `|1 - w j|_H = 1 + |w|^2`), against
/// `-2 d/ds Im log L_R(H^m, z)`.
pub fn lefschetz_real(h: &HodgeStructure, s: f64) -> Result<LefschetzReport> {
    let complex = lefschetz_complex(h, s)?;
    let mut lhs = 0.5 * complex.lhs;
    let z_re = (1.0 + h.weight() as f64) / 2.0;
    let k = h.middle_k();
    if h.weight().is_multiple_of(2) && k != 0 {
        let p = (h.weight() / 2) as f64;
        lhs += 0.5 * k as f64 * j_part_integral(Complex64::new(z_re - p, s))?.re;
    }
    let mut rhs = 0.0;
    for (p, q, n) in h.terms() {
        if p < q {
            rhs += n as f64 * dlog_gamma_c(z_re - p as f64, s)?;
        }
    }
    if let Some((plus, minus)) = h.middle_split() {
        let p = (h.weight() / 2) as f64;
        rhs += plus as f64 * dlog_gamma_r(z_re - p, s)? + minus as f64 * dlog_gamma_r(z_re - p + 1.0, s)?;
    }
    Ok(LefschetzReport { s, lhs, rhs, diff: (lhs - rhs).abs() })
}

/// `d/ds Im log L_v(H^m, (1 + m)/2 + i s)` from digamma values.
pub fn dlog_local_factor(h: &HodgeStructure, place: Place, s: f64) -> Result<f64> {
    let z_re = (1.0 + h.weight() as f64) / 2.0;
    let mut total = 0.0;
    match place {
        Place::Complex => {
            for (p, q, n) in h.terms() {
                total += n as f64 * dlog_gamma_c(z_re - p.min(q) as f64, s)?;
            }
        }
        Place::Real => {
            for (p, q, n) in h.terms() {
                if p < q {
                    total += n as f64 * dlog_gamma_c(z_re - p as f64, s)?;
                }
            }
            if let Some((plus, minus)) = h.middle_split() {
                let p = (h.weight() / 2) as f64;
                total += plus as f64 * dlog_gamma_r(z_re - p, s)? + minus as f64 * dlog_gamma_r(z_re - p + 1.0, s)?;
            }
        }
    }
    Ok(-0.5 * total)
}

/// `<N_s(E)> = sum_v (1/pi) int_(-E)^E d/ds Im log L_v(H^m, (1 + m)/2 + i s) ds`, the average
/// number of zeros with `|Im rho| <= E`.
pub fn zero_count_average(h: &HodgeStructure, places: &[Place], e: f64) -> Result<f64> {
    if !(e >= 0.0) {
        return Err(Error::input("E must be nonnegative"));
    }
    if e == 0.0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for &v in places {
        let failure = std::cell::RefCell::new(None);
        let bps: Vec<f64> = (1..(2.0 * e) as usize).map(|k| -e + k as f64).collect();
        let r = gauss_kronrod(
            |s| match dlog_local_factor(h, v, s) {
                Ok(x) => Complex64::new(x, 0.0),
                Err(err) => {
                    failure.borrow_mut().get_or_insert(err);
                    Complex64::new(0.0, 0.0)
                }
            },
            -e,
            e,
            &bps,
            QuadOptions { abs_tol: 1e-11, rel_tol: 1e-12, max_intervals: 20_000 },
        )?;
        if let Some(err) = failure.into_inner() {
            return Err(err);
        }
        total += r.value.re / PI;
    }
    Ok(total)
}

/// One-sided smooth count `#{0 < Im rho <= E}`: half the symmetric average plus half the
/// number of poles of the completed function on the real axis (2 for zeta).
pub fn smooth_zero_count(h: &HodgeStructure, places: &[Place], e: f64, poles: u32) -> Result<f64> {
    Ok(0.5 * zero_count_average(h, places, e)? + 0.5 * poles as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn factors() {
        assert!((gamma_factor(Place::Complex, c(1.0)).unwrap().re - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((gamma_factor(Place::Real, c(1.0)).unwrap().re - 0.5f64.sqrt()).abs() < 1e-14);
        for z in [c(1.0), c(2.0), Complex64::new(0.5, 3.0)] {
            let l = gamma_factor(Place::Real, z).unwrap() * gamma_factor(Place::Real, z + 1.0).unwrap();
            let r = gamma_factor(Place::Complex, z).unwrap();
            assert!((l / r - 1.0).norm() < 1e-12);
        }
        let z = Complex64::new(1.3, 0.4);
        let e = HodgeStructure::elliptic_h1();
        let gc = gamma_factor(Place::Complex, z).unwrap();
        assert!((local_factor(&e, Place::Complex, z).unwrap() / (gc * gc) - 1.0).norm() < 1e-12);
        assert!((local_factor(&e, Place::Real, z).unwrap() / gc - 1.0).norm() < 1e-12);
        let gr = gamma_factor(Place::Real, z).unwrap();
        assert!((local_factor(&HodgeStructure::point(), Place::Real, z).unwrap() / gr - 1.0).norm() < 1e-12);
    }

    #[test]
    fn traces() {
        let e = HodgeStructure::elliptic_h1();
        let w = Complex64::from_polar(2.0, 0.7);
        let t = rep_trace(&e, WeilGroupElement { w, eps: 0 }).unwrap();
        assert!((t.re - 2.0 * 0.7f64.cos() / 2.0).abs() < 1e-15 && t.im.abs() < 1e-15);
        assert_eq!(rep_trace(&e, WeilGroupElement { w: c(1.0), eps: 0 }).unwrap(), c(2.0));
        let h = HodgeStructure::from_pairs(2, &[((1, 1), 2)], Some((1, 1))).unwrap();
        assert_eq!(rep_trace(&h, WeilGroupElement { w, eps: 1 }).unwrap(), c(0.0));
    }

    #[test]
    fn hodge_validation() {
        assert!(HodgeStructure::from_pairs(1, &[((1, 0), 1)], None).is_err());
        assert!(HodgeStructure::from_pairs(2, &[((1, 1), 1)], Some((1, 1))).is_err());
        let h = HodgeStructure::from_pairs(2, &[((2, 0), 1), ((0, 2), 1), ((1, 1), 3)], Some((2, 1))).unwrap();
        let back = HodgeStructure::from_json(&serde_json::from_str(&serde_json::to_string(&h.to_json()).unwrap()).unwrap()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn fiber_examples() {
        assert!((fiber_integral(0, 0.25).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((fiber_integral(2, 4.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!(matches!(fiber_integral(1, 1.0), Err(Error::Singularity(_))));
    }

    #[test]
    fn quoted_identity() {
        let v = weil_pv(&PrincipalValueSpec { n: 1, s: 0.0, scheme: PvScheme::cutoff() }).unwrap();
        assert!((v.value - 2.0 * ((2.0 * PI).ln() + EULER_GAMMA)).abs() < 1e-8, "{v:?}");
        assert!((v.c_estimate - 1.0).abs() < 1e-2, "{v:?}");
    }

    #[test]
    fn j_part_at_half() {
        assert!((j_part_integral(c(0.5)).unwrap().re - PI).abs() < 1e-10);
    }
}
