//! Thermodynamics of the BC system in its type I representations on `l^2(N*)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::endomotive::{CrossedElement, CrossedJson, GroupRingElement};
use crate::error::{Error, Result};
use crate::numkernel::{hurwitz_zeta, NeumaierSum};
use crate::testfn::{AdelicFunction, TestFunction};

/// Dense complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn add_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] += v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        out.data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    row[j] += a * other.data[k * n + j];
                }
            }
        });
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry difference over the columns `0..cols`.
    pub fn max_diff_columns(&self, other: &CMatrix, cols: usize) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..cols.min(self.n) {
                d = d.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        d
    }
}

/// The representation `pi_(u, l)` on `l^2(N*)` cut off at `n_max`, with `u` a unit modulo
/// `modulus` (through its integer representative) and `H = log n + log l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnsTruncation {
    pub n_max: usize,
    pub u: u64,
    pub modulus: u64,
    pub lambda: f64,
}

/// `lcm(1, ..., 16)`: every level built from `n <= 16` divides it.
pub const DEFAULT_MODULUS: u64 = 720_720;

impl GnsTruncation {
    pub fn new(n_max: usize, u: u64, modulus: u64, lambda: f64) -> Result<Self> {
        if n_max == 0 || modulus == 0 {
            return Err(Error::input("n_max and modulus must be positive"));
        }
        if gcd(u, modulus) != 1 {
            return Err(Error::NotAUnit(format!("{u} mod {modulus}")));
        }
        if !(lambda > 0.0) {
            return Err(Error::input("lambda must be positive"));
        }
        Ok(GnsTruncation { n_max, u: u % modulus, modulus, lambda })
    }

    pub fn standard(n_max: usize) -> Self {
        GnsTruncation { n_max, u: 1, modulus: DEFAULT_MODULUS, lambda: 1.0 }
    }

    fn check_level(&self, level: u64) -> Result<()> {
        if !self.modulus.is_multiple_of(level) {
            return Err(Error::LevelMismatch(format!("level {level} does not divide {}", self.modulus)));
        }
        Ok(())
    }
}

/// Values `a(j u)` for `j` modulo the level of `a`.
fn character_table(a: &GroupRingElement, u: u64) -> Vec<Complex64> {
    let l = a.level();
    (0..l).map(|j| a.character_value((j * (u % l)) % l)).collect()
}

/// Matrix of `pi_u(x)`: `U*_(n1) a U_(n2)` sends `e_m` to `a(n2 m u) e_(n2 m / n1)` (or 0).
pub fn represent(x: &CrossedElement, t: &GnsTruncation) -> Result<CMatrix> {
    represent_weighted(x, t, |_| Complex64::new(1.0, 0.0))
}

fn represent_weighted(x: &CrossedElement, t: &GnsTruncation, col: impl Fn(usize) -> Complex64) -> Result<CMatrix> {
    let n = t.n_max;
    let mut out = CMatrix::zeros(n);
    for (n1, a, n2) in x.monomials() {
        t.check_level(a.level())?;
        let table = character_table(a, t.u);
        let l = a.level() as usize;
        for m in 1..=n {
            let img = n2 as usize * m;
            if !img.is_multiple_of(n1 as usize) {
                continue;
            }
            let row = img / n1 as usize;
            if row > n {
                continue;
            }
            out.add_at(row - 1, m - 1, table[img % l] * col(m));
        }
    }
    Ok(out)
}

/// Largest index `n` of the semigroup elements in `x`.
pub fn max_semigroup_index(x: &CrossedElement) -> u64 {
    x.monomials().map(|(n1, _, n2)| n1.max(n2)).max().unwrap_or(1)
}

/// Defect `|pi(x y) - pi(x) pi(y)|` on the columns where truncation cannot interfere.
pub fn representation_defect(x: &CrossedElement, y: &CrossedElement, t: &GnsTruncation) -> Result<f64> {
    let lhs = represent(&x.mul(y)?, t)?;
    let rhs = represent(x, t)?.mul(&represent(y, t)?);
    let cols = t.n_max / max_semigroup_index(y) as usize;
    Ok(lhs.max_diff_columns(&rhs, cols))
}

/// `sum_(n <= n_max) n^-beta` with the bound `n_max^(1-beta) / (beta - 1)` on the tail.
pub fn partition_function(beta: f64, n_max: usize) -> Result<(f64, f64)> {
    if !(beta > 1.0) {
        return Err(Error::Divergence(format!("partition function diverges at beta = {beta}")));
    }
    let mut s = NeumaierSum::default();
    for n in (1..=n_max).rev() {
        s.add((n as f64).powf(-beta));
    }
    Ok((s.value(), tail_bound(beta, n_max)))
}

pub fn tail_bound(beta: f64, n_max: usize) -> f64 {
    (n_max as f64).powf(1.0 - beta) / (beta - 1.0)
}

/// A value with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GibbsMode {
    /// Sum over `n <= n_max`.
    Truncated(usize),
    /// Full sum through Hurwitz zeta values.
    Exact,
}

/// The Gibbs state `Trace(pi_u(x) e^(-beta H)) / Trace(e^(-beta H))` at `u`.
pub struct GibbsState {
    beta: f64,
    u: u64,
    mode: GibbsMode,
    z: f64,
    tail: f64,
    residues: Mutex<HashMap<u64, Arc<Vec<f64>>>>,
}

impl std::fmt::Debug for GibbsState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GibbsState")
            .field("beta", &self.beta)
            .field("u", &self.u)
            .field("mode", &self.mode)
            .field("z", &self.z)
            .field("tail", &self.tail)
            .finish()
    }
}

impl GibbsState {
    pub fn new(beta: f64, u: u64, mode: GibbsMode) -> Result<Self> {
        if !(beta > 1.0) {
            return Err(Error::Divergence(format!("no Gibbs state at beta = {beta}")));
        }
        let (z, tail) = match mode {
            GibbsMode::Truncated(n) => partition_function(beta, n)?,
            GibbsMode::Exact => (hurwitz_zeta(Complex64::new(beta, 0.0), 1.0)?.re, 0.0),
        };
        Ok(GibbsState { beta, u, mode, z, tail, residues: Mutex::new(HashMap::new()) })
    }

    pub fn truncated(beta: f64, n_max: usize) -> Result<Self> {
        Self::new(beta, 1, GibbsMode::Truncated(n_max))
    }

    pub fn exact(beta: f64) -> Result<Self> {
        Self::new(beta, 1, GibbsMode::Exact)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn partition(&self) -> f64 {
        self.z
    }

    /// Tail bound of the partition function.
    pub fn tail_bound(&self) -> f64 {
        self.tail
    }

    /// `S_r = sum_(n = r mod L) n^-beta` for `r = 0..L`.
    fn residue_sums(&self, l: u64) -> Result<Arc<Vec<f64>>> {
        if let Some(v) = self.residues.lock().unwrap().get(&l) {
            return Ok(v.clone());
        }
        let v = match self.mode {
            GibbsMode::Truncated(n_max) => {
                let l_us = l as usize;
                (0..l_us)
                    .into_par_iter()
                    .map(|r| {
                        let mut s = NeumaierSum::default();
                        let first = if r == 0 { l_us } else { r };
                        let mut n = first;
                        while n <= n_max {
                            s.add((n as f64).powf(-self.beta));
                            n += l_us;
                        }
                        s.value()
                    })
                    .collect::<Vec<f64>>()
            }
            GibbsMode::Exact => {
                let s = Complex64::new(self.beta, 0.0);
                let scale = (l as f64).powf(-self.beta);
                let mut v = vec![0.0; l as usize];
                for r in 1..=l {
                    v[(r % l) as usize] = scale * hurwitz_zeta(s, r as f64 / l as f64)?.re;
                }
                v
            }
        };
        let v = Arc::new(v);
        self.residues.lock().unwrap().insert(l, v.clone());
        Ok(v)
    }

    /// Expectation of `a` in the group ring.
    pub fn expect_group_ring(&self, a: &GroupRingElement) -> Result<Estimate> {
        if a.is_zero() {
            return Ok(Estimate { value: Complex64::new(0.0, 0.0), bound: 0.0 });
        }
        let sums = self.residue_sums(a.level())?;
        let table = character_table(a, self.u);
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for (v, s) in table.iter().zip(sums.iter()) {
            re.add(v.re * s);
            im.add(v.im * s);
        }
        let value = Complex64::new(re.value(), im.value()) / self.z;
        let bound = match self.mode {
            GibbsMode::Truncated(_) => 2.0 * a.l1_norm() * self.tail / self.z,
            GibbsMode::Exact => 1e-14 * a.l1_norm(),
        };
        Ok(Estimate { value, bound })
    }

    /// Only `U*_1 a U_1` contributes to the trace.
    pub fn expect(&self, x: &CrossedElement) -> Result<Estimate> {
        self.expect_group_ring(&x.diagonal_part())
    }

    /// `phi(x y)`, multiplying out only the pairs of monomials whose product is diagonal.
    pub fn expect_product(&self, x: &CrossedElement, y: &CrossedElement) -> Result<Estimate> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for xi in split(x) {
            let (n1, _, n2) = xi.monomials().next().expect("monomial");
            for yj in split(y) {
                let (n3, _, n4) = yj.monomials().next().expect("monomial");
                if n1 * n3 != n2 * n4 {
                    continue;
                }
                let e = self.expect(&xi.mul(&yj)?)?;
                value += e.value;
                bound += e.bound;
            }
        }
        Ok(Estimate { value, bound })
    }

    pub fn expect_evolved(&self, x: &EvolvedElement) -> Result<Estimate> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for (c, m) in &x.terms {
            let e = self.expect(m)?;
            value += c * e.value;
            bound += c.norm() * e.bound;
        }
        Ok(Estimate { value, bound })
    }
}

/// A complex combination of normal-form monomials, the range of the time evolution.
#[derive(Debug, Clone, Default)]
pub struct EvolvedElement {
    pub terms: Vec<(Complex64, CrossedElement)>,
}

impl EvolvedElement {
    pub fn from_crossed(x: &CrossedElement) -> Self {
        EvolvedElement { terms: split(x).into_iter().map(|m| (Complex64::new(1.0, 0.0), m)).collect() }
    }

    /// `sigma_t` scales `U*_(n1) a U_(n2)` by `(n2/n1)^(it)`.
    pub fn evolve(&self, t: f64) -> Self {
        EvolvedElement {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| {
                    let (n1, _, n2) = m.monomials().next().expect("single monomial");
                    (c * ratio_power(n1, n2, Complex64::new(0.0, t)), m.clone())
                })
                .collect(),
        }
    }

    /// The scalar in front of each monomial, monomials listed in normal form.
    pub fn phases(&self) -> Vec<Complex64> {
        self.terms.iter().map(|(c, _)| *c).collect()
    }
}

fn split(x: &CrossedElement) -> Vec<CrossedElement> {
    x.monomials()
        .map(|(n1, a, n2)| CrossedElement::monomial(n1, a.clone(), n2).expect("normal-form monomial"))
        .collect()
}

/// `(n2/n1)^z`.
fn ratio_power(n1: u64, n2: u64, z: Complex64) -> Complex64 {
    (z * ((n2 as f64).ln() - (n1 as f64).ln())).exp()
}

pub fn time_evolve(x: &CrossedElement, t: f64) -> EvolvedElement {
    EvolvedElement::from_crossed(x).evolve(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KmsRow {
    pub t: f64,
    pub residual: f64,
    pub bound: f64,
}

/// `|F(t + i beta) - phi(sigma_t(y) x)|` where `F(z) = sum_j k_j^(iz) phi(x y_j)` is the
/// analytic continuation of `t -> phi(x sigma_t(y))`, `y = sum_j y_j` in monomials of ratio `k_j`.
pub fn kms_verify(x: &CrossedElement, y: &CrossedElement, state: &GibbsState, ts: &[f64]) -> Result<Vec<KmsRow>> {
    let beta = state.beta();
    let mut parts = Vec::new();
    for yj in split(y) {
        let (n1, _, n2) = yj.monomials().next().expect("monomial");
        let xy = state.expect_product(x, &yj)?;
        let yx = state.expect_product(&yj, x)?;
        parts.push((n1, n2, xy, yx));
    }
    let rows = ts
        .iter()
        .map(|&t| {
            let mut diff = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            for (n1, n2, xy, yx) in &parts {
                let shift = ratio_power(*n1, *n2, Complex64::new(-beta, 0.0));
                let phase = ratio_power(*n1, *n2, Complex64::new(0.0, t));
                diff += phase * (shift * xy.value - yx.value);
                bound += shift.norm() * xy.bound + yx.bound;
            }
            KmsRow { t, residual: diff.norm(), bound }
        })
        .collect();
    Ok(rows)
}

pub fn kms_csv(rows: &[KmsRow]) -> String {
    let mut s = String::from("t,residual,bound\n");
    for r in rows {
        s.push_str(&format!("{},{:.6e},{:.6e}\n", r.t, r.residual, r.bound));
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KmsPairJson {
    pub x: CrossedJson,
    pub y: CrossedJson,
}

/// One term `f(k, rho, l) = a(rho) g(l)` supported at `k = n2/n1`, attached to the monomial
/// `U*_(n1) a U_(n2)`.
#[derive(Debug, Clone)]
pub struct DualTerm {
    pub n1: u64,
    pub a: GroupRingElement,
    pub n2: u64,
    pub profile: TestFunction,
}

/// An element of the dual system, a finite sum of [`DualTerm`]s.
#[derive(Debug, Clone, Default)]
pub struct DualElement {
    pub terms: Vec<DualTerm>,
}

impl DualElement {
    pub fn single(n1: u64, a: GroupRingElement, n2: u64, profile: TestFunction) -> Self {
        DualElement { terms: vec![DualTerm { n1, a, n2, profile }] }
    }

    /// Terms with `k = 1` as a function on `Z^ x R+*`.
    fn diagonal(&self) -> AdelicFunction {
        let mut out = AdelicFunction::zero();
        for term in &self.terms {
            if term.n1 != term.n2 {
                continue;
            }
            let a = term.a.sigma(term.n1);
            let l = a.level();
            let residues = (0..l).map(|r| a.character_value(r)).collect();
            out = out.add(&AdelicFunction::product(residues, term.profile.clone()).expect("positive level"));
        }
        out
    }
}

/// `theta_mu`: `f(k, rho, l) -> f(k, rho, mu l)`, the effect of multiplying `x(t)` by `mu^(it)`.
pub fn dual_action(f: &DualElement, mu: f64) -> DualElement {
    DualElement {
        terms: f
            .terms
            .iter()
            .map(|t| DualTerm { profile: t.profile.dilate(mu), ..t.clone() })
            .collect(),
    }
}

/// Matrix of `pi_(u, l)(f)`: the monomial part acts after `g(e^(D_l))` with `D_l e_m = log(m l) e_m`.
pub fn represent_dual(f: &DualElement, t: &GnsTruncation) -> Result<CMatrix> {
    let mut out = CMatrix::zeros(t.n_max);
    for term in &f.terms {
        let x = CrossedElement::monomial(term.n1, term.a.clone(), term.n2)?;
        let g = &term.profile;
        let m = represent_weighted(&x, t, |m| g.eval(m as f64 * t.lambda))?;
        for (o, v) in out.data.iter_mut().zip(m.data) {
            *o += v;
        }
    }
    Ok(out)
}

/// `Trace pi_(u, l)(f) = sum_n f(1, n u, n l)`.
pub fn dual_trace(f: &DualElement, u: u64, lambda: f64, tol: f64) -> Result<Complex64> {
    let d = f.diagonal();
    if d.terms().is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    d.summation(u, lambda, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn e(k: i64, n: u64) -> GroupRingElement {
        GroupRingElement::basis(k, n)
    }

    #[test]
    fn identity_and_projection() {
        let t = GnsTruncation::standard(12);
        assert_eq!(represent(&CrossedElement::one(), &t).unwrap(), CMatrix::identity(12));
        let p = CrossedElement::u(2).unwrap().mul(&CrossedElement::u_star(2).unwrap()).unwrap();
        let m = represent(&p, &t).unwrap();
        for i in 0..12 {
            let want = if (i + 1) % 2 == 0 { 1.0 } else { 0.0 };
            assert!((m.get(i, i).re - want).abs() < 1e-14);
        }
    }

    #[test]
    fn level_must_divide_modulus() {
        let t = GnsTruncation::new(8, 1, 6, 1.0).unwrap();
        let x = CrossedElement::from_group_ring(e(1, 4));
        assert!(matches!(represent(&x, &t), Err(Error::LevelMismatch(_))));
        assert!(GnsTruncation::new(8, 2, 6, 1.0).is_err());
    }

    #[test]
    fn partition_values() {
        assert!(matches!(partition_function(1.0, 10), Err(Error::Divergence(_))));
        let (z, tail) = partition_function(4.0, 1000).unwrap();
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!(z4 - z >= 0.0 && z4 - z <= tail);
    }

    #[test]
    fn gibbs_examples() {
        let st = GibbsState::truncated(2.0, 100_000).unwrap();
        let p = CrossedElement::u(2).unwrap().mul(&CrossedElement::u_star(2).unwrap()).unwrap();
        let v = st.expect(&p).unwrap();
        assert!((v.value.re - 0.25).abs() <= v.bound);
        assert!((st.expect(&CrossedElement::one()).unwrap().value.re - 1.0).abs() < 1e-15);
        assert_eq!(st.expect(&CrossedElement::u_star(2).unwrap()).unwrap().value.norm(), 0.0);
        let ex = GibbsState::exact(2.0).unwrap();
        assert!((ex.expect(&p).unwrap().value.re - 0.25).abs() < 1e-14);
    }

    #[test]
    fn evolution() {
        let x = CrossedElement::from_group_ring(e(1, 3).scale(&q(2, 1)));
        assert_eq!(time_evolve(&x, 3.7).phases(), vec![Complex64::new(1.0, 0.0)]);
        let u2 = CrossedElement::u(2).unwrap();
        let ph = time_evolve(&u2, 0.9).phases()[0];
        assert!((ph - Complex64::new(0.0, 0.9 * 2f64.ln()).exp()).norm() < 1e-15);
    }

    #[test]
    fn kms_closed_form() {
        let st = GibbsState::exact(2.0).unwrap();
        let x = CrossedElement::u(2).unwrap();
        let y = CrossedElement::u_star(2).unwrap();
        for r in kms_verify(&x, &y, &st, &[0.0, 1.0, 5.0]).unwrap() {
            assert!(r.residual < 1e-12, "{r:?}");
        }
        let x = CrossedElement::u(3).unwrap();
        for r in kms_verify(&x, &y, &st, &[0.0, 2.0]).unwrap() {
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn dual_equivariance() {
        let f = DualElement::single(1, e(1, 2), 1, TestFunction::power_exp(1.0, 1.0))
            .terms
            .into_iter()
            .chain(DualElement::single(1, e(0, 1), 2, TestFunction::log_gaussian(0.0, 1.0)).terms)
            .collect::<Vec<_>>();
        let f = DualElement { terms: f };
        let mu = 1.7;
        let t = GnsTruncation::new(24, 1, 12, 0.8).unwrap();
        let t_mu = GnsTruncation { lambda: mu * 0.8, ..t };
        let a = represent_dual(&dual_action(&f, mu), &t).unwrap();
        let b = represent_dual(&f, &t_mu).unwrap();
        assert!(a.max_diff_columns(&b, 24) < 1e-15);
        let lhs = dual_trace(&dual_action(&f, mu), 1, 0.3, 1e-15).unwrap();
        let rhs = dual_trace(&f, 1, mu * 0.3, 1e-15).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
