use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::exact::{fmt_q, q, Cyclotomic, Ring, Q};

pub const MAX_LEVEL: u64 = 200_000;

/// An element `sum_k c_k e_(k/N)` of `Q[Q/Z]`, stored sparsely at its minimal level `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    level: u64,
    terms: BTreeMap<u64, Q>,
}

impl GroupRingElement {
    pub fn new(level: u64, coeffs: Vec<Q>) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::input(format!("level {level} outside 1..={MAX_LEVEL}")));
        }
        if coeffs.len() as u64 != level {
            return Err(Error::DimensionMismatch(format!("{} coefficients at level {level}", coeffs.len())));
        }
        Ok(Self::canonical(level, coeffs.into_iter().enumerate().map(|(k, c)| (k as u64, c)).collect()))
    }

    /// Drops zero coefficients and lowers the level as far as the support allows.
    fn canonical(level: u64, mut terms: BTreeMap<u64, Q>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let g = terms.keys().fold(level, |g, &k| gcd(g, k));
        if g == 1 {
            return GroupRingElement { level, terms };
        }
        GroupRingElement { level: level / g, terms: terms.into_iter().map(|(k, c)| (k / g, c)).collect() }
    }

    fn checked_level(m: u64) -> Result<u64> {
        if m > MAX_LEVEL {
            return Err(Error::input(format!("level {m} exceeds {MAX_LEVEL}")));
        }
        Ok(m)
    }

    pub fn zero() -> Self {
        GroupRingElement { level: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        GroupRingElement { level: 1, terms: BTreeMap::from([(0, Q::one())]) }
    }

    /// The basis element `e_(k/n)`.
    pub fn basis(k: i64, n: u64) -> Self {
        Self::canonical(n, BTreeMap::from([(k.rem_euclid(n as i64) as u64, Q::one())]))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Dense coefficient vector at the minimal level.
    pub fn coeffs(&self) -> Vec<Q> {
        self.coeffs_at(self.level).expect("own level")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient vector at level `m`, a multiple of the minimal level.
    pub fn coeffs_at(&self, m: u64) -> Result<Vec<Q>> {
        if !m.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch(format!("{} does not divide {m}", self.level)));
        }
        let step = m / self.level;
        let mut out = vec![Q::zero(); m as usize];
        for (k, c) in &self.terms {
            out[(k * step) as usize] = c.clone();
        }
        Ok(out)
    }

    /// Nonzero terms `(k, c)` meaning `c e_(k/N)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Q)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn combine(&self, other: &Self, sign: &Q) -> Self {
        let m = lcm(self.level, other.level);
        let (sa, sb) = (m / self.level, m / other.level);
        let mut out: BTreeMap<u64, Q> = self.terms.iter().map(|(k, c)| (k * sa, c.clone())).collect();
        for (k, c) in &other.terms {
            *out.entry(k * sb).or_insert_with(Q::zero) += c * sign;
        }
        Self::canonical(m, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::canonical(self.level, self.terms.iter().map(|(k, x)| (*k, x * c)).collect())
    }

    /// Convolution product `e_r e_s = e_(r+s)`, accumulated over common denominators.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = Self::checked_level(lcm(self.level, other.level))?;
        let (da, xa) = self.numerators(m / self.level);
        let (db, xb) = other.numerators(m / other.level);
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (i, x) in &xa {
            for (j, y) in &xb {
                *acc.entry((i + j) % m).or_insert_with(BigInt::zero) += x * y;
            }
        }
        let d = da * db;
        Ok(Self::canonical(m, acc.into_iter().map(|(k, n)| (k, Q::new(n, d.clone()))).collect()))
    }

    /// Common denominator and integer numerators, positions scaled by `step`.
    fn numerators(&self, step: u64) -> (BigInt, Vec<(u64, BigInt)>) {
        let d = self.terms.values().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let xs = self.terms.iter().map(|(k, c)| (k * step, c.numer() * (&d / c.denom()))).collect();
        (d, xs)
    }

    /// `rho_n(e_r) = (1/n) sum_(ns = r) e_s`.
    pub fn rho(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("rho_0 is undefined"));
        }
        let nl = Self::checked_level(n * self.level)?;
        let inv = q(1, n as i64);
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let ck = c * &inv;
            for j in 0..n {
                out.insert(k + j * self.level, ck.clone());
            }
        }
        Ok(Self::canonical(nl, out))
    }

    /// `rho_k(1) a`: averages `a` over translates by `1/k`.
    pub fn project(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("rho_0 is undefined"));
        }
        let m = Self::checked_level(lcm(k, self.level))?;
        let (step, scale) = (m / k, m / self.level);
        let mut sums: BTreeMap<u64, Q> = BTreeMap::new();
        for (r, c) in &self.terms {
            *sums.entry((r * scale) % step).or_insert_with(Q::zero) += c;
        }
        let inv = q(1, k as i64);
        let mut out = BTreeMap::new();
        for (s, c) in sums {
            if c.is_zero() {
                continue;
            }
            let c = c * &inv;
            for j in 0..k {
                out.insert(s + j * step, c.clone());
            }
        }
        Ok(Self::canonical(m, out))
    }

    /// `sigma_d(e_r) = e_(d r)`, so that `U*_d a U_d = sigma_d(a)`.
    pub fn sigma(&self, d: u64) -> Self {
        let mut out: BTreeMap<u64, Q> = BTreeMap::new();
        for (k, c) in &self.terms {
            *out.entry((k * d) % self.level).or_insert_with(Q::zero) += c;
        }
        Self::canonical(self.level, out)
    }

    /// The automorphism `e_r -> e_(alpha r)`, `alpha` a unit modulo the level.
    pub fn galois(&self, alpha: u64) -> Result<Self> {
        if gcd(alpha, self.level) != 1 {
            return Err(Error::NotAUnit(format!("{alpha} mod {}", self.level)));
        }
        Ok(self.sigma(alpha))
    }

    /// `e_r -> e_(-r)`; coefficients are rational so this is the involution.
    pub fn star(&self) -> Self {
        self.sigma(self.level - 1)
    }

    /// Complex value of the character `e_r -> exp(2 pi i r j)` at the integer `j`.
    pub fn character_value(&self, j: u64) -> num_complex::Complex64 {
        let l = self.level;
        let jm = j % l;
        self.terms()
            .map(|(k, c)| crate::arith::root_of_unity(((k * jm) % l) as i64, l) * crate::exact::rat_to_f64(c))
            .sum()
    }

    /// Sum of absolute values of the coefficients, a bound for every character value.
    pub fn l1_norm(&self) -> f64 {
        self.terms().map(|(_, c)| crate::exact::rat_to_f64(c).abs()).sum()
    }

    /// The character `e_(k/L) -> zeta_L^(c k)` of `A_L`, valued exactly in `Q(zeta_L)`.
    pub fn evaluate(&self, c: u64, l: u64) -> Result<Cyclotomic> {
        if !l.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch(format!("{} does not divide {l}", self.level)));
        }
        let step = l / self.level;
        let mut v = Cyclotomic::zero(l);
        for (k, x) in &self.terms {
            v = v.add(&Cyclotomic::root(l, (c as i64) * (k * step) as i64).scale(x));
        }
        Ok(v)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(k, c)| format!("{} e({}/{})", fmt_q(c), k, self.level))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
