use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group_ring::GroupRingElement;
use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, Cyclotomic, Q};

/// An element `sum U*_(n1) a U_(n2)` of `Q[Q/Z] x| N`.
///
/// Stored in normal form: `gcd(n1, n2) = 1` (using `U*_d a U_d = sigma_d(a)`), `a` cut
/// down by `rho_(n1 n2)(1)` (which does not change the monomial), one entry per pair.
/// Two elements are equal exactly when their normal forms agree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CrossedElement {
    terms: BTreeMap<(u64, u64), GroupRingElement>,
}

/// One monomial `coeff U*_(n1) a U_(n2)` before normalisation.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub n1: u64,
    pub a: GroupRingElement,
    pub n2: u64,
    pub coeff: Q,
}

fn normalize(n1: u64, a: &GroupRingElement, n2: u64) -> Result<(u64, u64, GroupRingElement)> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::input("semigroup elements must be positive"));
    }
    let g = gcd(n1, n2);
    let (m1, m2) = (n1 / g, n2 / g);
    Ok((m1, m2, a.sigma(g).project(m1 * m2)?))
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_group_ring(GroupRingElement::one())
    }

    pub fn from_group_ring(a: GroupRingElement) -> Self {
        Self::monomial(1, a, 1).expect("level-1 monomial")
    }

    pub fn u(n: u64) -> Result<Self> {
        Self::monomial(1, GroupRingElement::one(), n)
    }

    pub fn u_star(n: u64) -> Result<Self> {
        Self::monomial(n, GroupRingElement::one(), 1)
    }

    pub fn monomial(n1: u64, a: GroupRingElement, n2: u64) -> Result<Self> {
        let mut out = Self::zero();
        out.push(n1, &a, n2)?;
        Ok(out)
    }

    pub fn from_monomials(ms: &[Monomial]) -> Result<Self> {
        let mut out = Self::zero();
        for m in ms {
            out.push(m.n1, &m.a.scale(&m.coeff), m.n2)?;
        }
        Ok(out)
    }

    fn push(&mut self, n1: u64, a: &GroupRingElement, n2: u64) -> Result<()> {
        let (m1, m2, b) = normalize(n1, a, n2)?;
        let e = self.terms.entry((m1, m2)).or_insert_with(GroupRingElement::zero);
        *e = e.add(&b);
        if e.is_zero() {
            self.terms.remove(&(m1, m2));
        }
        Ok(())
    }

    /// Normal-form monomials `(n1, a, n2)`.
    pub fn monomials(&self) -> impl Iterator<Item = (u64, &GroupRingElement, u64)> {
        self.terms.iter().map(|(&(n1, n2), a)| (n1, a, n2))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(n1, n2), a) in &other.terms {
            let e = out.terms.entry((n1, n2)).or_insert_with(GroupRingElement::zero);
            *e = e.add(a);
            if e.is_zero() {
                out.terms.remove(&(n1, n2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CrossedElement {
            terms: self.terms.iter().map(|(k, a)| (*k, a.scale(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// `U*_(n1) a U_(n2) . U*_(n3) b U_(n4) = U*_(n1 n3) rho_(n3)(a) rho_(n2 n3)(1) rho_(n2)(b) U_(n2 n4)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(n1, n2), a) in &self.terms {
            for (&(n3, n4), b) in &other.terms {
                let mid = a.rho(n3)?.mul(&b.rho(n2)?)?.project(n2 * n3)?;
                out.push(n1 * n3, &mid, n2 * n4)?;
            }
        }
        Ok(out)
    }

    /// Applies `e_r -> e_(alpha r)` to every coefficient; the `U_n` are fixed.
    pub fn galois(&self, alpha: u64) -> Result<Self> {
        let mut out = Self::zero();
        for (&(n1, n2), a) in &self.terms {
            out.push(n1, &a.galois(alpha)?, n2)?;
        }
        Ok(out)
    }

    /// `(U*_(n1) a U_(n2))* = U*_(n2) a* U_(n1)`.
    pub fn adjoint(&self) -> Self {
        CrossedElement {
            terms: self.terms.iter().map(|(&(n1, n2), a)| ((n2, n1), a.star())).collect(),
        }
    }

    /// The component `a` of `U*_1 a U_1`.
    pub fn diagonal_part(&self) -> GroupRingElement {
        self.terms.get(&(1, 1)).cloned().unwrap_or_else(GroupRingElement::zero)
    }

    /// Least common multiple of all coefficient levels.
    pub fn level(&self) -> u64 {
        self.terms.values().fold(1, |l, a| lcm(l, a.level()))
    }

    /// The state induced by the character `x_c` of `A_L`: `U*_n1 a U_n2 -> delta(n1, n2) x_c(a)`.
    pub fn evaluation_state(&self, c: u64, l: u64) -> Result<Cyclotomic> {
        let a = self.diagonal_part();
        if !l.is_multiple_of(a.level()) {
            return Err(Error::LevelMismatch(format!("element of level {} under a character of level {l}", a.level())));
        }
        a.evaluate(c, l)
    }
}

/// `alpha(phi(x)) = phi(alpha~(x))` for the state of the character `e_(1/N) -> zeta_N^c`,
/// where `alpha~` is `e_r -> e_(alpha r)` (the function-level action of `alpha^-1`).
pub fn fabulous_check(c: u64, n: u64, alpha: u64, x: &CrossedElement) -> Result<bool> {
    if gcd(alpha, n) != 1 {
        return Err(Error::NotAUnit(format!("{alpha} mod {n}")));
    }
    if !n.is_multiple_of(x.diagonal_part().level()) {
        return Err(Error::LevelMismatch(format!(
            "element of level {} under a character of level {n}",
            x.diagonal_part().level()
        )));
    }
    let lhs = x.evaluation_state(c, n)?.galois(alpha % n);
    let rhs = x.galois(alpha)?.evaluation_state(c, n)?;
    Ok(lhs == rhs)
}

impl fmt::Debug for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((n1, n2), a)| format!("U*_{n1} [{a:?}] U_{n2}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupRingJson {
    pub level: u64,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialJson {
    pub n1: u64,
    pub n2: u64,
    pub a: GroupRingJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossedJson {
    pub terms: Vec<MonomialJson>,
}

impl GroupRingElement {
    pub fn to_json(&self) -> GroupRingJson {
        GroupRingJson {
            level: self.level(),
            coeffs: self.terms().map(|(k, c)| (k.to_string(), fmt_q(c))).collect(),
        }
    }

    pub fn from_json(j: &GroupRingJson) -> Result<Self> {
        let mut coeffs = vec![Q::zero(); j.level as usize];
        for (k, v) in &j.coeffs {
            let k: usize = k.parse().map_err(|_| Error::Parse(format!("index {k:?}")))?;
            if k >= coeffs.len() {
                return Err(Error::Index(format!("e({k}/{})", j.level)));
            }
            coeffs[k] = parse_q(v)?;
        }
        Self::new(j.level, coeffs)
    }
}

impl CrossedElement {
    pub fn to_json(&self) -> CrossedJson {
        CrossedJson {
            terms: self
                .monomials()
                .map(|(n1, a, n2)| MonomialJson { n1, n2, a: a.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &CrossedJson) -> Result<Self> {
        let mut out = Self::zero();
        for m in &j.terms {
            out.push(m.n1, &GroupRingElement::from_json(&m.a)?, m.n2)?;
        }
        Ok(out)
    }
}
