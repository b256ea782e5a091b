use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Ring;
use super::{rat_to_f64, Q};
use crate::arith::{divisors, lcm, root_of_unity, totient};

/// Integer coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = poly_div_exact(&num, &den);
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); nd - dd + 1];
    // den is monic
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quo
}

/// An element of `Q(zeta_n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Q>,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        Cyclotomic {
            n,
            coeffs: vec![Q::zero(); totient(n) as usize],
        }
    }

    pub fn from_rational(n: u64, c: Q) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, Q::one())
    }

    /// `zeta_n^k`.
    pub fn root(n: u64, k: i64) -> Self {
        let mut poly = vec![Q::zero(); n as usize];
        poly[k.rem_euclid(n as i64) as usize] = Q::one();
        Self::reduce(n, poly)
    }

    fn reduce(n: u64, mut poly: Vec<Q>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for top in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            for (i, pi) in phi.iter().enumerate().take(deg) {
                if !pi.is_zero() {
                    poly[top - deg + i] -= &c * BigRational::from(pi.clone());
                }
            }
        }
        poly.resize(deg, Q::zero());
        Cyclotomic { n, coeffs: poly }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The same number viewed in `Q(zeta_m)`, `n | m`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.n), "cannot lift level {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut poly = vec![Q::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(j * step) % m as usize] += c;
        }
        Self::reduce(m, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.n, other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Image under the automorphism `zeta_n -> zeta_n^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: u64) -> Self {
        let n = self.n as usize;
        let mut poly = vec![Q::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(j * a as usize) % n] += c;
        }
        Self::reduce(self.n, poly)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| root_of_unity(j as i64, self.n) * rat_to_f64(c))
            .sum()
    }

    /// The rational value, if the number lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }
}

impl Ring for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.n)
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.n)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclotomic {
            n: a.n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclotomic {
            n: a.n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let len = a.coeffs.len();
        let mut poly = vec![Q::zero(); (2 * len).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::reduce(a.n, poly)
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({})z^{}", super::fmt_q(c), j))
            .collect();
        if terms.is_empty() {
            write!(f, "0 [Q(z_{})]", self.n)
        } else {
            write!(f, "{} [Q(z_{})]", terms.join(" + "), self.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn cyclotomic_polynomials() {
        let p = cyclotomic_poly(12);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(*p, want);
        assert_eq!(cyclotomic_poly(1).len(), 2);
    }

    #[test]
    fn roots_multiply() {
        for n in [1u64, 2, 3, 4, 5, 6, 8, 12] {
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    let lhs = Cyclotomic::root(n, a).mul(&Cyclotomic::root(n, b));
                    assert_eq!(lhs, Cyclotomic::root(n, a + b));
                }
            }
            // sum of all n-th roots vanishes for n > 1
            let s = (0..n as i64).fold(Cyclotomic::zero(n), |s, k| s.add(&Cyclotomic::root(n, k)));
            assert_eq!(s.is_zero_elem(), n > 1);
        }
    }

    #[test]
    fn lift_and_galois() {
        let i4 = Cyclotomic::root(4, 1);
        let i12 = i4.lift(12);
        assert_eq!(i12, Cyclotomic::root(12, 3));
        assert!((i12.to_complex() - Complex64::i()).norm() < 1e-14);
        assert_eq!(i4.galois(3), Cyclotomic::root(4, 3));
        let half = Cyclotomic::from_rational(5, q(1, 2));
        assert_eq!(half.galois(2), half);
        assert_eq!(half.as_rational(), Some(q(1, 2)));
    }
}
