//! Elementary number theory: units, Dirichlet characters, primes, Bernoulli numbers.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Cyclotomic;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).take_while(|k| k * k <= n).filter(|k| n.is_multiple_of(*k)).collect();
    let mut big: Vec<u64> = d.iter().rev().map(|k| n / k).filter(|&k| k * k != n).collect();
    d.append(&mut big);
    d
}

pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Least `a' = a mod n` coprime to `m`, i.e. a lift of the unit `a` of `Z/n` to a unit of
/// `Z/lcm(n, m)`.
pub fn lift_unit(a: u64, n: u64, m: u64) -> u64 {
    let mut b = a % n;
    if b == 0 {
        b = n;
    }
    while gcd(b, m) != 1 {
        b += n;
    }
    b
}

pub fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    r as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(0);
    }
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !e.gcd.is_one() {
        return Err(Error::NotAUnit(format!("{a} mod {m}")));
    }
    let x = e.x.mod_floor(&BigInt::from(m));
    Ok(x.to_u64().unwrap())
}

pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Prime powers `p^m <= x` as `(p, m, p^m)`.
pub fn prime_powers_up_to(x: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for p in primes_up_to(x) {
        let mut q = p;
        let mut m = 1;
        loop {
            out.push((p, m, q));
            match q.checked_mul(p) {
                Some(nq) if nq <= x => {
                    q = nq;
                    m += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_by_key(|t| t.2);
    out
}

fn is_primitive_root_mod_p(g: u64, p: u64) -> bool {
    factorize(p - 1)
        .iter()
        .all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1)
}

/// Structure of `(Z/N)^*` as a product of cyclic groups with explicit generators.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    pub modulus: u64,
    pub generators: Vec<(u64, u64)>,
    pub exponent: u64,
    logs: BTreeMap<u64, Vec<u64>>,
}

impl UnitGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("modulus must be positive"));
        }
        let mut gens: Vec<(u64, u64)> = Vec::new();
        for (p, k) in factorize(n) {
            let pk = p.pow(k);
            let rest = n / pk;
            let lift = |g: u64| -> u64 {
                if rest == 1 {
                    return g % n;
                }
                // x = g mod pk, x = 1 mod rest
                let inv = mod_inverse(rest % pk, pk).unwrap();
                let t = ((g + pk - 1) % pk) as u128 * inv as u128 % pk as u128;
                ((1 + t * rest as u128) % n as u128) as u64
            };
            if p == 2 {
                if k == 2 {
                    gens.push((lift(3), 2));
                } else if k >= 3 {
                    gens.push((lift(pk - 1), 2));
                    gens.push((lift(5), 1 << (k - 2)));
                }
            } else {
                let mut g = 2;
                while !is_primitive_root_mod_p(g, p) {
                    g += 1;
                }
                if k > 1 && mod_pow(g, p - 1, p * p) == 1 {
                    g += p;
                }
                gens.push((lift(g), pk / p * (p - 1)));
            }
        }
        let exponent = gens.iter().fold(1, |e, &(_, o)| lcm(e, o));
        let mut logs = BTreeMap::new();
        let mut stack: Vec<(u64, Vec<u64>)> = vec![(1 % n, vec![0; gens.len()])];
        while let Some((x, e)) = stack.pop() {
            if logs.contains_key(&x) {
                continue;
            }
            logs.insert(x, e.clone());
            for (i, &(g, o)) in gens.iter().enumerate() {
                let y = (x as u128 * g as u128 % n as u128) as u64;
                if !logs.contains_key(&y) {
                    let mut f = e.clone();
                    f[i] = (f[i] + 1) % o;
                    stack.push((y, f));
                }
            }
        }
        Ok(UnitGroup {
            modulus: n,
            generators: gens,
            exponent,
            logs,
        })
    }

    pub fn order(&self) -> u64 {
        self.logs.len() as u64
    }

    pub fn log(&self, a: u64) -> Option<&[u64]> {
        self.logs.get(&(a % self.modulus)).map(|v| v.as_slice())
    }

    pub fn elements(&self) -> Vec<u64> {
        self.logs.keys().copied().collect()
    }
}

/// A Dirichlet character, with values stored as exponents of `exp(2 pi i / E)`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    index: usize,
}

impl DirichletCharacter {
    /// All characters modulo `n`, index 0 being the principal character.
    pub fn all(n: u64) -> Result<Vec<DirichletCharacter>> {
        let group = Arc::new(UnitGroup::new(n)?);
        let orders: Vec<u64> = group.generators.iter().map(|g| g.1).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; orders.len()];
        loop {
            out.push(DirichletCharacter {
                group: group.clone(),
                exps: cur.clone(),
                index: out.len(),
            });
            let mut i = orders.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn principal(n: u64) -> Result<DirichletCharacter> {
        Ok(Self::all(n)?.swap_remove(0))
    }

    pub fn by_index(n: u64, index: usize) -> Result<DirichletCharacter> {
        let all = Self::all(n)?;
        let len = all.len();
        all.into_iter()
            .nth(index)
            .ok_or_else(|| Error::Index(format!("character {index} of {len} mod {n}")))
    }

    /// The real character attached to a fundamental discriminant, as a character mod `|d|`.
    pub fn kronecker(d: i64) -> Result<DirichletCharacter> {
        let n = d.unsigned_abs();
        for chi in Self::all(n)? {
            let ok = units(n).iter().all(|&a| {
                let v = chi.exponent_at(a).unwrap();
                let want = kronecker_symbol(d, a);
                (want == 1 && v == 0) || (want == -1 && 2 * v == chi.root_order())
            });
            if ok {
                return Ok(chi);
            }
        }
        Err(Error::input(format!("{d} is not a fundamental discriminant")))
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn root_order(&self) -> u64 {
        self.group.exponent
    }

    /// `k` with `chi(a) = exp(2 pi i k / E)`, or `None` when `gcd(a, N) > 1`.
    pub fn exponent_at(&self, a: u64) -> Option<u64> {
        let n = self.group.modulus;
        if n == 1 {
            return Some(0);
        }
        let l = self.group.log(a)?;
        let e = self.group.exponent;
        let mut k = 0u64;
        for (i, &(_, o)) in self.group.generators.iter().enumerate() {
            k = (k + self.exps[i] * l[i] % o * (e / o)) % e;
        }
        Some(k)
    }

    pub fn value(&self, a: u64) -> Complex64 {
        match self.exponent_at(a) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => root_of_unity(k as i64, self.group.exponent),
        }
    }

    pub fn value_int(&self, a: i64) -> Complex64 {
        let n = self.modulus() as i64;
        self.value(a.rem_euclid(n) as u64)
    }

    pub fn exact_value(&self, a: u64) -> Cyclotomic {
        match self.exponent_at(a) {
            None => Cyclotomic::zero(self.group.exponent),
            Some(k) => Cyclotomic::root(self.group.exponent, k as i64),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exps: Vec<u64> = self
            .exps
            .iter()
            .zip(&self.group.generators)
            .map(|(&e, &(_, o))| (o - e) % o)
            .collect();
        let all = Self::all(self.modulus()).unwrap();
        all.into_iter().find(|c| c.exps == exps).unwrap()
    }

    pub fn is_real(&self) -> bool {
        units(self.modulus())
            .iter()
            .all(|&a| (2 * self.exponent_at(a).unwrap()).is_multiple_of(self.root_order()))
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        let n = self.modulus();
        if n <= 2 {
            return 0;
        }
        if self.exponent_at(n - 1).unwrap() == 0 {
            0
        } else {
            1
        }
    }

    pub fn conductor(&self) -> u64 {
        let n = self.modulus();
        for d in divisors(n) {
            let trivial = units(n)
                .iter()
                .filter(|&&a| a % d == 1 % d)
                .all(|&a| self.exponent_at(a) == Some(0));
            if trivial {
                return d;
            }
        }
        n
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> DirichletCharacter {
        let f = self.conductor();
        let n = self.modulus();
        if f == n {
            return self.clone();
        }
        for cand in Self::all(f).unwrap() {
            let ok = units(f).iter().all(|&a| {
                let mut b = a;
                while gcd(b, n) != 1 {
                    b += f;
                }
                cand.value(a) == self.value(b % n)
            });
            if ok {
                return cand;
            }
        }
        unreachable!("every character is induced by a primitive one")
    }

    pub fn gauss_sum(&self) -> Complex64 {
        let n = self.modulus();
        (1..=n)
            .map(|a| self.value(a % n) * root_of_unity(a as i64, n))
            .sum()
    }

    /// Root number `tau(chi) / (i^delta sqrt(q))` of a primitive character.
    pub fn root_number(&self) -> Complex64 {
        let q = self.modulus() as f64;
        let id = Complex64::i().powu(self.parity());
        self.gauss_sum() / (id * q.sqrt())
    }
}

pub fn root_of_unity(k: i64, n: u64) -> Complex64 {
    let n_i = n as i64;
    let r = k.rem_euclid(n_i);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

/// Kronecker symbol `(d / a)` for `a > 0`.
pub fn kronecker_symbol(d: i64, a: u64) -> i32 {
    let mut result = 1;
    let mut a = a;
    while a.is_multiple_of(2) {
        a /= 2;
        let dm8 = d.rem_euclid(8);
        if dm8 % 2 == 0 {
            return 0;
        }
        if dm8 == 3 || dm8 == 5 {
            result = -result;
        }
    }
    if a == 1 {
        return result;
    }
    result * jacobi(d.rem_euclid(a as i64) as u64, a)
}

fn jacobi(mut a: u64, mut n: u64) -> i32 {
    let mut t = 1;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn bernoulli_table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m_max = 80usize;
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=m_max {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-s / BigRational::from(BigInt::from(m + 1)));
        }
        b
    })
}

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), `n <= 80`.
pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_table()[n].clone()
}

/// `B_{2j} / (2j)!` in floating point, `j <= 40`.
pub fn bernoulli_over_factorial(j: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        let mut fact = BigInt::one();
        for n in 0..=80usize {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            if n % 2 == 0 {
                let q = bernoulli(n) / BigRational::from(fact.clone());
                out.push(crate::exact::rat_to_f64(&q));
            }
        }
        out
    })[j]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn totient_and_units() {
        assert_eq!(totient(12), 4);
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(totient(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn unit_group_logs_cover_group() {
        for n in 1..200u64 {
            let g = UnitGroup::new(n).unwrap();
            assert_eq!(g.order(), totient(n), "n={n}");
        }
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        for n in [3u64, 4, 5, 8, 12, 15, 16, 24] {
            let chars = DirichletCharacter::all(n).unwrap();
            assert_eq!(chars.len() as u64, totient(n));
            for c in &chars {
                for a in units(n) {
                    for b in units(n) {
                        let lhs = c.value(a * b % n);
                        let rhs = c.value(a) * c.value(b);
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
            }
            for (i, c) in chars.iter().enumerate() {
                for (j, d) in chars.iter().enumerate() {
                    let s: Complex64 = units(n).iter().map(|&a| c.value(a) * d.value(a).conj()).sum();
                    let want = if i == j { totient(n) as f64 } else { 0.0 };
                    assert!((s - want).norm() < 1e-9, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn conductors() {
        let chi4 = DirichletCharacter::kronecker(-4).unwrap();
        assert_eq!(chi4.conductor(), 4);
        assert_eq!(chi4.parity(), 1);
        assert!(chi4.is_real());
        let chars12 = DirichletCharacter::all(12).unwrap();
        let conds: Vec<u64> = chars12.iter().map(|c| c.conductor()).collect();
        let mut sorted = conds.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3, 4, 12]);
        for c in &chars12 {
            let p = c.primitive();
            assert_eq!(p.modulus(), c.conductor());
            assert!(p.is_primitive());
        }
    }

    #[test]
    fn root_numbers_have_unit_modulus() {
        for n in [3u64, 4, 5, 7, 8, 11, 13] {
            for c in DirichletCharacter::all(n).unwrap() {
                if c.is_primitive() && !c.is_principal() {
                    assert!((c.root_number().norm() - 1.0).abs() < 1e-12);
                    if c.is_real() {
                        assert!((c.root_number() - 1.0).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(bernoulli(2), BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(bernoulli(12), BigRational::new(BigInt::from(-691), BigInt::from(2730)));
        assert!(bernoulli(7).is_zero());
        assert!((bernoulli_over_factorial(1) - 1.0 / 12.0).abs() < 1e-17);
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<u64> = prime_powers_up_to(20).iter().map(|t| t.2).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert!(mod_inverse(2, 4).is_err());
        assert_eq!(kronecker_symbol(8, 7), 1);
        assert_eq!(kronecker_symbol(8, 3), -1);
        assert_eq!(kronecker_symbol(-4, 3), -1);
    }
}
