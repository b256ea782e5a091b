use std::collections::BTreeSet;

use num_traits::Zero;

use super::group_ring::GroupRingElement;
use crate::arith::divisors;
use crate::artin::{ArtinObject, Correspondence};
use crate::error::{Error, Result};
use crate::exact::{q, Cyclotomic, Q};

/// The projective system `X_s = {y : y^s = 1}` built from the self-maps `y -> y^n` of
/// the multiplicative group with base point 1. Points of `X_s` are exponents `k` of
/// `zeta_s^k`; the coordinate ring `A_s = Q[u]/(u^s - 1)` embeds by `u(s) -> e_(1/s)`.
#[derive(Debug, Clone)]
pub struct SelfMapSystem {
    levels: BTreeSet<u64>,
}

impl SelfMapSystem {
    /// A system on the given levels, which must be closed under taking divisors.
    pub fn multiplicative(levels: &[u64]) -> Result<Self> {
        let set: BTreeSet<u64> = levels.iter().copied().collect();
        if set.is_empty() || set.contains(&0) {
            return Err(Error::Closure("levels must be positive and non-empty".into()));
        }
        for &s in &set {
            if let Some(d) = divisors(s).into_iter().find(|d| !set.contains(d)) {
                return Err(Error::Closure(format!("level {s} present but its divisor {d} is not")));
            }
        }
        Ok(SelfMapSystem { levels: set })
    }

    /// All levels dividing `n`.
    pub fn divisors_of(n: u64) -> Self {
        SelfMapSystem {
            levels: divisors(n).into_iter().collect(),
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = u64> + '_ {
        self.levels.iter().copied()
    }

    fn require(&self, s: u64) -> Result<()> {
        if self.levels.contains(&s) {
            Ok(())
        } else {
            Err(Error::Closure(format!("level {s} is not in the system")))
        }
    }

    /// `X_s` as an Artin motive.
    pub fn object(&self, s: u64) -> Result<ArtinObject> {
        self.require(s)?;
        Ok(ArtinObject::roots_of_unity(s))
    }

    /// `xi_(s', s): X_(s') -> X_s`, `y -> y^(s'/s)`, that is `k -> k mod s`.
    pub fn xi(&self, s_big: u64, s: u64) -> Result<Vec<usize>> {
        self.require(s_big)?;
        self.require(s)?;
        if !s_big.is_multiple_of(s) {
            return Err(Error::Divisibility(format!("{s} does not divide {s_big}")));
        }
        Ok((0..s_big).map(|k| (k % s) as usize).collect())
    }

    /// The graph of `xi_(s', s)` as a Galois-equivariant correspondence.
    pub fn xi_correspondence(&self, s_big: u64, s: u64) -> Result<Correspondence> {
        let map = self.xi(s_big, s)?;
        Correspondence::graph(&self.object(s_big)?, &self.object(s)?, &map)
    }

    /// `iota(u(s)^k) = e_(k/s)`.
    pub fn iota(&self, s: u64, k: i64) -> Result<GroupRingElement> {
        self.require(s)?;
        Ok(GroupRingElement::basis(k, s))
    }

    /// `beta_n: X_u -> X_(nu)` sending `zeta_u^k` to the same root viewed at level `n u`.
    pub fn beta(&self, n: u64, u: u64, k: u64) -> Result<(u64, u64)> {
        self.require(u)?;
        self.require(n * u)?;
        Ok((n * u, (n * k) % (n * u)))
    }

    /// Inverse of `beta_n` on `X^(e_n)`, the points of level `n u` over `1 in X_n`.
    pub fn beta_inverse(&self, n: u64, level: u64, c: u64) -> Result<(u64, u64)> {
        self.require(level)?;
        if !level.is_multiple_of(n) {
            return Err(Error::Divisibility(format!("{n} does not divide {level}")));
        }
        if !c.is_multiple_of(n) {
            return Err(Error::input(format!("point {c} of X_{level} does not lie over 1 in X_{n}")));
        }
        Ok((level / n, c / n))
    }

    /// Checks, at every level `L` and every `n | L`, that the character `x_c` of `A_L`
    /// satisfies `x_c(rho_n(e_r)) = x_c(e_s)` (`n s = r`) when `x_c` is trivial on `A_n`,
    /// and vanishes otherwise.
    pub fn check_rho_compatibility(&self) -> Result<bool> {
        for l in self.levels() {
            for n in divisors(l) {
                let k = l / n;
                for c in 0..l {
                    let trivial_on_n = c % n == 0;
                    for j in 0..k {
                        let r = GroupRingElement::basis(j as i64, k);
                        let lhs = r.rho(n)?.evaluate(c, l)?;
                        let rhs = if trivial_on_n {
                            GroupRingElement::basis(j as i64, l).evaluate(c, l)?
                        } else {
                            Cyclotomic::zero(l)
                        };
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Whether pushing the uniform probability on a domain of `domain` points along `map`
/// gives the uniform probability on `target` points. Points mapped to `None` are lost.
pub fn pushforward_is_uniform(target: usize, map: &[Option<usize>]) -> bool {
    let domain = map.len();
    if domain == 0 || target == 0 {
        return false;
    }
    let mut mass = vec![Q::zero(); target];
    let w = q(1, domain as i64);
    for y in map.iter().flatten() {
        if *y >= target {
            return false;
        }
        mass[*y] += &w;
    }
    let want = q(1, target as i64);
    mass.iter().all(|m| *m == want)
}

/// The uniform counting measure on `X_(s')` pushes forward to the uniform one on `X_s`.
pub fn measure_pushforward_check(system: &SelfMapSystem, s: u64, s_big: u64) -> Result<bool> {
    let map = system.xi(s_big, s)?;
    Ok(pushforward_is_uniform(s as usize, &map.into_iter().map(Some).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_must_be_divisor_closed() {
        assert!(SelfMapSystem::multiplicative(&[1, 2, 4]).is_ok());
        assert!(matches!(SelfMapSystem::multiplicative(&[1, 4]), Err(Error::Closure(_))));
    }

    #[test]
    fn squaring_map() {
        let sys = SelfMapSystem::divisors_of(4);
        assert_eq!(sys.xi(4, 2).unwrap(), vec![0, 1, 0, 1]);
        assert!(matches!(sys.xi(2, 4), Err(Error::Divisibility(_))));
        sys.xi_correspondence(4, 2).unwrap();
        assert_eq!(sys.iota(4, 1).unwrap(), GroupRingElement::basis(1, 4));
    }

    #[test]
    fn uniform_measures() {
        let sys = SelfMapSystem::divisors_of(12);
        for s in sys.levels() {
            for t in sys.levels() {
                if t % s == 0 {
                    assert!(measure_pushforward_check(&sys, s, t).unwrap());
                }
            }
        }
        // drop one point of X_4 before pushing to X_2
        let map = vec![Some(0), Some(1), Some(0), None];
        assert!(!pushforward_is_uniform(2, &map));
    }

    #[test]
    fn beta_round_trip() {
        let sys = SelfMapSystem::divisors_of(12);
        for (n, u) in [(2u64, 6u64), (3, 4), (4, 3), (6, 2)] {
            for k in 0..u {
                let (l, c) = sys.beta(n, u, k).unwrap();
                assert_eq!(sys.beta_inverse(n, l, c).unwrap(), (u, k));
            }
        }
    }

    #[test]
    fn rho_is_compatible_with_characters() {
        assert!(SelfMapSystem::divisors_of(12).check_rho_compatibility().unwrap());
    }
}
