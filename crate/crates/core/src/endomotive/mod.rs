//! The algebraic Bost-Connes endomotive: the group ring `Q[Q/Z]` with the endomorphisms
//! `rho_n`, its crossed product by the multiplicative semigroup, the self-map
//! construction from the multiplicative group, uniform measures and the Galois action.

mod crossed;
mod group_ring;
mod selfmap;

pub use crossed::{fabulous_check, CrossedElement, CrossedJson, GroupRingJson, Monomial, MonomialJson};
pub use group_ring::{GroupRingElement, MAX_LEVEL};
pub use selfmap::{measure_pushforward_check, pushforward_is_uniform, SelfMapSystem};

use num_traits::Zero;
use rand::Rng;

use crate::arith::gcd;
use crate::exact::{q, QMatrix, Q};

/// Matrix of `rho_n: A_L -> A_(nL)` in the bases `e_(k/L)`, `e_(j/nL)`.
pub fn rho_matrix(n: u64, l: u64) -> QMatrix {
    let nl = (n * l) as usize;
    let mut m = QMatrix::zeros(nl, l as usize);
    for k in 0..l {
        let img = GroupRingElement::basis(k as i64, l).rho(n).unwrap();
        let coeffs = img.coeffs_at(n * l).unwrap();
        for (j, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(j, k as usize, c);
            }
        }
    }
    m
}

/// Matrix of multiplication by `e` on `A_L`.
pub fn multiplication_matrix(e: &GroupRingElement, l: u64) -> QMatrix {
    let mut m = QMatrix::zeros(l as usize, l as usize);
    for k in 0..l {
        let img = e.mul(&GroupRingElement::basis(k as i64, l)).unwrap();
        let coeffs: Vec<Q> = img.coeffs_at(l).unwrap();
        for (j, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(j, k as usize, c);
            }
        }
    }
    m
}

/// Random element of `Q[Q/Z] x N*` with `terms` monomials `U*_(n1) a U_(n2)`, coprime
/// `n1, n2 <= max_index`, and coefficients at level `level` with small rational entries.
pub fn sample_element<R: Rng>(rng: &mut R, level: u64, terms: usize, max_index: u64) -> CrossedElement {
    let mut out = CrossedElement::zero();
    for _ in 0..terms {
        let (n1, n2) = loop {
            let a = rng.gen_range(1..=max_index);
            let b = rng.gen_range(1..=max_index);
            if gcd(a, b) == 1 {
                break (a, b);
            }
        };
        let coeffs = (0..level)
            .map(|_| if rng.gen_bool(0.5) { q(rng.gen_range(-3..=3), rng.gen_range(1..=2)) } else { Q::zero() })
            .collect();
        let a = GroupRingElement::new(level, coeffs).expect("level within range");
        out = out.add(&CrossedElement::monomial(n1, a, n2).expect("coprime indices"));
    }
    out
}
