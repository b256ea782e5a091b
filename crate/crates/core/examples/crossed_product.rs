//! Arithmetic in the crossed product of `Q[Q/Z]` by `N*`: the isometries `U_n`, the
//! endomorphisms `rho_n` and Galois equivariance of the evaluation states.

use endomotive::arith::{lift_unit, units};
use endomotive::endomotive::{fabulous_check, sample_element, CrossedElement, GroupRingElement};
use endomotive::error::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(a: &GroupRingElement) -> String {
    a.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() -> Result<()> {
    let u = CrossedElement::u(3)?;
    let us = CrossedElement::u_star(3)?;
    println!("U*_3 U_3 = 1: {}", us.mul(&u)? == CrossedElement::one());
    let e = GroupRingElement::one().rho(3)?;
    println!("U_3 U*_3 = rho_3(1): {}", u.mul(&us)? == CrossedElement::from_group_ring(e.clone()));
    println!("rho_3(1) = [{}]", show(&e));

    let x = GroupRingElement::basis(1, 4);
    println!("rho_2(e(1/4)) = [{}] at level {}", show(&x.rho(2)?), x.rho(2)?.level());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [5u64, 8] {
        let mut ok = 0;
        for _ in 0..20 {
            let y = sample_element(&mut rng, n, 3, 6);
            for alpha in units(n) {
                if fabulous_check(1, n, lift_unit(alpha, n, y.level()), &y)? {
                    ok += 1;
                }
            }
        }
        println!("N = {n}: {ok} of {} Galois checks hold", 20 * units(n).len());
    }
    Ok(())
}
