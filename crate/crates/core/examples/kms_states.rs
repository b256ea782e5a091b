//! Gibbs states of the time evolution `sigma_t(U_n) = n^it U_n` and the KMS condition
//! at inverse temperature `beta > 1`.

use endomotive::endomotive::{CrossedElement, GroupRingElement};
use endomotive::error::Result;
use endomotive::thermo::{kms_verify, partition_function, GibbsState};

fn main() -> Result<()> {
    for beta in [1.5, 2.0, 3.0] {
        let (z, tail) = partition_function(beta, 1_000_000)?;
        println!("beta {beta}: Z = {z:.12} (tail <= {tail:.1e})");
    }
    let beta = 2.0;
    let state = GibbsState::truncated(beta, 100_000)?;
    let x = CrossedElement::monomial(3, GroupRingElement::basis(1, 2), 1)?;
    let y = CrossedElement::monomial(1, GroupRingElement::basis(1, 3), 3)?;
    for r in kms_verify(&x, &y, &state, &[0.0, 1.0, 5.0])? {
        println!("t = {}: residual {:.2e}, tail bound {:.2e}", r.t, r.residual, r.bound);
    }
    let u2 = CrossedElement::u(2)?;
    let v = GibbsState::exact(beta)?.expect(&u2.mul(&u2.adjoint())?)?;
    println!("phi(U_2 U*_2) = {:.15} = 2^-beta", v.value.re);
    Ok(())
}
