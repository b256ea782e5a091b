//! Zeros of zeta and of `L(s, chi_-4)` on the critical line, checked against the
//! Hardy function and against the average count from the Gamma factor.

use endomotive::archfactors::{smooth_zero_count, HodgeStructure, Place};
use endomotive::arith::DirichletCharacter;
use endomotive::error::Result;
use endomotive::spectral::ZeroTable;

fn main() -> Result<()> {
    let zeta = ZeroTable::zeta(100.0)?;
    println!("first zeros of zeta: {:?}", &zeta.ordinates[..5]);
    println!("max |Z(gamma)| = {:.1e}", zeta.validate(&DirichletCharacter::principal(1)?)?);
    for e in [30.0, 50.0, 100.0] {
        let located = zeta.ordinates.iter().filter(|g| **g <= e).count();
        let smooth = smooth_zero_count(&HodgeStructure::point(), &[Place::Real], e, 2)?;
        println!("E = {e}: located {located}, average {smooth:.2}");
    }
    let chi = DirichletCharacter::kronecker(-4)?;
    let t = ZeroTable::dirichlet(&chi, 30.0)?;
    println!("zeros of L(s, chi_-4) below 30: {:?}", t.ordinates);
    Ok(())
}
