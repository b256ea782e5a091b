//! Weil's principal values and the Lefschetz formulas for archimedean local factors.

use std::f64::consts::PI;

use endomotive::archfactors::*;
use endomotive::error::Result;
use endomotive::numkernel::EULER_GAMMA;
use num_complex::Complex64;

fn main() -> Result<()> {
    let sym = |y: f64| 2.0 * (-y).exp() / -(-y).exp_m1();
    let v = pf0_cutoff(&sym, 1.0, 4, 12)?;
    println!("PF_0 int f_0 / f_1 = {:.12}, 2 (log 2 pi + gamma) = {:.12}", v.value, 2.0 * ((2.0 * PI).ln() + EULER_GAMMA));
    for n in 0..=2 {
        let a = weil_pv(&PrincipalValueSpec { n, s: 1.0, scheme: PvScheme::cutoff() })?;
        let b = weil_pv(&PrincipalValueSpec { n, s: 1.0, scheme: PvScheme::MinimalSubtraction })?;
        println!("n = {n}, s = 1: cutoff {:.10}, minimal subtraction {:.10}", a.value, b.value);
    }
    let surface = HodgeStructure::from_pairs(2, &[((2, 0), 1), ((0, 2), 1), ((1, 1), 20)], Some((9, 11)))?;
    for (name, h) in [("point", HodgeStructure::point()), ("elliptic H^1", HodgeStructure::elliptic_h1()), ("K3 H^2", surface)] {
        for s in [0.0, 2.0] {
            let c = lefschetz_complex(&h, s)?;
            let r = lefschetz_real(&h, s)?;
            println!("{name:<13} s = {s}: complex diff {:.1e}, real diff {:.1e}", c.diff, r.diff);
        }
    }
    println!("j-part at 1/2: {}", j_part_integral(Complex64::new(0.5, 0.0))?);
    Ok(())
}
