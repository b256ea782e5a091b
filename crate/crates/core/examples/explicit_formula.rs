//! Both sides of the explicit formula for Gaussian test functions in `log u`, and Weil's
//! positivity functional on a few of their combinations.

use endomotive::error::Result;
use endomotive::explicit::{balance, positivity_form, BalanceOptions, IdeleTestFunction};
use endomotive::spectral::ZeroTable;

fn main() -> Result<()> {
    let zeros = ZeroTable::zeta(200.0)?;
    let opts = BalanceOptions::default();
    for sigma in [0.1, 0.3, 1.0] {
        let r = balance(&IdeleTestFunction::gaussian(1.0, 0.0, sigma), &zeros, 200.0, &opts)?;
        println!(
            "sigma {sigma}: zeros {:.10e}, geometric {:.10e}, residual {:.1e} ({} zeros, primes to {})",
            r.spectral_side.re, r.geometric_side.re, r.residual, r.zeros, r.prime_cutoff
        );
    }
    let f = IdeleTestFunction::gaussian(1.0, 0.2, 0.4).add(&IdeleTestFunction::gaussian(-0.5, -0.3, 0.6));
    let p = positivity_form(&f, &zeros, 200.0, &opts)?;
    println!("Weil functional: zeros {:.6e}, geometric {:.6e}", p.value, p.geometric);
    Ok(())
}
