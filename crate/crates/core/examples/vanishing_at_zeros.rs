//! The transform of `E(xi) - A/l` vanishes at the zeros of zeta; without the subtraction
//! it does not.

use endomotive::error::Result;
use endomotive::spectral::{vanishing_check, SummationTransform, TransformOptions, ZeroTable};
use endomotive::testfn::{AdelicFunction, TestFunction};
use num_complex::Complex64;

fn main() -> Result<()> {
    let xi = AdelicFunction::level_one(TestFunction::log_gaussian(0.0, 0.1));
    let zeros = ZeroTable::zeta(40.0)?;
    let tr = SummationTransform::new(&xi, 1, TransformOptions::default())?;
    println!("{:>12} {:>10} {:>10} {:>10}", "gamma", "|F h|", "scale", "unsubtr.");
    for r in vanishing_check(&xi, &zeros, 5)? {
        let raw = tr.truncated_at(Complex64::new(0.5, r.gamma))?.norm();
        println!("{:>12.6} {:>10.1e} {:>10.1e} {:>10.1e}", r.gamma, r.value, r.line_scale, raw);
    }
    Ok(())
}
