//! The Mellin transform of the summed function `E(xi)` against `L(chi, s)` times the
//! finite and archimedean factors, for a few characters.

use endomotive::arith::DirichletCharacter;
use endomotive::error::Result;
use endomotive::spectral::l_factorizations;
use endomotive::testfn::TestFunction;
use num_complex::Complex64;

fn main() -> Result<()> {
    let f = TestFunction::power_exp(1.0, 1.0);
    let points = [Complex64::new(2.0, 0.0), Complex64::new(2.0, 5.0)];
    for chi in [DirichletCharacter::principal(1)?, DirichletCharacter::kronecker(-4)?, DirichletCharacter::by_index(5, 1)?] {
        let f0: Vec<Complex64> = (0..chi.modulus()).map(|a| chi.value(a)).collect();
        for (s, r) in points.iter().zip(l_factorizations(&f0, &chi, &f, 1, &points)?) {
            println!("chi_{} mod {}, s = {s}: lhs {:.10}, difference {:.1e}", chi.index(), chi.modulus(), r.lhs, r.difference);
        }
    }
    Ok(())
}
