//! Character idempotents on the roots of unity: a complete orthogonal family whose
//! ranks count the divisors `d` of `N` divisible by the conductor.

use endomotive::arith::DirichletCharacter;
use endomotive::artin::{character_idempotent, ArtinObject};
use endomotive::error::Result;

fn main() -> Result<()> {
    let n = 12;
    let x = ArtinObject::roots_of_unity(n);
    let chars = DirichletCharacter::all(n)?;
    let ps = chars.iter().map(|c| character_idempotent(c, &x)).collect::<Result<Vec<_>>>()?;
    for (c, p) in chars.iter().zip(&ps) {
        println!(
            "chi_{} mod {n}: conductor {:>2}, parity {}, rank {}, idempotent {}",
            c.index(),
            c.conductor(),
            c.parity(),
            p.trace().as_rational().unwrap(),
            p.is_idempotent()
        );
    }
    let mut total = ps[0].clone();
    for p in &ps[1..] {
        total = total.add(p)?;
    }
    println!("sum is the identity: {}", total == total.identity_like(x.points()));
    Ok(())
}
