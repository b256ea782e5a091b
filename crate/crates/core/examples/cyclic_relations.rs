//! Face, degeneracy and cyclic relations on small algebras, a corrupted cyclic operator
//! that breaks them, and `HC_0` of matrix algebras.

use endomotive::cyclic::*;
use endomotive::error::Result;

/// The standard structure with `tau` applied twice.
struct DoubleRotation;

impl<A: UnitalAlgebra> CyclicStructure<A> for DoubleRotation {
    fn face(&self, alg: &A, x: &Chain<A::Elem>, i: usize) -> Result<Chain<A::Elem>> {
        face(alg, x, i)
    }
    fn degeneracy(&self, alg: &A, x: &Chain<A::Elem>, j: usize) -> Result<Chain<A::Elem>> {
        degeneracy(alg, x, j)
    }
    fn cyclic(&self, _alg: &A, x: &Chain<A::Elem>) -> Result<Chain<A::Elem>> {
        Ok(cyclic(&cyclic(x)))
    }
}

fn main() -> Result<()> {
    for alg in [FiniteAlgebra::diagonal(2), FiniteAlgebra::matrices(2), FiniteAlgebra::truncated_polynomials(3)] {
        let r = check_relations(&alg, 4, &StandardCyclic, 1)?;
        println!("{:<12} {} instances, all hold: {}", alg.name(), r.instances.len(), r.all_hold());
    }
    let r = check_relations(&FiniteAlgebra::matrices(2), 3, &DoubleRotation, 1)?;
    println!("tau^2 in place of tau fails: {:?}", r.failing_families());
    for k in 1..=3 {
        let h = hc0(&FiniteAlgebra::matrices(k));
        println!("HC_0(M_{k}) has dimension {}", h.dimension);
    }
    Ok(())
}
