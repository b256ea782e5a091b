use endomotive::arith::{divisors, DirichletCharacter};
use endomotive::artin::*;
use endomotive::exact::{q, Q};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn character_idempotents_resolve_the_identity() {
    for n in [3u64, 4, 5, 8, 12] {
        let x = ArtinObject::roots_of_unity(n);
        let chars = DirichletCharacter::all(n).unwrap();
        let ps: Vec<_> = chars.iter().map(|c| character_idempotent(c, &x).unwrap()).collect();
        let mut total = ps[0].clone();
        for p in &ps[1..] {
            total = total.add(p).unwrap();
        }
        assert!(total == total.identity_like(x.points()), "N = {n}");
        for (i, p) in ps.iter().enumerate() {
            assert!(p.is_idempotent(), "N = {n}, chi {i}");
            for (j, r) in ps.iter().enumerate() {
                if i != j {
                    assert!(p.mul(r).unwrap().is_zero(), "N = {n}: p_{i} p_{j}");
                }
            }
            // mu_N splits into the orbits mu_d^*, and chi occurs once in Q[mu_d^*] when cond | d
            let cond = chars[i].conductor();
            let expect = divisors(n).into_iter().filter(|d| d % cond == 0).count() as i64;
            assert_eq!(p.trace().as_rational(), Some(q(expect, 1)), "N = {n}, chi {i}");
        }
    }
}

fn objects() -> Vec<ArtinObject> {
    vec![
        ArtinObject::roots_of_unity(4),
        ArtinObject::primitive_roots(5),
        ArtinObject::roots_of_unity(6),
        ArtinObject::quadratic(-3).unwrap(),
    ]
}

fn combination(basis: &[Correspondence], coeffs: &[Q]) -> Correspondence {
    let mut out = basis[0].scale(&Q::zero());
    for (b, c) in basis.iter().zip(coeffs) {
        out = out.add(&b.scale(c)).unwrap();
    }
    out
}

fn coeffs() -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(a, b)| q(a, b)), 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_associative_and_bilinear(
        (i, j, k, l) in (0usize..4, 0usize..4, 0usize..4, 0usize..4),
        a in coeffs(), b in coeffs(), c in coeffs(), d in coeffs(),
    ) {
        let obj = objects();
        let (x, y, z, w) = (&obj[i], &obj[j], &obj[k], &obj[l]);
        let u = combination(&invariant_basis(x, y), &a);
        let v = combination(&invariant_basis(y, z), &b);
        let v2 = combination(&invariant_basis(y, z), &d);
        let t = combination(&invariant_basis(z, w), &c);
        let left = compose(&compose(&u, &v).unwrap(), &t).unwrap();
        let right = compose(&u, &compose(&v, &t).unwrap()).unwrap();
        prop_assert_eq!(&left.matrix, &right.matrix);
        let sum = compose(&u, &v.add(&v2).unwrap()).unwrap();
        let parts = compose(&u, &v).unwrap().add(&compose(&u, &v2).unwrap()).unwrap();
        prop_assert_eq!(&sum.matrix, &parts.matrix);
        // composites stay equivariant
        prop_assert!(Correspondence::new(left.source.clone(), left.target.clone(), left.matrix.clone()).is_ok());
    }

    #[test]
    fn json_round_trip(i in 0usize..4, j in 0usize..4, a in coeffs()) {
        let obj = objects();
        let u = combination(&invariant_basis(&obj[i], &obj[j]), &a);
        let back = Correspondence::from_json(&u.to_json()).unwrap();
        prop_assert_eq!(back, u);
    }
}

#[test]
fn basis_elements_are_equivariant_and_span() {
    let obj = objects();
    for x in &obj {
        for y in &obj {
            let basis = invariant_basis(x, y);
            for b in &basis {
                assert!(Correspondence::new(x.clone(), y.clone(), b.matrix.clone()).is_ok());
            }
            // one basis element per orbit on Y x X
            let prod = x.product(y);
            assert_eq!(basis.len(), prod.orbits().len(), "{} -> {}", x.name(), y.name());
        }
    }
}
