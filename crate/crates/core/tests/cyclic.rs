use endomotive::cyclic::*;
use endomotive::exact::{q, QMatrix, Q};
use proptest::prelude::*;

fn algebras() -> Vec<FiniteAlgebra> {
    vec![FiniteAlgebra::diagonal(2), FiniteAlgebra::matrices(2), FiniteAlgebra::truncated_polynomials(3)]
}

#[test]
fn all_relation_families_hold_to_degree_four() {
    for alg in algebras() {
        let r = check_relations(&alg, 4, &StandardCyclic, 11).unwrap();
        assert!(r.all_hold(), "{}: {:?}", alg.name(), r.failing_families());
        assert_eq!(r.families().len(), RELATION_FAMILIES.len());
        assert_eq!(r.max_degree, 4);
    }
}

#[test]
fn matrix_algebra_has_one_dimensional_hc0() {
    for k in 1..=3 {
        let h = hc0(&FiniteAlgebra::matrices(k));
        assert_eq!(h.dimension, 1);
        assert_eq!(h.commutator_rank, k * k - 1);
    }
}

fn small_q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn element(dim: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(small_q(), dim)
}

fn matrix2() -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(small_q(), 4).prop_map(|v| QMatrix::from_fn(2, 2, |i, j| v[2 * i + j].clone()))
}

/// Random chains of degree `n` over `B (x) M_2(Q)` with `B = Q[t]/(t^2)`.
fn matrix_chain(n: usize) -> impl Strategy<Value = Chain<(Vec<Q>, QMatrix)>> {
    let term = (small_q(), proptest::collection::vec((element(2), matrix2()), n + 1))
        .prop_map(|(coeff, factors)| ChainTerm { coeff, factors });
    proptest::collection::vec(term, 1..3).prop_map(move |terms| Chain::new(n, terms).unwrap())
}

fn algebra_chain(dim: usize, n: usize) -> impl Strategy<Value = Chain<Vec<Q>>> {
    let term = (small_q(), proptest::collection::vec(element(dim), n + 1))
        .prop_map(|(coeff, factors)| ChainTerm { coeff, factors });
    proptest::collection::vec(term, 1..3).prop_map(move |terms| Chain::new(n, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_trace_commutes_with_cyclic_operators(x in (1usize..4).prop_flat_map(matrix_chain)) {
        let base = FiniteAlgebra::truncated_polynomials(2);
        let mc = MatrixCoefficients { base: base.clone(), k: 2 };
        let n = x.degree();
        let tr = |c: &Chain<(Vec<Q>, QMatrix)>| partial_trace(c).unwrap();
        for i in 0..=n {
            prop_assert!(tr(&face(&mc, &x, i).unwrap()).equals(&face(&base, &tr(&x), i).unwrap(), 2), "d_{}", i);
            prop_assert!(tr(&degeneracy(&mc, &x, i).unwrap()).equals(&degeneracy(&base, &tr(&x), i).unwrap(), 2), "s_{}", i);
        }
        prop_assert!(tr(&cyclic(&x)).equals(&cyclic(&tr(&x)), 2));
    }

    #[test]
    fn trace_morphism_is_rotation_invariant(x in algebra_chain(4, 3)) {
        let alg = FiniteAlgebra::matrices(2);
        let phi = FiniteAlgebra::matrix_trace_functional(2);
        let v = trace_morphism(&alg, &phi, &x).unwrap();
        prop_assert_eq!(trace_morphism(&alg, &phi, &cyclic(&x)).unwrap(), v.clone());
        // the trace morphism is a map of cyclic modules into Q^#
        let d = face(&alg, &x, 0).unwrap();
        prop_assert_eq!(trace_morphism(&alg, &phi, &d).unwrap(), v);
    }

    #[test]
    fn faces_are_linear(x in algebra_chain(3, 2), y in algebra_chain(3, 2), c in small_q()) {
        let alg = FiniteAlgebra::truncated_polynomials(3);
        let sum = x.add(&y.scale(&c)).unwrap();
        for i in 0..=2 {
            let lhs = face(&alg, &sum, i).unwrap();
            let rhs = face(&alg, &x, i).unwrap().add(&face(&alg, &y, i).unwrap().scale(&c)).unwrap();
            prop_assert!(lhs.equals(&rhs, 3));
        }
    }
}
