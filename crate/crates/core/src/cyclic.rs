//! The cyclic module of a unital algebra: chains `x0 (x) ... (x) xn`, the face,
//! degeneracy and cyclic operators, their relations, trace morphisms, the partial
//! trace over matrix coefficients and `HC_0 = A / [A, A]`.
//!
//! Operators act on chains, so relations are checked in the chain-side order:
//! `d_i d_j = d_(j-1) d_i` for `i < j`, `d_0 t_n = d_n`, and so on.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_q, q, qi, QMatrix, Q};

/// A unital associative algebra over `Q` whose elements can be multiplied exactly.
pub trait UnitalAlgebra {
    type Elem: Clone + fmt::Debug;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
}

/// Finite-dimensional algebra given by structure constants `e_i e_j = sum_k c_ijk e_k`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: String,
    dim: usize,
    unit: Vec<Q>,
    table: Vec<Vec<Vec<(usize, Q)>>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from dense structure constants `c[i][j][k]`, checking
    /// associativity and the unit exactly.
    pub fn from_structure(name: &str, unit: Vec<Q>, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let dim = unit.len();
        if c.len() != dim || c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidAlgebra(format!("{name}: structure constants must be {dim}x{dim}x{dim}")));
        }
        let table = c
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
                    .collect()
            })
            .collect();
        let alg = FiniteAlgebra {
            name: name.to_string(),
            dim,
            unit,
            table,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn from_sparse(name: &str, dim: usize, unit: Vec<Q>, f: impl Fn(usize, usize) -> Vec<(usize, Q)>) -> Self {
        let table = (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect();
        FiniteAlgebra {
            name: name.to_string(),
            dim,
            unit,
            table,
        }
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("{}: unit fails on e_{i}", self.name)));
            }
            for j in 0..self.dim {
                let ej = self.basis(j);
                let eij = self.mul_vec(&e, &ej);
                for k in 0..self.dim {
                    let ek = self.basis(k);
                    if self.mul_vec(&eij, &ek) != self.mul_vec(&e, &self.mul_vec(&ej, &ek)) {
                        return Err(Error::InvalidAlgebra(format!(
                            "{}: associativity fails on (e_{i}, e_{j}, e_{k})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rationals() -> Self {
        Self::from_sparse("Q", 1, vec![Q::one()], |_, _| vec![(0, Q::one())])
    }

    /// `Q^n` with componentwise product.
    pub fn diagonal(n: usize) -> Self {
        Self::from_sparse(&format!("Q^{n}"), n, vec![Q::one(); n], |i, j| {
            if i == j {
                vec![(i, Q::one())]
            } else {
                vec![]
            }
        })
    }

    /// `M_k(Q)` with basis `E_ab` at index `a k + b`.
    pub fn matrices(k: usize) -> Self {
        let mut unit = vec![Q::zero(); k * k];
        for a in 0..k {
            unit[a * k + a] = Q::one();
        }
        Self::from_sparse(&format!("M{k}(Q)"), k * k, unit, |i, j| {
            let (a, b) = (i / k, i % k);
            let (c, d) = (j / k, j % k);
            if b == c {
                vec![(a * k + d, Q::one())]
            } else {
                vec![]
            }
        })
    }

    /// `Q[t] / (t^k)`.
    pub fn truncated_polynomials(k: usize) -> Self {
        let mut unit = vec![Q::zero(); k];
        unit[0] = Q::one();
        Self::from_sparse(&format!("Q[t]/(t^{k})"), k, unit, |i, j| {
            if i + j < k {
                vec![(i + j, Q::one())]
            } else {
                vec![]
            }
        })
    }

    /// The group algebra `Q[Z/n]`.
    pub fn cyclic_group(n: usize) -> Self {
        let mut unit = vec![Q::zero(); n];
        unit[0] = Q::one();
        Self::from_sparse(&format!("Q[Z/{n}]"), n, unit, |i, j| vec![((i + j) % n, Q::one())])
    }

    /// Parses `Q`, `Q^n`, `M2`, `Mk`, `trunc:k`, `cyclic:n`.
    pub fn by_name(name: &str) -> Result<Self> {
        let bad = || Error::input(format!("unknown algebra {name:?} (try Q, Q^2, M2, trunc:3, cyclic:3)"));
        let parse = |s: &str| s.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(bad);
        match name {
            "Q" => Ok(Self::rationals()),
            s if s.starts_with("Q^") => Ok(Self::diagonal(parse(&s[2..])?)),
            s if s.starts_with('M') => Ok(Self::matrices(parse(&s[1..])?)),
            s if s.starts_with("trunc:") => Ok(Self::truncated_polynomials(parse(&s[6..])?)),
            s if s.starts_with("cyclic:") => Ok(Self::cyclic_group(parse(&s[7..])?)),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn mul_vec(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// `a b - b a`.
    pub fn commutator(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let ab = self.mul_vec(a, b);
        let ba = self.mul_vec(b, a);
        ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
    }

    /// The trace functional of `M_k(Q)` in the basis used by [`FiniteAlgebra::matrices`].
    pub fn matrix_trace_functional(k: usize) -> Vec<Q> {
        (0..k * k).map(|i| if i / k == i % k { Q::one() } else { Q::zero() }).collect()
    }
}

impl UnitalAlgebra for FiniteAlgebra {
    type Elem = Vec<Q>;
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        self.mul_vec(a, b)
    }
    fn one(&self) -> Vec<Q> {
        self.unit.clone()
    }
}

/// `B (x) M_k(Q)`, elements stored as pure pairs `(b, t)`.
#[derive(Clone, Debug)]
pub struct MatrixCoefficients {
    pub base: FiniteAlgebra,
    pub k: usize,
}

impl UnitalAlgebra for MatrixCoefficients {
    type Elem = (Vec<Q>, QMatrix);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.mul_vec(&a.0, &b.0), a.1.mul(&b.1).expect("square matrices of equal size"))
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), QMatrix::identity(self.k))
    }
}

#[derive(Clone, Debug)]
pub struct ChainTerm<E> {
    pub coeff: Q,
    pub factors: Vec<E>,
}

/// A finite sum of pure tensors of degree `n` (that is, with `n + 1` factors).
#[derive(Clone, Debug)]
pub struct Chain<E> {
    degree: usize,
    terms: Vec<ChainTerm<E>>,
}

impl<E: Clone> Chain<E> {
    pub fn new(degree: usize, terms: Vec<ChainTerm<E>>) -> Result<Self> {
        for t in &terms {
            if t.factors.len() != degree + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "degree {degree} chain needs {} factors, got {}",
                    degree + 1,
                    t.factors.len()
                )));
            }
        }
        Ok(Chain { degree, terms })
    }

    pub fn pure(factors: Vec<E>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::DimensionMismatch("a chain needs at least one factor".into()));
        }
        let degree = factors.len() - 1;
        Self::new(degree, vec![ChainTerm { coeff: Q::one(), factors }])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[ChainTerm<E>] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Chain { degree: self.degree, terms })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Chain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|t| ChainTerm { coeff: &t.coeff * c, factors: t.factors.clone() })
                .collect(),
        }
    }

    fn map_terms(&self, degree: usize, f: impl Fn(&[E]) -> Vec<E>) -> Self {
        Chain {
            degree,
            terms: self
                .terms
                .iter()
                .map(|t| ChainTerm { coeff: t.coeff.clone(), factors: f(&t.factors) })
                .collect(),
        }
    }
}

impl Chain<Vec<Q>> {
    /// Coordinates in the tensor basis `e_i0 (x) ... (x) e_in`, zero entries omitted.
    pub fn coordinates(&self, dim: usize) -> BTreeMap<Vec<usize>, Q> {
        let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), t.coeff.clone())];
            for f in &t.factors {
                let mut next = Vec::new();
                for (idx, c) in &partial {
                    for (k, v) in f.iter().enumerate().take(dim) {
                        if !v.is_zero() {
                            let mut i2 = idx.clone();
                            i2.push(k);
                            next.push((i2, c * v));
                        }
                    }
                }
                partial = next;
            }
            for (idx, c) in partial {
                *out.entry(idx).or_insert_with(Q::zero) += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Exact equality as elements of `A^(x)(n+1)`.
    pub fn equals(&self, other: &Self, dim: usize) -> bool {
        self.degree == other.degree && self.coordinates(dim) == other.coordinates(dim)
    }
}

/// The operators of a cyclic module. [`StandardCyclic`] is the one attached to an algebra;
/// other implementations exist to exercise the relation checker.
pub trait CyclicStructure<A: UnitalAlgebra> {
    fn face(&self, alg: &A, x: &Chain<A::Elem>, i: usize) -> Result<Chain<A::Elem>>;
    fn degeneracy(&self, alg: &A, x: &Chain<A::Elem>, j: usize) -> Result<Chain<A::Elem>>;
    fn cyclic(&self, alg: &A, x: &Chain<A::Elem>) -> Result<Chain<A::Elem>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardCyclic;

impl<A: UnitalAlgebra> CyclicStructure<A> for StandardCyclic {
    fn face(&self, alg: &A, x: &Chain<A::Elem>, i: usize) -> Result<Chain<A::Elem>> {
        face(alg, x, i)
    }
    fn degeneracy(&self, alg: &A, x: &Chain<A::Elem>, j: usize) -> Result<Chain<A::Elem>> {
        degeneracy(alg, x, j)
    }
    fn cyclic(&self, _alg: &A, x: &Chain<A::Elem>) -> Result<Chain<A::Elem>> {
        Ok(cyclic(x))
    }
}

/// `d_i`: multiplies factors `i` and `i + 1`; `d_n` multiplies `x_n x_0` into the front.
pub fn face<A: UnitalAlgebra>(alg: &A, x: &Chain<A::Elem>, i: usize) -> Result<Chain<A::Elem>> {
    let n = x.degree;
    if n == 0 || i > n {
        return Err(Error::Index(format!("face d_{i} on degree {n}")));
    }
    Ok(x.map_terms(n - 1, |f| {
        if i < n {
            let mut out = Vec::with_capacity(n);
            out.extend_from_slice(&f[..i]);
            out.push(alg.mul(&f[i], &f[i + 1]));
            out.extend_from_slice(&f[i + 2..]);
            out
        } else {
            let mut out = Vec::with_capacity(n);
            out.push(alg.mul(&f[n], &f[0]));
            out.extend_from_slice(&f[1..n]);
            out
        }
    }))
}

/// `s_j`: inserts the unit after factor `j`.
pub fn degeneracy<A: UnitalAlgebra>(alg: &A, x: &Chain<A::Elem>, j: usize) -> Result<Chain<A::Elem>> {
    let n = x.degree;
    if j > n {
        return Err(Error::Index(format!("degeneracy s_{j} on degree {n}")));
    }
    let one = alg.one();
    Ok(x.map_terms(n + 1, |f| {
        let mut out = Vec::with_capacity(n + 2);
        out.extend_from_slice(&f[..=j]);
        out.push(one.clone());
        out.extend_from_slice(&f[j + 1..]);
        out
    }))
}

/// `t_n(x0 (x) ... (x) xn) = xn (x) x0 (x) ... (x) x(n-1)`.
pub fn cyclic<E: Clone>(x: &Chain<E>) -> Chain<E> {
    let n = x.degree;
    x.map_terms(n, |f| {
        let mut out = Vec::with_capacity(n + 1);
        out.push(f[n].clone());
        out.extend_from_slice(&f[..n]);
        out
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationInstance {
    pub family: &'static str,
    pub degree: usize,
    pub indices: Vec<usize>,
    pub chains_tested: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub algebra: String,
    pub max_degree: usize,
    pub instances: Vec<RelationInstance>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.instances.iter().all(|r| r.holds)
    }

    pub fn families(&self) -> Vec<&'static str> {
        let mut f: Vec<&'static str> = self.instances.iter().map(|r| r.family).collect();
        f.dedup();
        f.sort();
        f.dedup();
        f
    }

    pub fn failing_families(&self) -> Vec<&'static str> {
        let mut f: Vec<&'static str> = self.instances.iter().filter(|r| !r.holds).map(|r| r.family).collect();
        f.sort();
        f.dedup();
        f
    }
}

pub const RELATION_FAMILIES: [&str; 11] = [
    "face-face",
    "degeneracy-degeneracy",
    "face-degeneracy (i<j)",
    "face-degeneracy (i=j)",
    "face-degeneracy (i=j+1)",
    "face-degeneracy (i>j+1)",
    "face-cyclic (i>=1)",
    "face-cyclic (i=0)",
    "degeneracy-cyclic (i>=1)",
    "degeneracy-cyclic (i=0)",
    "cyclic order",
];

/// Test chains of degree `n`: every basis tensor when there are at most 81 of them,
/// otherwise a seeded sample, plus a few random rational combinations.
pub fn test_chains(alg: &FiniteAlgebra, n: usize, seed: u64) -> Vec<Chain<Vec<Q>>> {
    let dim = alg.dim();
    let count = dim.pow(n as u32 + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9));
    let mut out = Vec::new();
    let basis_tensor = |mut idx: usize| {
        let mut factors = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            factors.push(alg.basis(idx % dim));
            idx /= dim;
        }
        Chain::pure(factors).unwrap()
    };
    if count <= 81 {
        out.extend((0..count).map(basis_tensor));
    } else {
        out.extend((0..40).map(|_| basis_tensor(rng.gen_range(0..count))));
    }
    for _ in 0..3 {
        let mut terms = Vec::new();
        for _ in 0..2 {
            let factors = (0..=n)
                .map(|_| (0..dim).map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
                .collect();
            terms.push(ChainTerm { coeff: qi(rng.gen_range(-4..=4)), factors });
        }
        out.push(Chain::new(n, terms).unwrap());
    }
    out
}

/// Checks every relation of the cyclic category on test chains of degree up to `n_max`.
pub fn check_relations<S: CyclicStructure<FiniteAlgebra>>(
    alg: &FiniteAlgebra,
    n_max: usize,
    ops: &S,
    seed: u64,
) -> Result<RelationReport> {
    let dim = alg.dim();
    let mut instances = Vec::new();
    let d = |x: &Chain<Vec<Q>>, i| ops.face(alg, x, i);
    let s = |x: &Chain<Vec<Q>>, j| ops.degeneracy(alg, x, j);
    let t = |x: &Chain<Vec<Q>>| ops.cyclic(alg, x);
    for n in 0..=n_max {
        let chains = test_chains(alg, n, seed);
        let mut record = |family: &'static str, indices: Vec<usize>, lhs: &dyn Fn(&Chain<Vec<Q>>) -> Result<Chain<Vec<Q>>>, rhs: &dyn Fn(&Chain<Vec<Q>>) -> Result<Chain<Vec<Q>>>| -> Result<()> {
            let mut holds = true;
            for x in &chains {
                if !lhs(x)?.equals(&rhs(x)?, dim) {
                    holds = false;
                    break;
                }
            }
            instances.push(RelationInstance {
                family,
                degree: n,
                indices,
                chains_tested: chains.len(),
                holds,
            });
            Ok(())
        };
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    record(
                        RELATION_FAMILIES[0],
                        vec![i, j],
                        &|x| d(&d(x, j)?, i),
                        &|x| d(&d(x, i)?, j - 1),
                    )?;
                }
            }
        }
        for j in 0..=n {
            for i in 0..=j {
                record(
                    RELATION_FAMILIES[1],
                    vec![i, j],
                    &|x| s(&s(x, j)?, i),
                    &|x| s(&s(x, i)?, j + 1),
                )?;
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                if i < j {
                    if n >= 1 {
                        record(RELATION_FAMILIES[2], vec![i, j], &|x| d(&s(x, j)?, i), &|x| s(&d(x, i)?, j - 1))?;
                    }
                } else if i == j {
                    record(RELATION_FAMILIES[3], vec![i, j], &|x| d(&s(x, j)?, i), &|x| Ok(x.clone()))?;
                } else if i == j + 1 {
                    record(RELATION_FAMILIES[4], vec![i, j], &|x| d(&s(x, j)?, i), &|x| Ok(x.clone()))?;
                } else {
                    record(RELATION_FAMILIES[5], vec![i, j], &|x| d(&s(x, j)?, i), &|x| s(&d(x, i - 1)?, j))?;
                }
            }
        }
        if n >= 1 {
            for i in 1..=n {
                record(RELATION_FAMILIES[6], vec![i], &|x| d(&t(x)?, i), &|x| t(&d(x, i - 1)?))?;
            }
            record(RELATION_FAMILIES[7], vec![0], &|x| d(&t(x)?, 0), &|x| d(x, n))?;
        }
        for i in 1..=n {
            record(RELATION_FAMILIES[8], vec![i], &|x| s(&t(x)?, i), &|x| t(&s(x, i - 1)?))?;
        }
        record(RELATION_FAMILIES[9], vec![0], &|x| s(&t(x)?, 0), &|x| t(&t(&s(x, n)?)?))?;
        record(
            RELATION_FAMILIES[10],
            vec![n],
            &|x| {
                let mut y = x.clone();
                for _ in 0..=n {
                    y = t(&y)?;
                }
                Ok(y)
            },
            &|x| Ok(x.clone()),
        )?;
    }
    Ok(RelationReport {
        algebra: alg.name().to_string(),
        max_degree: n_max,
        instances,
    })
}

fn check_tracial(alg: &FiniteAlgebra, phi: &[Q]) -> Result<()> {
    if phi.len() != alg.dim() {
        return Err(Error::DimensionMismatch(format!("functional of length {} on {}", phi.len(), alg.name())));
    }
    let apply = |v: &[Q]| v.iter().zip(phi).fold(Q::zero(), |s, (a, b)| s + a * b);
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let c = alg.commutator(&alg.basis(i), &alg.basis(j));
            if !apply(&c).is_zero() {
                return Err(Error::NotATrace(format!("phi([e_{i}, e_{j}]) = {}", fmt_q(&apply(&c)))));
            }
        }
    }
    Ok(())
}

/// The morphism `A^# -> Q^#` of a trace `phi`: `x0 (x) ... (x) xn -> phi(x0 ... xn)`,
/// returned as the coefficient of `1 (x) ... (x) 1`.
pub fn trace_morphism(alg: &FiniteAlgebra, phi: &[Q], x: &Chain<Vec<Q>>) -> Result<Q> {
    check_tracial(alg, phi)?;
    let mut total = Q::zero();
    for t in x.terms() {
        let mut p = t.factors[0].clone();
        for f in &t.factors[1..] {
            p = alg.mul_vec(&p, f);
        }
        total += &t.coeff * p.iter().zip(phi).fold(Q::zero(), |s, (a, b)| s + a * b);
    }
    Ok(total)
}

/// The same morphism on chains already mapped into `Q^#` (all factors are scalars).
pub fn scalar_chain_value(x: &Chain<Vec<Q>>) -> Q {
    x.terms()
        .iter()
        .map(|t| t.factors.iter().fold(t.coeff.clone(), |p, f| p * &f[0]))
        .fold(Q::zero(), |s, v| s + v)
}

/// `(x0 (x) t0) (x) ... (x) (xn (x) tn) -> Tr(t0 ... tn) x0 (x) ... (x) xn`.
pub fn partial_trace(x: &Chain<(Vec<Q>, QMatrix)>) -> Result<Chain<Vec<Q>>> {
    let mut terms = Vec::new();
    for t in x.terms() {
        let mut m = t.factors[0].1.clone();
        for f in &t.factors[1..] {
            m = m.mul(&f.1)?;
        }
        terms.push(ChainTerm {
            coeff: &t.coeff * m.trace(),
            factors: t.factors.iter().map(|f| f.0.clone()).collect(),
        });
    }
    Chain::new(x.degree(), terms)
}

/// `HC_0(A) = A / [A, A]`: dimension and representatives of a basis.
#[derive(Debug, Clone)]
pub struct Hc0 {
    pub dimension: usize,
    pub basis: Vec<Vec<Q>>,
    pub commutator_rank: usize,
}

pub fn hc0(alg: &FiniteAlgebra) -> Hc0 {
    let dim = alg.dim();
    let mut cols = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let c = alg.commutator(&alg.basis(i), &alg.basis(j));
            if c.iter().any(|x| !x.is_zero()) {
                cols.push(c);
            }
        }
    }
    if cols.is_empty() {
        return Hc0 {
            dimension: dim,
            basis: (0..dim).map(|i| alg.basis(i)).collect(),
            commutator_rank: 0,
        };
    }
    // rows of the transposed matrix span [A, A]; non-pivot coordinates complete a basis
    let m = QMatrix::from_fn(cols.len(), dim, |r, c| cols[r][c].clone());
    let (_, pivots) = m.rref();
    let basis: Vec<Vec<Q>> = (0..dim).filter(|c| !pivots.contains(c)).map(|c| alg.basis(c)).collect();
    Hc0 {
        dimension: basis.len(),
        basis,
        commutator_rank: pivots.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rotates by two places instead of one.
    struct DoubleRotation;

    impl CyclicStructure<FiniteAlgebra> for DoubleRotation {
        fn face(&self, alg: &FiniteAlgebra, x: &Chain<Vec<Q>>, i: usize) -> Result<Chain<Vec<Q>>> {
            face(alg, x, i)
        }
        fn degeneracy(&self, alg: &FiniteAlgebra, x: &Chain<Vec<Q>>, j: usize) -> Result<Chain<Vec<Q>>> {
            degeneracy(alg, x, j)
        }
        fn cyclic(&self, _alg: &FiniteAlgebra, x: &Chain<Vec<Q>>) -> Result<Chain<Vec<Q>>> {
            Ok(cyclic(&cyclic(x)))
        }
    }

    #[test]
    fn relations_hold_for_small_algebras() {
        for alg in [
            FiniteAlgebra::rationals(),
            FiniteAlgebra::diagonal(2),
            FiniteAlgebra::truncated_polynomials(2),
        ] {
            let r = check_relations(&alg, 3, &StandardCyclic, 7).unwrap();
            assert!(r.all_hold(), "{}: {:?}", alg.name(), r.failing_families());
            assert_eq!(r.families().len(), RELATION_FAMILIES.len());
        }
    }

    #[test]
    fn corrupted_rotation_breaks_cyclic_relations() {
        let alg = FiniteAlgebra::matrices(2);
        let r = check_relations(&alg, 3, &DoubleRotation, 1).unwrap();
        assert!(!r.all_hold());
        let bad = r.failing_families();
        assert!(bad.contains(&"face-cyclic (i=0)"), "{bad:?}");
        assert!(!bad.contains(&"face-face"));
    }

    #[test]
    fn face_index_checks() {
        let alg = FiniteAlgebra::diagonal(2);
        let x = Chain::pure(vec![alg.basis(0)]).unwrap();
        assert!(matches!(face(&alg, &x, 0), Err(Error::Index(_))));
        let y = Chain::pure(vec![alg.basis(0), alg.basis(1)]).unwrap();
        assert!(matches!(face(&alg, &y, 2), Err(Error::Index(_))));
        assert!(matches!(degeneracy(&alg, &y, 2), Err(Error::Index(_))));
    }

    #[test]
    fn last_face_wraps_around() {
        let alg = FiniteAlgebra::matrices(2);
        // E_01 (x) E_10 : d_1 gives E_10 E_01 = E_11
        let x = Chain::pure(vec![alg.basis(1), alg.basis(2)]).unwrap();
        let y = face(&alg, &x, 1).unwrap();
        let want = Chain::pure(vec![alg.basis(3)]).unwrap();
        assert!(y.equals(&want, 4));
        let z = face(&alg, &x, 0).unwrap();
        assert!(z.equals(&Chain::pure(vec![alg.basis(0)]).unwrap(), 4));
    }

    #[test]
    fn trace_must_be_tracial() {
        let alg = FiniteAlgebra::matrices(2);
        let x = Chain::pure(vec![alg.basis(1), alg.basis(2)]).unwrap();
        let tr = FiniteAlgebra::matrix_trace_functional(2);
        assert_eq!(trace_morphism(&alg, &tr, &x).unwrap(), Q::one());
        let not_trace = vec![Q::one(), Q::zero(), Q::zero(), Q::zero()];
        assert!(matches!(trace_morphism(&alg, &not_trace, &x), Err(Error::NotATrace(_))));
    }

    #[test]
    fn hc0_dimensions() {
        assert_eq!(hc0(&FiniteAlgebra::matrices(2)).dimension, 1);
        assert_eq!(hc0(&FiniteAlgebra::matrices(3)).dimension, 1);
        assert_eq!(hc0(&FiniteAlgebra::diagonal(3)).dimension, 3);
        assert_eq!(hc0(&FiniteAlgebra::truncated_polynomials(3)).dimension, 3);
    }

    #[test]
    fn invalid_structure_constants_are_rejected() {
        // e0 e0 = e1 with unit e0 is inconsistent
        let c = vec![
            vec![vec![Q::zero(), Q::one()], vec![Q::zero(), Q::one()]],
            vec![vec![Q::zero(), Q::one()], vec![Q::zero(), Q::one()]],
        ];
        let r = FiniteAlgebra::from_structure("bad", vec![Q::one(), Q::zero()], c);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }
}
