//! Artin motives of abelian extensions of `Q`: finite sets with a continuous action of
//! `Gal(Q(mu_N)/Q) = (Z/N)^*`, equivariant rational correspondences, idempotents and
//! the fiber functor to representations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{kronecker_symbol, lcm, totient, units, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, q, Cyclotomic, Matrix, QMatrix, Ring, Q};

/// A finite set of points with an action of `(Z/N)^*`; `action[g][x]` is `g . x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinObject {
    name: String,
    level: u64,
    points: usize,
    action: BTreeMap<u64, Vec<usize>>,
}

impl ArtinObject {
    /// Validates that every unit acts by a permutation and that the action is a homomorphism.
    pub fn from_action(name: &str, level: u64, points: usize, action: BTreeMap<u64, Vec<usize>>) -> Result<Self> {
        if level == 0 {
            return Err(Error::input("level must be positive"));
        }
        let us = units(level);
        for g in &us {
            let p = action
                .get(g)
                .ok_or_else(|| Error::NotEquivariant(format!("{name}: no permutation for unit {g} mod {level}")))?;
            let mut seen = vec![false; points];
            if p.len() != points || p.iter().any(|&y| y >= points || std::mem::replace(&mut seen[y], true)) {
                return Err(Error::NotEquivariant(format!("{name}: unit {g} does not act by a permutation")));
            }
        }
        if action.keys().any(|g| !us.contains(g)) {
            return Err(Error::NotEquivariant(format!("{name}: action given on a non-unit")));
        }
        for &g in &us {
            for &h in &us {
                let gh = if level == 1 { 0 } else { g * h % level };
                let lhs = &action[&gh];
                let (pg, ph) = (&action[&g], &action[&h]);
                if (0..points).any(|x| lhs[x] != pg[ph[x]]) {
                    return Err(Error::NotEquivariant(format!("{name}: action is not a homomorphism at ({g}, {h})")));
                }
            }
        }
        Ok(ArtinObject {
            name: name.to_string(),
            level,
            points,
            action,
        })
    }

    fn build(name: String, level: u64, points: usize, f: impl Fn(u64, usize) -> usize) -> Self {
        let action = units(level).into_iter().map(|g| (g, (0..points).map(|x| f(g, x)).collect())).collect();
        ArtinObject { name, level, points, action }
    }

    /// `k` points with trivial action.
    pub fn trivial(points: usize) -> Self {
        Self::build(format!("Q^{points}"), 1, points, |_, x| x)
    }

    /// `Spec Q[Z/N]`: all `N`-th roots of unity `zeta^a`, indexed by `a in Z/N`.
    pub fn roots_of_unity(n: u64) -> Self {
        Self::build(format!("mu_{n}"), n, n as usize, |g, a| ((g * a as u64) % n) as usize)
    }

    /// `Spec Q(zeta_N)`: the primitive `N`-th roots of unity, in increasing order of exponent.
    pub fn primitive_roots(n: u64) -> Self {
        let us = units(n);
        let pos: BTreeMap<u64, usize> = us.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Self::build(format!("Q(zeta_{n})"), n, us.len(), move |g, i| {
            if n == 1 {
                0
            } else {
                pos[&(g * us[i] % n)]
            }
        })
    }

    /// The two embeddings of `Q(sqrt d)` for a fundamental discriminant `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        let n = d.unsigned_abs();
        DirichletCharacter::kronecker(d)?;
        Ok(Self::build(format!("Q(sqrt {d})"), n, 2, |g, x| {
            if kronecker_symbol(d, g) == 1 {
                x
            } else {
                1 - x
            }
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// The permutation of a unit `g` modulo any multiple of the level.
    pub fn permutation(&self, g: u64) -> Result<&[usize]> {
        let r = if self.level == 1 { 0 } else { g % self.level };
        self.action
            .get(&r)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::NotAUnit(format!("{g} mod {}", self.level)))
    }

    /// The same object regarded at level `m`, a multiple of the current level.
    pub fn at_level(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch(format!("{} does not divide {m}", self.level)));
        }
        let mut action = BTreeMap::new();
        for g in units(m) {
            action.insert(g, self.permutation(g)?.to_vec());
        }
        Ok(ArtinObject {
            name: self.name.clone(),
            level: m,
            points: self.points,
            action,
        })
    }

    /// Equal as `(Z/L)^*`-sets at a common level `L`.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.points != other.points {
            return false;
        }
        let m = lcm(self.level, other.level);
        units(m)
            .into_iter()
            .all(|g| self.permutation(g).ok() == other.permutation(g).ok())
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let m = lcm(self.level, other.level);
        let k = self.points;
        Self::build(format!("{} + {}", self.name, other.name), m, k + other.points, |g, x| {
            if x < k {
                self.permutation(g).unwrap()[x]
            } else {
                k + other.permutation(g).unwrap()[x - k]
            }
        })
    }

    pub fn product(&self, other: &Self) -> Self {
        let m = lcm(self.level, other.level);
        let k = other.points;
        Self::build(format!("{} x {}", self.name, other.name), m, self.points * k, |g, x| {
            self.permutation(g).unwrap()[x / k] * k + other.permutation(g).unwrap()[x % k]
        })
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for x in 0..self.points {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.action.values().map(|p| p[x]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    fn permutation_matrix(&self, g: u64) -> QMatrix {
        let p = self.permutation(g).unwrap();
        QMatrix::from_fn(self.points, self.points, |i, j| if p[j] == i { Q::one() } else { Q::zero() })
    }
}

/// An equivariant `Q`-linear combination of correspondences `X -> Y`, stored as a
/// `|Y| x |X|` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pub source: ArtinObject,
    pub target: ArtinObject,
    pub matrix: QMatrix,
}

impl Correspondence {
    pub fn new(source: ArtinObject, target: ArtinObject, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != target.points || matrix.cols() != source.points {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} for {} -> {} points",
                matrix.rows(),
                matrix.cols(),
                source.points,
                target.points
            )));
        }
        let m = lcm(source.level, target.level);
        for g in units(m) {
            let ps = source.permutation(g)?;
            let pt = target.permutation(g)?;
            for y in 0..target.points {
                for x in 0..source.points {
                    if matrix.get(pt[y], ps[x]) != matrix.get(y, x) {
                        return Err(Error::NotEquivariant(format!(
                            "entry ({y}, {x}) is not invariant under {g} mod {m}"
                        )));
                    }
                }
            }
        }
        Ok(Correspondence { source, target, matrix })
    }

    pub fn identity(x: &ArtinObject) -> Self {
        Correspondence {
            source: x.clone(),
            target: x.clone(),
            matrix: QMatrix::identity(x.points),
        }
    }

    /// The graph of an equivariant map `f: X -> Y`.
    pub fn graph(source: &ArtinObject, target: &ArtinObject, f: &[usize]) -> Result<Self> {
        if f.len() != source.points || f.iter().any(|&y| y >= target.points) {
            return Err(Error::ShapeMismatch("map does not fit the point sets".into()));
        }
        let m = QMatrix::from_fn(target.points, source.points, |y, x| if f[x] == y { Q::one() } else { Q::zero() });
        Self::new(source.clone(), target.clone(), m)
    }

    /// The transposed correspondence `Y -> X`.
    pub fn transpose(&self) -> Self {
        Correspondence {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.source.same_as(&other.source) || !self.target.same_as(&other.target) {
            return Err(Error::ShapeMismatch("correspondences between different objects".into()));
        }
        Ok(Correspondence {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Correspondence {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }
}

/// `v . u` for `u: X -> Y`, `v: Y -> Z`.
pub fn compose(u: &Correspondence, v: &Correspondence) -> Result<Correspondence> {
    if !u.target.same_as(&v.source) {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {} -> {} with {} -> {}",
            u.source.name, u.target.name, v.source.name, v.target.name
        )));
    }
    Ok(Correspondence {
        source: u.source.clone(),
        target: v.target.clone(),
        matrix: v.matrix.mul(&u.matrix)?,
    })
}

/// Basis of `Hom(X, Y)`: indicator matrices of the orbits on `Y x X`.
pub fn invariant_basis(x: &ArtinObject, y: &ArtinObject) -> Vec<Correspondence> {
    let m = lcm(x.level, y.level);
    let gs = units(m);
    let mut seen = vec![vec![false; x.points]; y.points];
    let mut out = Vec::new();
    for b in 0..y.points {
        for a in 0..x.points {
            if seen[b][a] {
                continue;
            }
            let mut mat = QMatrix::zeros(y.points, x.points);
            for &g in &gs {
                let (gb, ga) = (y.permutation(g).unwrap()[b], x.permutation(g).unwrap()[a]);
                seen[gb][ga] = true;
                mat.set(gb, ga, Q::one());
            }
            out.push(Correspondence {
                source: x.clone(),
                target: y.clone(),
                matrix: mat,
            });
        }
    }
    out
}

/// The image of an idempotent endomorphism: an object of the pseudo-abelian envelope.
#[derive(Debug, Clone)]
pub struct VirtualObject {
    pub ambient: ArtinObject,
    pub projector: QMatrix,
    pub rank: usize,
    pub basis: Vec<Vec<Q>>,
}

pub fn idempotent_range(p: &Correspondence) -> Result<VirtualObject> {
    if !p.source.same_as(&p.target) {
        return Err(Error::ShapeMismatch("idempotent must be an endomorphism".into()));
    }
    if !p.matrix.is_idempotent() {
        return Err(Error::NotIdempotent(format!("{} x {} matrix with p^2 != p", p.matrix.rows(), p.matrix.cols())));
    }
    let basis = p.matrix.column_space();
    Ok(VirtualObject {
        ambient: p.source.clone(),
        projector: p.matrix.clone(),
        rank: basis.len(),
        basis,
    })
}

/// The permutation representation of `(Z/N)^*` on `Q^X`.
#[derive(Debug, Clone)]
pub struct FiberRepresentation {
    pub level: u64,
    pub dim: usize,
    pub matrices: BTreeMap<u64, QMatrix>,
}

pub fn fiber_functor(x: &ArtinObject) -> FiberRepresentation {
    FiberRepresentation {
        level: x.level,
        dim: x.points,
        matrices: units(x.level).into_iter().map(|g| (g, x.permutation_matrix(g))).collect(),
    }
}

impl FiberRepresentation {
    pub fn character(&self, g: u64) -> Q {
        self.matrices[&(if self.level == 1 { 0 } else { g % self.level })].trace()
    }

    /// Multiplicity of each Dirichlet character modulo the level, by index.
    pub fn decompose(&self) -> Result<Vec<(usize, u64)>> {
        let n = self.level;
        let order = q(totient(n) as i64, 1);
        let mut out = Vec::new();
        for chi in DirichletCharacter::all(n)? {
            let bar = chi.conj();
            let mut s = Cyclotomic::zero(chi.root_order());
            for g in units(n) {
                s = s.add(&bar.exact_value(g).scale(&self.character(g)));
            }
            let m = s
                .as_rational()
                .map(|v| v / &order)
                .ok_or_else(|| Error::Convergence("character multiplicity is not rational".into()))?;
            if !m.is_integer() {
                return Err(Error::Convergence(format!("multiplicity {} is not an integer", fmt_q(&m))));
            }
            let m = m.to_integer();
            if !m.is_zero() {
                out.push((chi.index(), m.try_into().unwrap_or(0)));
            }
        }
        Ok(out)
    }
}

/// `p_chi = |G|^-1 sum_g chi(g) g` acting on `Q(zeta)^X`.
pub fn character_idempotent(chi: &DirichletCharacter, x: &ArtinObject) -> Result<Matrix<Cyclotomic>> {
    let n = chi.modulus();
    if !n.is_multiple_of(x.level) && !x.level.is_multiple_of(n) {
        return Err(Error::LevelMismatch(format!("character mod {n} on an object of level {}", x.level)));
    }
    let m = lcm(n, x.level);
    let e = chi.root_order();
    let zero = Cyclotomic::zero(e);
    let mut p = Matrix::filled(x.points, x.points, zero.clone());
    let us = units(m);
    let inv_order = q(1, us.len() as i64);
    for g in &us {
        let c = chi.exact_value(g % n).scale(&inv_order);
        let perm = x.permutation(*g)?;
        for (col, &row) in perm.iter().enumerate() {
            let v = p.get(row, col).add(&c);
            p.set(row, col, v);
        }
    }
    Ok(p)
}

/// Rational idempotents: sums of `p_chi` over Galois orbits of characters.
pub fn rational_isotypic_idempotents(x: &ArtinObject) -> Result<Vec<(Vec<usize>, Correspondence)>> {
    let n = x.level;
    let chars = DirichletCharacter::all(n)?;
    let e = chars[0].root_order();
    let mut used = vec![false; chars.len()];
    let mut out = Vec::new();
    for i in 0..chars.len() {
        if used[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for a in units(e) {
            for (j, c) in chars.iter().enumerate() {
                if !used[j] && units(n).into_iter().all(|g| {
                    let ki = chars[i].exponent_at(g).unwrap();
                    c.exponent_at(g).unwrap() == ki * a % e
                }) {
                    used[j] = true;
                    orbit.push(j);
                }
            }
        }
        let mut sum: Option<Matrix<Cyclotomic>> = None;
        for &j in &orbit {
            let pj = character_idempotent(&chars[j], x)?;
            sum = Some(match sum {
                None => pj,
                Some(s) => s.add(&pj)?,
            });
        }
        let sum = sum.unwrap();
        let mut rat = QMatrix::zeros(x.points, x.points);
        for r in 0..x.points {
            for c in 0..x.points {
                let v = sum
                    .get(r, c)
                    .as_rational()
                    .ok_or_else(|| Error::Convergence("orbit idempotent is not rational".into()))?;
                rat.set(r, c, v);
            }
        }
        out.push((orbit, Correspondence::new(x.clone(), x.clone(), rat)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtinObjectJson {
    pub name: String,
    pub level: u64,
    pub points: usize,
    pub action: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrespondenceJson {
    pub source: ArtinObjectJson,
    pub target: ArtinObjectJson,
    pub matrix: Vec<Vec<String>>,
}

impl ArtinObject {
    pub fn to_json(&self) -> ArtinObjectJson {
        ArtinObjectJson {
            name: self.name.clone(),
            level: self.level,
            points: self.points,
            action: self.action.iter().map(|(g, p)| (g.to_string(), p.clone())).collect(),
        }
    }

    pub fn from_json(j: &ArtinObjectJson) -> Result<Self> {
        let mut action = BTreeMap::new();
        for (g, p) in &j.action {
            let g: u64 = g.parse().map_err(|_| Error::Parse(format!("unit {g:?}")))?;
            action.insert(g, p.clone());
        }
        Self::from_action(&j.name, j.level, j.points, action)
    }
}

impl Correspondence {
    pub fn to_json(&self) -> CorrespondenceJson {
        CorrespondenceJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            matrix: (0..self.matrix.rows())
                .map(|r| (0..self.matrix.cols()).map(|c| fmt_q(self.matrix.get(r, c))).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &CorrespondenceJson) -> Result<Self> {
        let source = ArtinObject::from_json(&j.source)?;
        let target = ArtinObject::from_json(&j.target)?;
        let rows = j.matrix.len();
        let cols = j.matrix.first().map(|r| r.len()).unwrap_or(0);
        let mut m = QMatrix::zeros(rows, cols);
        for (r, row) in j.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged matrix".into()));
            }
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, parse_q(s)?);
            }
        }
        Self::new(source, target, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_objects_are_valid_actions() {
        for n in [1u64, 2, 5, 8, 12] {
            let x = ArtinObject::roots_of_unity(n);
            ArtinObject::from_action("check", n, x.points, x.action.clone()).unwrap();
            let y = ArtinObject::primitive_roots(n);
            assert_eq!(y.points() as u64, totient(n));
            assert_eq!(y.orbits().len(), 1);
        }
        // 2 and 4 = 2 * 2 cannot both swap
        let bad: BTreeMap<u64, Vec<usize>> =
            [(1, vec![0, 1]), (2, vec![1, 0]), (3, vec![1, 0]), (4, vec![1, 0])].into_iter().collect();
        assert!(matches!(ArtinObject::from_action("bad", 5, 2, bad), Err(Error::NotEquivariant(_))));
    }

    #[test]
    fn gaussian_field_is_trivial_plus_sign() {
        let x = ArtinObject::quadratic(-4).unwrap();
        let rep = fiber_functor(&x);
        let dec = rep.decompose().unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.iter().all(|&(_, m)| m == 1));
        assert!(dec.iter().any(|&(i, _)| i == 0));
    }

    #[test]
    fn composition_and_invariant_basis() {
        let x = ArtinObject::roots_of_unity(4);
        let y = ArtinObject::primitive_roots(4);
        let hom = invariant_basis(&x, &y);
        // orbits of (Z/4)^* on prim x mu_4: |Y x X| = 8, free action of order 2
        assert_eq!(hom.len(), 4);
        for u in &hom {
            Correspondence::new(u.source.clone(), u.target.clone(), u.matrix.clone()).unwrap();
        }
        let v = Correspondence::identity(&y);
        let w = compose(&hom[0], &v).unwrap();
        assert_eq!(w.matrix, hom[0].matrix);
        assert!(compose(&v, &hom[0]).is_err());
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let x = ArtinObject::trivial(2);
        let m = QMatrix::from_fn(2, 2, |_, _| Q::one());
        let p = Correspondence::new(x.clone(), x, m).unwrap();
        assert!(matches!(idempotent_range(&p), Err(Error::NotIdempotent(_))));
    }

    #[test]
    fn character_idempotents_are_complete() {
        let x = ArtinObject::roots_of_unity(5);
        let chars = DirichletCharacter::all(5).unwrap();
        let ps: Vec<_> = chars.iter().map(|c| character_idempotent(c, &x).unwrap()).collect();
        let mut total = ps[0].clone();
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(p.mul(p).unwrap(), *p);
            for (j, r) in ps.iter().enumerate() {
                if i != j {
                    assert!(p.mul(r).unwrap().is_zero());
                }
            }
            if i > 0 {
                total = total.add(p).unwrap();
            }
        }
        assert_eq!(total, total.identity_like(5));
    }

    #[test]
    fn rational_orbits() {
        let x = ArtinObject::roots_of_unity(5);
        let r = rational_isotypic_idempotents(&x).unwrap();
        // characters mod 5: trivial, the quadratic one, and a conjugate pair of order 4
        assert_eq!(r.len(), 3);
        let ranks: Vec<usize> = r.iter().map(|(_, p)| idempotent_range(p).unwrap().rank).collect();
        assert_eq!(ranks.iter().sum::<usize>(), 5);
    }

    #[test]
    fn json_round_trip() {
        let x = ArtinObject::primitive_roots(8);
        let y = ArtinObject::from_json(&x.to_json()).unwrap();
        assert_eq!(x, y);
        let u = &invariant_basis(&x, &x)[1];
        let v = Correspondence::from_json(&u.to_json()).unwrap();
        assert_eq!(u, &v);
    }
}
