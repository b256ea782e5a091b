use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use super::lfunc::hardy_z;
use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::numkernel::brent;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Internal,
    File,
}

/// Ordinates of zeros of `L(s, chi)` on the critical line, increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    pub modulus: u64,
    pub index: usize,
    pub ordinates: Vec<f64>,
    pub source: ZeroSource,
    pub accuracy: f64,
}

/// Sampling step of the sign-change search.
const STEP: f64 = 0.02;
const REFINE_TOL: f64 = 1e-11;

fn sign_change_zeros(f: &(dyn Fn(f64) -> Result<f64> + Sync), lo: f64, hi: f64) -> Result<Vec<f64>> {
    if hi <= lo {
        return Ok(Vec::new());
    }
    let n = ((hi - lo) / STEP).ceil() as usize;
    let ts: Vec<f64> = (0..=n).map(|k| (lo + k as f64 * STEP).min(hi)).collect();
    let vals: Vec<f64> = ts.par_iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..n {
        let (a, b) = (ts[k], ts[k + 1]);
        let (fa, fb) = (vals[k], vals[k + 1]);
        if fa == 0.0 {
            out.push(a);
        } else if fa * fb < 0.0 {
            out.push(brent(f, a, b, REFINE_TOL)?);
        } else if k > 0 && k + 1 < n {
            // a dip towards zero without a sign change: look closer
            let fp = vals[k - 1];
            if fa.abs() < fp.abs() && fa.abs() < fb.abs() && fa.abs() < 0.05 {
                out.extend(resolve_pair(f, ts[k - 1], b)?);
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(out)
}

fn resolve_pair(f: &(dyn Fn(f64) -> Result<f64> + Sync), a: f64, b: f64) -> Result<Vec<f64>> {
    let m = 64;
    let h = (b - a) / m as f64;
    let mut out = Vec::new();
    let mut prev = f(a)?;
    for k in 1..=m {
        let t = a + k as f64 * h;
        let v = f(t)?;
        if prev * v < 0.0 {
            out.push(brent(f, t - h, t, REFINE_TOL)?);
        }
        prev = v;
    }
    Ok(out)
}

impl ZeroTable {
    /// Zeros of `zeta` with `0 < gamma < e_max`.
    pub fn zeta(e_max: f64) -> Result<Self> {
        Self::dirichlet(&DirichletCharacter::principal(1)?, e_max)
    }

    /// Zeros of `L(s, chi)` with `|gamma| < e_max`, `chi` primitive. For real characters only
    /// the positive ordinates are listed.
    pub fn dirichlet(chi: &DirichletCharacter, e_max: f64) -> Result<Self> {
        if !(e_max > 0.0 && e_max <= 500.0) {
            return Err(Error::input(format!("zero search height {e_max} outside (0, 500]")));
        }
        let f = |t: f64| hardy_z(chi, t);
        let lo = if chi.is_real() { 0.0 } else { -e_max };
        let mut ordinates = sign_change_zeros(&f, lo, e_max)?;
        ordinates.retain(|g| g.abs() < e_max && !(chi.is_real() && *g <= 0.0));
        Ok(ZeroTable {
            modulus: chi.modulus(),
            index: chi.index(),
            ordinates,
            source: ZeroSource::Internal,
            accuracy: 1e-10,
        })
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Ordinates `gamma` with `|gamma| <= e`, adding `-gamma` for every listed `gamma` of a
    /// real character.
    pub fn symmetric(&self, e: f64, real: bool) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &g in &self.ordinates {
            if g.abs() <= e {
                out.push(g);
                if real {
                    out.push(-g);
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// Largest `|Z_chi(gamma)|` over the table.
    pub fn validate(&self, chi: &DirichletCharacter) -> Result<f64> {
        self.ordinates
            .par_iter()
            .map(|&g| hardy_z(chi, g).map(f64::abs))
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# zeros of L(s, chi), chi = character {} mod {}", self.index, self.modulus);
        let _ = writeln!(s, "# accuracy {:e}", self.accuracy);
        for g in &self.ordinates {
            let _ = writeln!(s, "{g:.12}");
        }
        s
    }

    pub fn parse(text: &str, modulus: u64, index: usize) -> Result<Self> {
        let mut ordinates = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let g: f64 = line
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: {line:?} is not a number", i + 1)))?;
            if let Some(&last) = ordinates.last() {
                if g <= last {
                    return Err(Error::Parse(format!("line {}: ordinates must increase", i + 1)));
                }
            }
            ordinates.push(g);
        }
        Ok(ZeroTable { modulus, index, ordinates, source: ZeroSource::File, accuracy: f64::NAN })
    }

    pub fn read(path: &Path, modulus: u64, index: usize) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, modulus, index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeta_zeros() {
        assert!(ZeroTable::zeta(10.0).unwrap().is_empty());
        let z = ZeroTable::zeta(30.0).unwrap();
        assert_eq!(z.len(), 3);
        assert!((z.ordinates[0] - 14.134_725_141_734_69).abs() < 1e-8);
        assert!((z.ordinates[1] - 21.022_039_638_771_55).abs() < 1e-8);
        assert!((z.ordinates[2] - 25.010_857_580_145_69).abs() < 1e-8);
    }

    #[test]
    fn first_zero_mod_4() {
        let chi = DirichletCharacter::kronecker(-4).unwrap();
        let z = ZeroTable::dirichlet(&chi, 10.0).unwrap();
        assert!((z.ordinates[0] - 6.020_948_904_697_597).abs() < 1e-8);
    }

    #[test]
    fn text_round_trip() {
        let z = ZeroTable::zeta(30.0).unwrap();
        let back = ZeroTable::parse(&z.to_text(), 1, 0).unwrap();
        assert_eq!(back.len(), 3);
        assert!(ZeroTable::parse("2.0\n1.0\n", 1, 0).is_err());
    }
}
