//! Exact arithmetic: rationals, dense matrices over rings, cyclotomic numbers.

mod cyclotomic;
mod matrix;

pub use cyclotomic::Cyclotomic;
pub use matrix::{Matrix, QMatrix, Ring};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from(BigInt::from(n))
}

pub fn rat_to_f64(x: &Q) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back to scaled division for huge numerators or denominators
    let n = x.numer();
    let d = x.denom();
    let shift = (n.bits() as i64).max(d.bits() as i64) - 1000;
    if shift > 0 {
        let ns = n >> (shift as usize);
        let ds = d >> (shift as usize);
        if ds.is_zero() {
            return if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        return ns.to_f64().unwrap_or(0.0) / ds.to_f64().unwrap_or(1.0);
    }
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
}

/// Formats as `"n"` or `"n/d"`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from(n))
        }
    }
}
