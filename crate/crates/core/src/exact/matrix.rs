use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Minimal commutative ring interface used by [`Matrix`].
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<BigRational>;

impl<T: Ring> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.zero_elem(other);
        let mut out = Matrix::filled(self.rows, other.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    fn zero_elem(&self, other: &Matrix<T>) -> T {
        self.data
            .first()
            .or(other.data.first())
            .map(|x| x.zero_like())
            .expect("zero element of an empty matrix")
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_same(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_same(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.mul(c))
    }

    fn check_same(&self, other: &Matrix<T>) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        let mut t = self.data[0].zero_like();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows == self.cols && self.mul(self).map(|p| &p == self).unwrap_or(false)
    }

    pub fn identity_like(&self, n: usize) -> Matrix<T> {
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn column(v: &[BigRational]) -> Self {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<BigRational>> {
        let (_, pivots) = self.rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|i| self.get(i, c).clone()).collect())
            .collect()
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero() && !v[j].is_zero())
                    .fold(BigRational::zero(), |s, j| s + self.get(i, j) * &v[j])
            })
            .collect())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn rank_and_rref() {
        let m = QMatrix::from_fn(3, 3, |i, j| q((i * 3 + j) as i64, 1));
        assert_eq!(m.rank(), 2);
        let id = QMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert!(id.is_idempotent());
        let p = QMatrix::from_fn(2, 2, |_, _| q(1, 2));
        assert!(p.is_idempotent());
        assert_eq!(p.rank(), 1);
        assert_eq!(p.column_space(), vec![vec![q(1, 2), q(1, 2)]]);
    }

    #[test]
    fn shapes_are_checked() {
        let a = QMatrix::zeros(2, 3);
        let b = QMatrix::zeros(2, 3);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_ok());
        assert!(a.add(&QMatrix::zeros(3, 2)).is_err());
    }
}
