//! 3×3 matrices over `Q(λ)`, acting on column vectors.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlambda::{QuadInt, QuadRat};

pub type Vec3 = [QuadRat; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat3(pub [[QuadRat; 3]; 3]);

impl Mat3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> QuadRat) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn identity() -> Self {
        Mat3::scalar(QuadRat::one())
    }

    pub fn zero() -> Self {
        Mat3::from_fn(|_, _| QuadRat::zero())
    }

    pub fn scalar(c: QuadRat) -> Self {
        Mat3::from_fn(|i, j| if i == j { c.clone() } else { QuadRat::zero() })
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3::from_fn(|i, j| QuadRat::from(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec3; 3]) -> Self {
        Mat3::from_fn(|i, j| cols[j][i].clone())
    }

    pub fn column(&self, j: usize) -> Vec3 {
        std::array::from_fn(|i| self.0[i][j].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadRat {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn conj(&self) -> Self {
        Mat3::from_fn(|i, j| self.0[i][j].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat3::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn add(&self, o: &Mat3) -> Self {
        Mat3::from_fn(|i, j| &self.0[i][j] + &o.0[i][j])
    }

    pub fn sub(&self, o: &Mat3) -> Self {
        Mat3::from_fn(|i, j| &self.0[i][j] - &o.0[i][j])
    }

    pub fn scale(&self, c: &QuadRat) -> Self {
        Mat3::from_fn(|i, j| &self.0[i][j] * c)
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| {
            let mut acc = QuadRat::zero();
            for (k, vk) in v.iter().enumerate() {
                if !vk.is_zero() && !self.0[i][k].is_zero() {
                    acc += &(&self.0[i][k] * vk);
                }
            }
            acc
        })
    }

    pub fn det(&self) -> QuadRat {
        let m = &self.0;
        let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
        let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
        let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
        &(&t1 - &t2) + &t3
    }

    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
        // adj[i][j] = (−1)^{i+j} minor(j, i)
        let minor = |r: usize, c: usize| {
            let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            cof(rows[0], rows[1], cols[0], cols[1])
        };
        Mat3::from_fn(|i, j| {
            let v = minor(j, i);
            if (i + j) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.adjugate().scale(&d.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Mat3::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> QuadRat {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<QuadRat> {
        let c = self.0[0][0].clone();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { &c } else { &QuadRat::zero() };
                if &self.0[i][j] != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(QuadRat::is_integral)
    }

    pub fn entries(&self) -> impl Iterator<Item = &QuadRat> {
        self.0.iter().flatten()
    }

    /// Least positive integer `d` with `d·self` integral.
    pub fn common_denominator(&self) -> BigInt {
        self.entries().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Scales so that the first nonzero entry (row-major) is 1; a canonical
    /// representative of the projective class.
    pub fn projective_normal_form(&self) -> Result<Self> {
        let pivot = self.entries().find(|x| !x.is_zero()).ok_or(Error::Singular)?;
        Ok(self.scale(&pivot.inv()?))
    }

    pub fn to_quad_int(&self) -> Option<[[QuadInt; 3]; 3]> {
        let mut out: [[QuadInt; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j].to_quad_int()?;
            }
        }
        Some(out)
    }
}

impl<'a> Mul<&'a Mat3> for &'a Mat3 {
    type Output = Mat3;
    fn mul(self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut acc = QuadRat::zero();
            for k in 0..3 {
                if !self.0[i][k].is_zero() && !o.0[k][j].is_zero() {
                    acc += &(&self.0[i][k] * &o.0[k][j]);
                }
            }
            acc
        })
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        &self * &o
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let l = QuadRat::lambda();
        let m = Mat3::from_fn(|i, j| QuadRat::from((i * 3 + j * j) as i64 + 1) + if i == j { l.clone() } else { QuadRat::zero() });
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat3::identity());
        assert_eq!(m.pow(-2).unwrap(), &inv * &inv);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat3::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(Mat3::scalar(QuadRat::lambda()).as_scalar(), Some(QuadRat::lambda()));
        assert_eq!(Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 1, 1]]).as_scalar(), None);
    }
}
