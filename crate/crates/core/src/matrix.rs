//! 4×4 complex matrices acting on scalar-first quaternion coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix4<S>(pub [[S; 4]; 4]);

impl<S: Scalar> Matrix4<S> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Matrix4(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(s: S) -> Self {
        Self::from_fn(|r, c| if r == c { s.clone() } else { S::zero() })
    }

    pub fn from_rows(rows: [[S; 4]; 4]) -> Self {
        Matrix4(rows)
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.0[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(S::is_zero)
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> f64 {
        self.0.iter().flatten().map(S::modulus).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|r, c| s.clone() * self.0[r][c].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].clone())
    }

    pub fn trace(&self) -> S {
        (0..4).fold(S::zero(), |acc, i| acc + self.0[i][i].clone())
    }

    /// Entries as `[re, im]` pairs for JSON output.
    pub fn to_pairs(&self) -> [[[f64; 2]; 4]; 4] {
        std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let z = self.0[r][c].to_c64();
                [z.re, z.im]
            })
        })
    }

    pub fn apply(&self, v: &[S; 4]) -> [S; 4] {
        std::array::from_fn(|r| {
            (0..4).fold(S::zero(), |acc, c| {
                acc + self.0[r][c].clone() * v[c].clone()
            })
        })
    }

    /// Gauss–Jordan inverse with largest-modulus pivoting.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0.clone();
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let pivot = (col..4)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&x, &y| a[x][col].modulus().total_cmp(&a[y][col].modulus()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for c in 0..4 {
                a[col][c] = a[col][c].clone() * p.clone();
                inv[col][c] = inv[col][c].clone() * p.clone();
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..4 {
                    a[r][c] = a[r][c].clone() - factor.clone() * a[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - factor.clone() * inv[col][c].clone();
                }
            }
        }
        Some(Matrix4(inv))
    }
}

impl<S: Scalar> Mul for &Matrix4<S> {
    type Output = Matrix4<S>;

    fn mul(self, rhs: &Matrix4<S>) -> Matrix4<S> {
        Matrix4::from_fn(|r, c| {
            (0..4).fold(S::zero(), |acc, k| {
                acc + self.0[r][k].clone() * rhs.0[k][c].clone()
            })
        })
    }
}

impl<S: Scalar> Mul for Matrix4<S> {
    type Output = Matrix4<S>;

    fn mul(self, rhs: Matrix4<S>) -> Matrix4<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Add for &Matrix4<S> {
    type Output = Matrix4<S>;

    fn add(self, rhs: &Matrix4<S>) -> Matrix4<S> {
        Matrix4::from_fn(|r, c| self.0[r][c].clone() + rhs.0[r][c].clone())
    }
}

impl<S: Scalar> Add for Matrix4<S> {
    type Output = Matrix4<S>;

    fn add(self, rhs: Matrix4<S>) -> Matrix4<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for &Matrix4<S> {
    type Output = Matrix4<S>;

    fn sub(self, rhs: &Matrix4<S>) -> Matrix4<S> {
        Matrix4::from_fn(|r, c| self.0[r][c].clone() - rhs.0[r][c].clone())
    }
}

impl<S: Scalar> Sub for Matrix4<S> {
    type Output = Matrix4<S>;

    fn sub(self, rhs: Matrix4<S>) -> Matrix4<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for Matrix4<S> {
    type Output = Matrix4<S>;

    fn neg(self) -> Matrix4<S> {
        Matrix4::from_fn(|r, c| -self.0[r][c].clone())
    }
}

impl<S: Scalar> fmt::Debug for Matrix4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(S::to_literal).collect();
            f.write_str(&cells.join(", "))?;
        }
        f.write_str("]")
    }
}
