//! The algebra of complex quaternions `H(C)`.
//!
//! A quaternion is stored scalar-first as `(a0, a1, a2, a3)` meaning
//! `a0·i0 + a1·i1 + a2·i2 + a3·i3`. The units obey `i0 = 1`, `ik² = -1`,
//! `i1 i2 = i3`, `i2 i3 = i1`, `i3 i1 = i2`, and the complex unit `j`
//! commutes with all of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::scalar::Scalar;

/// `PRODUCT[a][b] = (sign, c)` with `ia · ib = sign · ic`.
const PRODUCT: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

/// Product of two basis units.
pub fn unit_product(a: usize, b: usize) -> (i8, usize) {
    PRODUCT[a][b]
}

#[derive(Clone, PartialEq)]
pub struct Quaternion<S> {
    c: [S; 4],
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(a0: S, a1: S, a2: S, a3: S) -> Self {
        Quaternion {
            c: [a0, a1, a2, a3],
        }
    }

    pub fn from_coords(c: [S; 4]) -> Self {
        Quaternion { c }
    }

    pub fn zero() -> Self {
        Self::scalar(S::zero())
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(s: S) -> Self {
        Quaternion::new(s, S::zero(), S::zero(), S::zero())
    }

    pub fn vector(v1: S, v2: S, v3: S) -> Self {
        Quaternion::new(S::zero(), v1, v2, v3)
    }

    /// The unit `ik`, `k = 0..=3`.
    pub fn unit(k: usize) -> Self {
        Quaternion {
            c: std::array::from_fn(|i| if i == k { S::one() } else { S::zero() }),
        }
    }

    pub fn coords(&self) -> &[S; 4] {
        &self.c
    }

    pub fn into_coords(self) -> [S; 4] {
        self.c
    }

    pub fn component(&self, k: usize) -> &S {
        &self.c[k]
    }

    /// `Sc(a)`.
    pub fn sc(&self) -> S {
        self.c[0].clone()
    }

    /// `Vec(a)` as a quaternion with zero scalar part.
    pub fn vec_part(&self) -> Self {
        Quaternion::vector(self.c[1].clone(), self.c[2].clone(), self.c[3].clone())
    }

    pub fn vec3(&self) -> [S; 3] {
        [self.c[1].clone(), self.c[2].clone(), self.c[3].clone()]
    }

    pub fn is_vector(&self) -> bool {
        self.c[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(S::is_zero)
    }

    pub fn max_modulus(&self) -> f64 {
        self.c.iter().map(S::modulus).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &S) -> Self {
        Quaternion {
            c: std::array::from_fn(|i| s.clone() * self.c[i].clone()),
        }
    }
}

/// Product by expansion over the 16 basis products.
pub fn qmul<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    let mut out: [S; 4] = std::array::from_fn(|_| S::zero());
    for (i, ai) in a.c.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (k, bk) in b.c.iter().enumerate() {
            let (sign, idx) = PRODUCT[i][k];
            let term = ai.clone() * bk.clone();
            out[idx] = if sign > 0 {
                out[idx].clone() + term
            } else {
                out[idx].clone() - term
            };
        }
    }
    Quaternion { c: out }
}

pub fn dot3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    (0..3).fold(S::zero(), |acc, i| acc + a[i].clone() * b[i].clone())
}

pub fn cross3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Product in vector form: `a0 b0 - <a,b> + [a×b] + a0 b + b0 a`.
pub fn qmul_vecform<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    let (a0, b0) = (a.sc(), b.sc());
    let (av, bv) = (a.vec3(), b.vec3());
    let cross = cross3(&av, &bv);
    let scalar = a0.clone() * b0.clone() - dot3(&av, &bv);
    let v: [S; 3] = std::array::from_fn(|i| {
        cross[i].clone() + a0.clone() * bv[i].clone() + b0.clone() * av[i].clone()
    });
    let [v1, v2, v3] = v;
    Quaternion::new(scalar, v1, v2, v3)
}

/// `v² = -<v,v>` for a purely vectorial `v`.
pub fn square_of_vector<S: Scalar>(v: &Quaternion<S>) -> Result<S> {
    if !v.is_vector() {
        return Err(Error::NotVectorial(v.c[0].to_literal()));
    }
    let w = v.vec3();
    Ok(-dot3(&w, &w))
}

/// Matrix of `f ↦ q·f` on coordinates.
pub fn lift_left<S: Scalar>(q: &Quaternion<S>) -> Matrix4<S> {
    let mut m = Matrix4::<S>::zero();
    for (a, qa) in q.c.iter().enumerate() {
        for col in 0..4 {
            let (sign, row) = PRODUCT[a][col];
            let v = if sign > 0 { qa.clone() } else { -qa.clone() };
            m.0[row][col] = m.0[row][col].clone() + v;
        }
    }
    m
}

/// Matrix of `f ↦ f·q` on coordinates (the right multiplication operator `M^q`).
pub fn lift_right<S: Scalar>(q: &Quaternion<S>) -> Matrix4<S> {
    let mut m = Matrix4::<S>::zero();
    for (b, qb) in q.c.iter().enumerate() {
        for col in 0..4 {
            let (sign, row) = PRODUCT[col][b];
            let v = if sign > 0 { qb.clone() } else { -qb.clone() };
            m.0[row][col] = m.0[row][col].clone() + v;
        }
    }
    m
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Quaternion<S>;

    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Quaternion::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Quaternion<S>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;

    fn neg(self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        Quaternion::new(-a0, -a1, -a2, -a3)
    }
}

impl<S: Scalar> Mul for &Quaternion<S> {
    type Output = Quaternion<S>;

    fn mul(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        qmul(self, rhs)
    }
}

impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Quaternion<S>;

    fn mul(self, rhs: Quaternion<S>) -> Quaternion<S> {
        qmul(&self, &rhs)
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(S::to_literal).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl<S: Scalar> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
