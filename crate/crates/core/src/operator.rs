//! Normal-form algebra of constant-coefficient differential operators on
//! 4-component functions of `x ∈ R³`.
//!
//! Every operator is a finite sum of terms `C · ∂^n · R_m`, where `C` is a
//! constant 4×4 matrix, `∂^n = ∂1^n1 ∂2^n2 ∂3^n3` and `R_m` is the product of
//! the axis reflections `x_k → -x_k` for `k ∈ m`. Reflections always sit to
//! the right of derivatives, so `R_m` acts on the argument first. The
//! normalization rules are `R_k ∂_k = -∂_k R_k`, `R_k ∂_j = ∂_j R_k` for
//! `j ≠ k`, `R_k² = Id`, and constants commute with both.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::quaternion::{lift_left, lift_right, Quaternion};
use crate::scalar::Scalar;

/// Set of reflected axes, bit `k-1` for axis `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReflectionMask(u8);

impl ReflectionMask {
    pub const EMPTY: ReflectionMask = ReflectionMask(0);

    pub fn axis(k: usize) -> Result<Self> {
        check_axis(k)?;
        Ok(ReflectionMask(1 << (k - 1)))
    }

    pub fn contains(self, k: usize) -> bool {
        (1..=3).contains(&k) && self.0 & (1 << (k - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (1..=3).filter(move |&k| self.contains(k))
    }

    fn xor(self, other: Self) -> Self {
        ReflectionMask(self.0 ^ other.0)
    }
}

/// Derivative multi-index and reflection mask of one normal-form term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub degree: [u32; 3],
    pub mask: ReflectionMask,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        degree: [0, 0, 0],
        mask: ReflectionMask::EMPTY,
    };

    pub fn order(&self) -> u32 {
        self.degree.iter().sum()
    }

    /// `(∂^a R_m)(∂^b R_n) = sign · ∂^(a+b) R_(m xor n)`.
    fn compose(&self, rhs: &Monomial) -> (bool, Monomial) {
        let flips: u32 = self.mask.axes().map(|k| rhs.degree[k - 1]).sum();
        let degree = std::array::from_fn(|i| self.degree[i] + rhs.degree[i]);
        (
            flips % 2 == 1,
            Monomial {
                degree,
                mask: self.mask.xor(rhs.mask),
            },
        )
    }
}

fn check_axis(k: usize) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::AxisOutOfRange(k))
    }
}

/// Canonical operator: map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq)]
pub struct DiffOperator<S> {
    terms: BTreeMap<Monomial, Matrix4<S>>,
}

impl<S: Scalar> std::fmt::Debug for DiffOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Scalar> Default for DiffOperator<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> DiffOperator<S> {
    pub fn zero() -> Self {
        DiffOperator {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::const_matrix(Matrix4::identity())
    }

    pub fn term(mono: Monomial, coeff: Matrix4<S>) -> Self {
        let mut op = Self::zero();
        op.accumulate(mono, coeff);
        op
    }

    /// `∂_k`.
    pub fn partial(k: usize) -> Result<Self> {
        check_axis(k)?;
        let mut degree = [0; 3];
        degree[k - 1] = 1;
        Ok(Self::term(
            Monomial {
                degree,
                mask: ReflectionMask::EMPTY,
            },
            Matrix4::identity(),
        ))
    }

    /// `R_k f(x) = f(x with x_k negated)`.
    pub fn reflect(k: usize) -> Result<Self> {
        Ok(Self::term(
            Monomial {
                degree: [0; 3],
                mask: ReflectionMask::axis(k)?,
            },
            Matrix4::identity(),
        ))
    }

    pub fn const_matrix(m: Matrix4<S>) -> Self {
        Self::term(Monomial::ONE, m)
    }

    pub fn const_left(q: &Quaternion<S>) -> Self {
        Self::const_matrix(lift_left(q))
    }

    /// The right multiplication operator `f ↦ f·q`.
    pub fn const_right(q: &Quaternion<S>) -> Self {
        Self::const_matrix(lift_right(q))
    }

    pub fn scalar(c: S) -> Self {
        Self::const_matrix(Matrix4::scalar(c))
    }

    fn accumulate(&mut self, mono: Monomial, coeff: Matrix4<S>) {
        let sum = match self.terms.remove(&mono) {
            Some(prev) => prev + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(mono, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Matrix4<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&Matrix4<S>> {
        self.terms.get(mono)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::order).max().unwrap_or(0)
    }

    pub fn has_reflections(&self) -> bool {
        self.terms.keys().any(|m| !m.mask.is_empty())
    }

    /// Largest coefficient entry modulus; zero iff the operator is zero in exact mode.
    pub fn max_modulus(&self) -> f64 {
        self.terms
            .values()
            .map(Matrix4::max_modulus)
            .fold(0.0, f64::max)
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &DiffOperator<S>) -> DiffOperator<S> {
        let mut out = DiffOperator::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (flip, mono) = ma.compose(mb);
                let c = ca * cb;
                out.accumulate(mono, if flip { -c } else { c });
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> DiffOperator<S> {
        let mut out = DiffOperator::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, c.scale(s));
        }
        out
    }

    /// Left-multiplies every coefficient by `m`, i.e. `const_matrix(m) ∘ self`.
    pub fn premultiply(&self, m: &Matrix4<S>) -> DiffOperator<S> {
        let mut out = DiffOperator::zero();
        for (mono, c) in &self.terms {
            out.accumulate(*mono, m * c);
        }
        out
    }
}

impl<S: Scalar> Add for &DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn add(self, rhs: &DiffOperator<S>) -> DiffOperator<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl<S: Scalar> Add for DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn add(self, rhs: DiffOperator<S>) -> DiffOperator<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Neg for DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn neg(self) -> DiffOperator<S> {
        DiffOperator {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<S: Scalar> Sub for &DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn sub(self, rhs: &DiffOperator<S>) -> DiffOperator<S> {
        self + &(-rhs.clone())
    }
}

impl<S: Scalar> Sub for DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn sub(self, rhs: DiffOperator<S>) -> DiffOperator<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for &DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn mul(self, rhs: &DiffOperator<S>) -> DiffOperator<S> {
        self.compose(rhs)
    }
}

impl<S: Scalar> Mul for DiffOperator<S> {
    type Output = DiffOperator<S>;

    fn mul(self, rhs: DiffOperator<S>) -> DiffOperator<S> {
        self.compose(&rhs)
    }
}

/// Moisil–Theodoresco operator `D = Σ ik ∂k`.
pub fn moisil_theodoresco<S: Scalar>() -> DiffOperator<S> {
    (1..=3).fold(DiffOperator::zero(), |acc, k| {
        let dk = DiffOperator::partial(k).expect("axis in range");
        acc + DiffOperator::const_left(&Quaternion::unit(k)).compose(&dk)
    })
}

/// `D_α = D + M^α`.
pub fn d_alpha<S: Scalar>(alpha: &Quaternion<S>) -> DiffOperator<S> {
    moisil_theodoresco() + DiffOperator::const_right(alpha)
}

/// Sign selector for `D ± κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply<S: Scalar>(self, s: S) -> S {
        match self {
            Sign::Plus => s,
            Sign::Minus => -s,
        }
    }
}

/// `D_{±κ} = D ± κ`.
pub fn d_kappa<S: Scalar>(kappa: &S, sign: Sign) -> DiffOperator<S> {
    moisil_theodoresco() + DiffOperator::scalar(sign.apply(kappa.clone()))
}

/// `Δ = ∂1² + ∂2² + ∂3²`.
pub fn laplacian<S: Scalar>() -> DiffOperator<S> {
    (1..=3).fold(DiffOperator::zero(), |acc, k| {
        let dk = DiffOperator::partial(k).expect("axis in range");
        acc + dk.compose(&dk)
    })
}
