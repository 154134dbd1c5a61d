//! Closed-form fields: finite sums of plane waves `amp · exp(j<k, x>)` with
//! complex wave vectors. The class is closed under derivatives, reflections
//! and constant matrix action, so every operator acts on it exactly.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::matrix::Matrix4;
use crate::operator::{DiffOperator, Monomial};
use crate::quaternion::{lift_left, lift_right, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct PlaneWaveTerm<S> {
    pub amp: [S; 4],
    pub k: [S; 3],
}

impl<S: Scalar> PlaneWaveTerm<S> {
    pub fn new(amp: [S; 4], k: [S; 3]) -> Self {
        PlaneWaveTerm { amp, k }
    }

    fn reflected(&self, mono: &Monomial) -> [S; 3] {
        std::array::from_fn(|i| {
            if mono.mask.contains(i + 1) {
                -self.k[i].clone()
            } else {
                self.k[i].clone()
            }
        })
    }

    /// `∂^n R_m` acting on this term: reflect `k`, then multiply by `Π (j k_i)^n_i`.
    fn apply_monomial(&self, mono: &Monomial) -> (S, [S; 3]) {
        let k = self.reflected(mono);
        let mut factor = S::one();
        for (i, &n) in mono.degree.iter().enumerate() {
            let jk = S::j() * k[i].clone();
            for _ in 0..n {
                factor = factor * jk.clone();
            }
        }
        (factor, k)
    }

    pub fn evaluate(&self, x: [f64; 3]) -> [Complex64; 4] {
        let phase = (0..3).fold(Complex64::new(0.0, 0.0), |acc, i| {
            acc + self.k[i].to_c64() * x[i]
        });
        let e = (Complex64::i() * phase).exp();
        std::array::from_fn(|c| self.amp[c].to_c64() * e)
    }
}

/// Finite sum of plane-wave terms, each amplitude holding quaternion
/// coordinates or bispinor components depending on context.
#[derive(Clone, PartialEq, Debug)]
pub struct AnalyticField<S> {
    terms: Vec<PlaneWaveTerm<S>>,
}

impl<S: Scalar> Default for AnalyticField<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> AnalyticField<S> {
    pub fn zero() -> Self {
        AnalyticField { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<PlaneWaveTerm<S>>) -> Self {
        AnalyticField { terms }
    }

    pub fn plane_wave(amp: [S; 4], k: [S; 3]) -> Self {
        AnalyticField {
            terms: vec![PlaneWaveTerm::new(amp, k)],
        }
    }

    pub fn constant(amp: [S; 4]) -> Self {
        Self::plane_wave(amp, std::array::from_fn(|_| S::zero()))
    }

    /// Quaternion-valued plane wave `q · exp(j<k, x>)`.
    pub fn quaternion_wave(q: Quaternion<S>, k: [S; 3]) -> Self {
        Self::plane_wave(q.into_coords(), k)
    }

    pub fn terms(&self) -> &[PlaneWaveTerm<S>] {
        &self.terms
    }

    fn map_amps(&self, f: impl Fn(&[S; 4]) -> [S; 4]) -> Self {
        AnalyticField {
            terms: self
                .terms
                .iter()
                .map(|t| PlaneWaveTerm::new(f(&t.amp), t.k.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_amps(|a| std::array::from_fn(|i| s.clone() * a[i].clone()))
    }

    pub fn apply_matrix(&self, m: &Matrix4<S>) -> Self {
        self.map_amps(|a| m.apply(a))
    }

    pub fn left_mul(&self, q: &Quaternion<S>) -> Self {
        self.apply_matrix(&lift_left(q))
    }

    /// Pointwise `f(x)·q`.
    pub fn right_mul(&self, q: &Quaternion<S>) -> Self {
        self.apply_matrix(&lift_right(q))
    }

    /// Keeps component `c` only.
    pub fn component(&self, c: usize) -> Self {
        self.map_amps(|a| std::array::from_fn(|i| if i == c { a[i].clone() } else { S::zero() }))
    }

    /// Moves component `from` into slot `to`, zeroing the rest.
    pub fn moved(&self, from: usize, to: usize) -> Self {
        self.map_amps(|a| {
            std::array::from_fn(|i| if i == to { a[from].clone() } else { S::zero() })
        })
    }

    /// `Sc(f)`.
    pub fn scalar_part(&self) -> Self {
        self.component(0)
    }

    /// `Vec(f)`.
    pub fn vector_part(&self) -> Self {
        self.map_amps(|a| std::array::from_fn(|i| if i == 0 { S::zero() } else { a[i].clone() }))
    }

    /// Direct `∂_k`, independent of the operator machinery.
    pub fn partial(&self, k: usize) -> Self {
        AnalyticField {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let f = S::j() * t.k[k - 1].clone();
                    PlaneWaveTerm::new(
                        std::array::from_fn(|i| f.clone() * t.amp[i].clone()),
                        t.k.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Merges terms with equal wave vectors and drops zero amplitudes.
    /// Distinct exponentials are linearly independent, so the result is zero
    /// exactly when the field vanishes identically.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<PlaneWaveTerm<S>> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|o| o.k == t.k) {
                Some(o) => {
                    for i in 0..4 {
                        o.amp[i] = o.amp[i].clone() + t.amp[i].clone();
                    }
                }
                None => out.push(t.clone()),
            }
        }
        out.retain(|t| !t.amp.iter().all(S::is_zero));
        AnalyticField { terms: out }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.normalized().terms.is_empty()
    }

    /// Largest amplitude modulus after merging equal wave vectors.
    pub fn max_amplitude(&self) -> f64 {
        self.normalized()
            .terms
            .iter()
            .flat_map(|t| t.amp.iter().map(S::modulus))
            .fold(0.0, f64::max)
    }

    /// Zero in exact mode; within `tol` in float mode.
    pub fn is_negligible(&self, tol: f64) -> bool {
        match S::MODE {
            crate::scalar::Mode::Exact => self.is_identically_zero(),
            crate::scalar::Mode::Float => self.max_amplitude() <= tol,
        }
    }

    /// Same function, compared via the normal form of the difference.
    pub fn equivalent(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_identically_zero()
    }

    /// Every amplitude has zero scalar component.
    pub fn is_vectorial(&self) -> bool {
        self.normalized().terms.iter().all(|t| t.amp[0].is_zero())
    }

    pub fn evaluate(&self, x: [f64; 3]) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for t in &self.terms {
            let v = t.evaluate(x);
            for i in 0..4 {
                out[i] += v[i];
            }
        }
        out
    }
}

impl<S: Scalar> Add for AnalyticField<S> {
    type Output = AnalyticField<S>;

    fn add(mut self, rhs: Self) -> Self {
        self.terms.extend(rhs.terms);
        self
    }
}

impl<S: Scalar> Neg for AnalyticField<S> {
    type Output = AnalyticField<S>;

    fn neg(self) -> Self {
        self.map_amps(|a| std::array::from_fn(|i| -a[i].clone()))
    }
}

impl<S: Scalar> Sub for AnalyticField<S> {
    type Output = AnalyticField<S>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Applies a normal-form operator term by term; exact in the coefficients.
pub fn apply_operator<S: Scalar>(op: &DiffOperator<S>, f: &AnalyticField<S>) -> AnalyticField<S> {
    let mut terms = Vec::with_capacity(op.len() * f.terms.len());
    for (mono, coeff) in op.terms() {
        for t in &f.terms {
            let (factor, k) = t.apply_monomial(mono);
            let scaled: [S; 4] = std::array::from_fn(|i| factor.clone() * t.amp[i].clone());
            terms.push(PlaneWaveTerm::new(coeff.apply(&scaled), k));
        }
    }
    AnalyticField { terms }.normalized()
}

/// `div f⃗`, `grad f0` and `rot f⃗` of a quaternion field, each computed from
/// coordinate derivatives. Scalar results live in component 0, vector
/// results in components 1..=3.
#[derive(Clone, Debug)]
pub struct VectorParts<S> {
    pub div: AnalyticField<S>,
    pub grad: AnalyticField<S>,
    pub rot: AnalyticField<S>,
}

pub fn vector_parts<S: Scalar>(f: &AnalyticField<S>) -> VectorParts<S> {
    let d = |k: usize| f.partial(k);
    let div = (1..=3).fold(AnalyticField::zero(), |acc, k| acc + d(k).moved(k, 0));
    let grad = (1..=3).fold(AnalyticField::zero(), |acc, k| acc + d(k).moved(0, k));
    // rot_1 = ∂2 f3 - ∂3 f2, and cyclically.
    let rot = (1..=3).fold(AnalyticField::zero(), |acc, c| {
        let (a, b) = (c % 3 + 1, (c + 1) % 3 + 1);
        acc + d(a).moved(b, c) - d(b).moved(a, c)
    });
    VectorParts {
        div: div.normalized(),
        grad: grad.normalized(),
        rot: rot.normalized(),
    }
}
