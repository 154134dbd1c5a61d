//! Fixed-energy Dirac equation in quaternionic form.
//!
//! A bispinor `Φ` is carried to a quaternion field by `F(x) = M_A Φ(x1, x2, -x3)`
//! and back by `Φ(x) = M_inv F(x1, x2, -x3)`. Under this change of variables
//! the Dirac operator becomes `D_α = D + M^α` with
//! `α = -(1/ħ)(j ℰ/c · i1 + m c · i2)`.
//!
//! The gamma matrices are not fixed in advance: they are read back from the
//! conjugated operator `N = -A⁻¹ D_α A`, whose constant term is linear in
//! `a = ℰ/(cħ)` and `b = mc/ħ`. Two parameter points separate the two pieces.
//! The wave function carries the time factor `exp(+jℰt/ħ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{apply_operator, AnalyticField};
use crate::matrix::Matrix4;
use crate::operator::{d_alpha, DiffOperator, Monomial, ReflectionMask};
use crate::quaternion::{square_of_vector, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DiracParams<S> {
    pub energy: S,
    pub mass: S,
    pub hbar: S,
    pub c: S,
}

impl<S: Scalar> DiracParams<S> {
    pub fn new(energy: S, mass: S, hbar: S, c: S) -> Result<Self> {
        let positive = |s: &S| s.is_real() && s.to_c64().re > 0.0;
        if !positive(&hbar) || !positive(&c) {
            return Err(Error::InvalidParams(
                "hbar and c must be real and positive".into(),
            ));
        }
        if !mass.is_real() || mass.to_c64().re < 0.0 {
            return Err(Error::InvalidParams(
                "mass must be real and nonnegative".into(),
            ));
        }
        if !energy.is_real() {
            return Err(Error::InvalidParams("energy must be real".into()));
        }
        Ok(DiracParams {
            energy,
            mass,
            hbar,
            c,
        })
    }

    /// `ħ = c = 1`.
    pub fn natural(energy: S, mass: S) -> Self {
        DiracParams {
            energy,
            mass,
            hbar: S::one(),
            c: S::one(),
        }
    }

    /// `a = ℰ/(cħ)`, the coefficient of `jγ0`.
    pub fn energy_coefficient(&self) -> S {
        self.energy.clone() / (self.c.clone() * self.hbar.clone())
    }

    /// `b = mc/ħ`, the coefficient of `j`.
    pub fn mass_coefficient(&self) -> S {
        self.mass.clone() * self.c.clone() / self.hbar.clone()
    }
}

/// `α = (0, -jℰ/(cħ), -mc/ħ, 0)`.
pub fn alpha_vector<S: Scalar>(p: &DiracParams<S>) -> Quaternion<S> {
    Quaternion::vector(
        -(S::j() * p.energy_coefficient()),
        -p.mass_coefficient(),
        S::zero(),
    )
}

/// Principal `κ` with `κ² = α²`; imaginary below the mass gap.
pub fn matching_kappa<S: Scalar>(p: &DiracParams<S>) -> Result<S> {
    let sq = square_of_vector(&alpha_vector(p))?;
    sq.sqrt().ok_or_else(|| Error::InexactSqrt(sq.to_literal()))
}

/// `D_α` for the given energy and mass.
pub fn dirac_quaternionic<S: Scalar>(p: &DiracParams<S>) -> DiffOperator<S> {
    d_alpha(&alpha_vector(p))
}

/// The bispinor ↔ quaternion change of variables, reflecting `x3`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformA<S: Scalar> {
    /// Includes the overall factor ½.
    pub forward: Matrix4<S>,
    pub inverse: Matrix4<S>,
}

/// Axis reflected by [`TransformA`].
pub const REFLECTION_AXIS: usize = 3;

impl<S: Scalar> TransformA<S> {
    pub fn standard() -> Self {
        let (o, z, j) = (S::one(), S::zero(), S::j());
        let half = S::from_ratio(1, 2);
        let forward = Matrix4::from_rows([
            [z.clone(), -o.clone(), o.clone(), z.clone()],
            [j.clone(), z.clone(), z.clone(), -j.clone()],
            [-o.clone(), z.clone(), z.clone(), -o.clone()],
            [z.clone(), j.clone(), j.clone(), z.clone()],
        ])
        .scale(&half);
        let inverse = Matrix4::from_rows([
            [z.clone(), -j.clone(), -o.clone(), z.clone()],
            [-o.clone(), z.clone(), z.clone(), -j.clone()],
            [o.clone(), z.clone(), z.clone(), -j.clone()],
            [z.clone(), j.clone(), -o, z],
        ]);
        TransformA { forward, inverse }
    }

    /// `A = M_A ∘ R3`.
    pub fn operator(&self) -> DiffOperator<S> {
        let r = DiffOperator::reflect(REFLECTION_AXIS).expect("axis in range");
        DiffOperator::const_matrix(self.forward.clone()).compose(&r)
    }

    /// `A⁻¹ = M_inv ∘ R3`.
    pub fn inverse_operator(&self) -> DiffOperator<S> {
        let r = DiffOperator::reflect(REFLECTION_AXIS).expect("axis in range");
        DiffOperator::const_matrix(self.inverse.clone()).compose(&r)
    }

    /// Bispinor field to quaternion field.
    pub fn apply(&self, phi: &AnalyticField<S>) -> AnalyticField<S> {
        apply_operator(&self.operator(), phi)
    }

    /// Quaternion field to bispinor field.
    pub fn apply_inverse(&self, f: &AnalyticField<S>) -> AnalyticField<S> {
        apply_operator(&self.inverse_operator(), f)
    }

    /// `A ∘ op ∘ A⁻¹`.
    pub fn conjugate(&self, op: &DiffOperator<S>) -> DiffOperator<S> {
        self.operator()
            .compose(op)
            .compose(&self.inverse_operator())
    }

    /// `A⁻¹ ∘ op ∘ A`.
    pub fn pull_back(&self, op: &DiffOperator<S>) -> DiffOperator<S> {
        self.inverse_operator()
            .compose(op)
            .compose(&self.operator())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet<S: Scalar> {
    pub gamma: [Matrix4<S>; 4],
}

/// JSON form: four 4×4 matrices of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSetRecord {
    pub gamma0: [[[f64; 2]; 4]; 4],
    pub gamma1: [[[f64; 2]; 4]; 4],
    pub gamma2: [[[f64; 2]; 4]; 4],
    pub gamma3: [[[f64; 2]; 4]; 4],
}

const METRIC: [i64; 4] = [1, -1, -1, -1];

impl<S: Scalar> GammaSet<S> {
    pub fn record(&self) -> GammaSetRecord {
        GammaSetRecord {
            gamma0: self.gamma[0].to_pairs(),
            gamma1: self.gamma[1].to_pairs(),
            gamma2: self.gamma[2].to_pairs(),
            gamma3: self.gamma[3].to_pairs(),
        }
    }

    /// `γ1 γ2 γ3`.
    pub fn spatial_product(&self) -> Matrix4<S> {
        &(&self.gamma[1] * &self.gamma[2]) * &self.gamma[3]
    }

    /// Largest entry of `γμγν + γνγμ - 2 s η_μν Id` over all pairs.
    pub fn clifford_defect(&self, s: i64) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in mu..4 {
                worst = worst.max(self.anticommutator_residual(mu, nu, s).max_modulus());
            }
        }
        worst
    }

    pub fn anticommutator_residual(&self, mu: usize, nu: usize, s: i64) -> Matrix4<S> {
        let anti = &(&self.gamma[mu] * &self.gamma[nu]) + &(&self.gamma[nu] * &self.gamma[mu]);
        let target = if mu == nu { 2 * s * METRIC[mu] } else { 0 };
        &anti - &Matrix4::scalar(S::from_i64(target))
    }

    /// The global sign `s` for which the Clifford relations hold, if any.
    pub fn clifford_sign(&self, tol: f64) -> Option<i64> {
        [1, -1].into_iter().find(|&s| {
            (0..4).all(|mu| {
                (mu..4).all(|nu| {
                    let r = self.anticommutator_residual(mu, nu, s);
                    match S::MODE {
                        crate::scalar::Mode::Exact => r.is_zero(),
                        crate::scalar::Mode::Float => r.max_modulus() <= tol,
                    }
                })
            })
        })
    }
}

/// Result of reading gamma matrices back from the quaternionic operator.
#[derive(Clone, Debug)]
pub struct GammaReconstruction<S: Scalar> {
    pub gammas: GammaSet<S>,
    /// Coefficient of `ja` in the constant term of `N`.
    pub p: Matrix4<S>,
    /// Coefficient of `jb` in the constant term of `N`; plays the role of `γ1γ2γ3`.
    pub q: Matrix4<S>,
}

impl<S: Scalar> GammaReconstruction<S> {
    /// `Q - γ1γ2γ3`, zero when the reconstruction is self-consistent.
    pub fn product_residual(&self) -> Matrix4<S> {
        &self.q - &self.gammas.spatial_product()
    }
}

/// `N = -A⁻¹ ∘ D_α ∘ A`.
pub fn conjugated_dirac<S: Scalar>(p: &DiracParams<S>) -> DiffOperator<S> {
    -TransformA::standard().pull_back(&dirac_quaternionic(p))
}

fn first_order_parts<S: Scalar>(n: &DiffOperator<S>) -> Result<(Matrix4<S>, [Matrix4<S>; 3])> {
    let mut b0 = Matrix4::zero();
    let mut bk: [Matrix4<S>; 3] = std::array::from_fn(|_| Matrix4::zero());
    for (mono, c) in n.terms() {
        if !mono.mask.is_empty() {
            return Err(Error::ReflectionLeftover(format!("{mono:?}")));
        }
        match mono.degree {
            [0, 0, 0] => b0 = c.clone(),
            [1, 0, 0] => bk[0] = c.clone(),
            [0, 1, 0] => bk[1] = c.clone(),
            [0, 0, 1] => bk[2] = c.clone(),
            d => {
                return Err(Error::Reconstruction(format!(
                    "unexpected derivative {d:?}"
                )))
            }
        }
    }
    Ok((b0, bk))
}

/// Reconstructs `γ0..γ3` from two parameter points whose `(a, b)` pairs are
/// linearly independent.
pub fn reconstruct_gammas<S: Scalar>(
    p1: &DiracParams<S>,
    p2: &DiracParams<S>,
) -> Result<GammaReconstruction<S>> {
    let (c1, d1) = first_order_parts(&conjugated_dirac(p1))?;
    let (c2, d2) = first_order_parts(&conjugated_dirac(p2))?;
    if d1 != d2 {
        return Err(Error::Reconstruction(
            "derivative coefficients depend on the parameters".into(),
        ));
    }
    let (a1, b1) = (p1.energy_coefficient(), p1.mass_coefficient());
    let (a2, b2) = (p2.energy_coefficient(), p2.mass_coefficient());
    let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
    let scale = (S::j() * det)
        .inv()
        .ok_or_else(|| Error::Reconstruction("parameter points do not separate a and b".into()))?;
    // c_i = j (a_i P + b_i Q)
    let p = (&c1.scale(&b2) - &c2.scale(&b1)).scale(&scale);
    let q = (&c2.scale(&a1) - &c1.scale(&a2)).scale(&scale);
    let q_inv = q.inverse().ok_or(Error::Singular("Q"))?;
    let [g1, g2, g3] = d1.map(|b| &q_inv * &b);
    let g0 = &q_inv * &p;
    Ok(GammaReconstruction {
        gammas: GammaSet {
            gamma: [g0, g1, g2, g3],
        },
        p,
        q,
    })
}

/// The two default separation points `(a, b) = (1, 0)` and `(0, 1)` in natural units.
pub fn default_points<S: Scalar>() -> (DiracParams<S>, DiracParams<S>) {
    (
        DiracParams::natural(S::one(), S::zero()),
        DiracParams::natural(S::zero(), S::one()),
    )
}

/// `j a γ0 + Σ γk ∂k + j b`.
pub fn covariant_operator<S: Scalar>(g: &GammaSet<S>, p: &DiracParams<S>) -> DiffOperator<S> {
    let mut op = DiffOperator::const_matrix(g.gamma[0].scale(&(S::j() * p.energy_coefficient())))
        + DiffOperator::scalar(S::j() * p.mass_coefficient());
    for k in 1..=3 {
        let mut degree = [0; 3];
        degree[k - 1] = 1;
        op = op
            + DiffOperator::term(
                Monomial {
                    degree,
                    mask: ReflectionMask::EMPTY,
                },
                g.gamma[k].clone(),
            );
    }
    op
}

pub fn covariant_residual<S: Scalar>(
    q: &AnalyticField<S>,
    g: &GammaSet<S>,
    p: &DiracParams<S>,
) -> AnalyticField<S> {
    apply_operator(&covariant_operator(g, p), q)
}

/// `D_α - sign · A (γ1γ2γ3 𝔻) A⁻¹`; zero when the conjugation identity holds
/// with the given overall sign.
pub fn conjugation_identity_residual<S: Scalar>(
    g: &GammaSet<S>,
    p: &DiracParams<S>,
    sign: i64,
) -> DiffOperator<S> {
    let inner = covariant_operator(g, p).premultiply(&g.spatial_product());
    let rhs = TransformA::standard()
        .conjugate(&inner)
        .scale(&S::from_i64(sign));
    dirac_quaternionic(p) - rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn e(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    #[test]
    fn alpha_substitution() {
        let a = alpha_vector(&DiracParams::natural(e(5), e(3)));
        assert_eq!(a.to_string(), "[0, -5j, -3, 0]");
        let massless = alpha_vector(&DiracParams::natural(e(2), e(0)));
        assert!(massless.component(2).is_zero() && massless.component(3).is_zero());
        let p =
            DiracParams::new(Exact::from_ratio(7, 2), e(2), e(3), Exact::from_ratio(1, 2)).unwrap();
        let want =
            (p.energy.square() / p.c.square() - p.mass.square() * p.c.square()) / p.hbar.square();
        assert_eq!(square_of_vector(&alpha_vector(&p)).unwrap(), want);
    }

    #[test]
    fn kappa_branches() {
        assert_eq!(
            matching_kappa(&DiracParams::natural(e(5), e(3))).unwrap(),
            e(4)
        );
        assert_eq!(
            matching_kappa(&DiracParams::natural(e(3), e(5))).unwrap(),
            e(4) * Exact::j()
        );
        let p = DiracParams::new(e(6), e(0), e(2), e(3)).unwrap();
        assert_eq!(matching_kappa(&p).unwrap(), Exact::from_i64(1));
    }

    #[test]
    fn param_validation() {
        assert!(DiracParams::new(e(1), e(-1), e(1), e(1)).is_err());
        assert!(DiracParams::new(e(1), e(1), e(0), e(1)).is_err());
        assert!(DiracParams::new(Exact::j(), e(1), e(1), e(1)).is_err());
    }

    #[test]
    fn transform_matrices_are_inverse() {
        let t = TransformA::<Exact>::standard();
        assert_eq!(&t.inverse * &t.forward, Matrix4::identity());
        assert_eq!(&t.inverse * &t.forward.scale(&e(2)), Matrix4::scalar(e(2)));
        assert_eq!(
            t.inverse_operator().compose(&t.operator()),
            DiffOperator::identity()
        );
    }

    #[test]
    fn first_column_of_transform() {
        let t = TransformA::<Exact>::standard();
        let phi = AnalyticField::constant([e(1), e(0), e(0), e(0)]);
        let half = Exact::from_ratio(1, 2);
        let want = AnalyticField::constant([e(0), half.clone() * Exact::j(), -half, e(0)]);
        assert!(t.apply(&phi).equivalent(&want));
    }

    #[test]
    fn conjugated_operator_has_no_reflections() {
        let n = conjugated_dirac(&DiracParams::natural(e(5), e(3)));
        assert!(!n.has_reflections());
        assert_eq!(n.order(), 1);
    }

    #[test]
    fn massless_zero_energy_is_plain_d() {
        assert_eq!(
            dirac_quaternionic(&DiracParams::natural(e(0), e(0))),
            crate::operator::moisil_theodoresco()
        );
    }

    #[test]
    fn reconstructed_gammas_satisfy_clifford() {
        let (p1, p2) = default_points::<Exact>();
        let rec = reconstruct_gammas(&p1, &p2).unwrap();
        let s = rec.gammas.clifford_sign(0.0).expect("clifford relations");
        assert_eq!(
            &rec.gammas.gamma[0] * &rec.gammas.gamma[0],
            Matrix4::scalar(e(s))
        );
        assert!(rec.gammas.anticommutator_residual(1, 2, s).is_zero());
        // other admissible points give the same set
        let other = reconstruct_gammas(
            &DiracParams::natural(e(2), e(1)),
            &DiracParams::natural(Exact::from_ratio(1, 3), e(4)),
        )
        .unwrap();
        assert_eq!(other.gammas, rec.gammas);
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let p = DiracParams::natural(e(1), e(1));
        let q = DiracParams::natural(e(2), e(2));
        assert!(matches!(
            reconstruct_gammas(&p, &q),
            Err(Error::Reconstruction(_))
        ));
    }
}
