//! Link between the Dirac operator `D_α` and the Maxwell operators `D_{±κ}`.
//!
//! The projectors `P± = M^{(κ ± α)/(2κ)}` are right multiplications. Written
//! before an operator they act after it: `P± D f = (D f)·(κ ± α)/(2κ)`, which
//! as a normal-form composition is `const_right(p±) ∘ D`. All orientation
//! choices for these compositions live in this module.

use serde::{Deserialize, Serialize};

use crate::dirac::{alpha_vector, matching_kappa, DiracParams};
use crate::error::{Error, Result};
use crate::field::{apply_operator, AnalyticField};
use crate::maxwell::{
    beltrami_residual, maxwell_residuals, to_beltrami, Helicity, MaxwellPair, MediumParams,
};
use crate::operator::{d_alpha, d_kappa, DiffOperator, Sign};
use crate::quaternion::{qmul, square_of_vector, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorPair<S: Scalar> {
    pub plus: Quaternion<S>,
    pub minus: Quaternion<S>,
}

impl<S: Scalar> ProjectorPair<S> {
    pub fn plus_operator(&self) -> DiffOperator<S> {
        DiffOperator::const_right(&self.plus)
    }

    pub fn minus_operator(&self) -> DiffOperator<S> {
        DiffOperator::const_right(&self.minus)
    }
}

/// `p± = (κ ± α)/(2κ)`.
pub fn projectors<S: Scalar>(kappa: &S, alpha: &Quaternion<S>) -> Result<ProjectorPair<S>> {
    let inv = (S::from_i64(2) * kappa.clone())
        .inv()
        .ok_or(Error::ZeroDivisor("kappa"))?;
    let k = Quaternion::scalar(kappa.clone());
    Ok(ProjectorPair {
        plus: (k.clone() + alpha.clone()).scale(&inv),
        minus: (k - alpha.clone()).scale(&inv),
    })
}

/// Residual quaternions of the projector laws; all zero iff `κ² = α²`
/// (completeness holds unconditionally).
#[derive(Clone, Debug)]
pub struct ProjectorLaws<S: Scalar> {
    /// `p₊p₊ - p₊`
    pub idempotent_plus: Quaternion<S>,
    /// `p₋p₋ - p₋`
    pub idempotent_minus: Quaternion<S>,
    /// `p₋p₊`
    pub orthogonal_minus_plus: Quaternion<S>,
    /// `p₊p₋`
    pub orthogonal_plus_minus: Quaternion<S>,
    /// `p₊ + p₋ - 1`
    pub completeness: Quaternion<S>,
}

impl<S: Scalar> ProjectorLaws<S> {
    pub fn entries(&self) -> [(&'static str, &Quaternion<S>); 5] {
        [
            ("P+ P+ = P+", &self.idempotent_plus),
            ("P- P- = P-", &self.idempotent_minus),
            ("P- P+ = 0", &self.orthogonal_minus_plus),
            ("P+ P- = 0", &self.orthogonal_plus_minus),
            ("P+ + P- = 1", &self.completeness),
        ]
    }
}

pub fn projector_laws<S: Scalar>(pp: &ProjectorPair<S>) -> ProjectorLaws<S> {
    ProjectorLaws {
        idempotent_plus: qmul(&pp.plus, &pp.plus) - pp.plus.clone(),
        idempotent_minus: qmul(&pp.minus, &pp.minus) - pp.minus.clone(),
        orthogonal_minus_plus: qmul(&pp.minus, &pp.plus),
        orthogonal_plus_minus: qmul(&pp.plus, &pp.minus),
        completeness: pp.plus.clone() + pp.minus.clone() - Quaternion::one(),
    }
}

/// One operator identity, stored as `lhs - rhs` in normal form.
#[derive(Clone, Debug)]
pub struct OperatorIdentity<S: Scalar> {
    pub name: &'static str,
    pub difference: DiffOperator<S>,
}

impl<S: Scalar> OperatorIdentity<S> {
    pub fn holds(&self, tol: f64) -> bool {
        match S::MODE {
            crate::scalar::Mode::Exact => self.difference.is_zero(),
            crate::scalar::Mode::Float => self.difference.max_modulus() <= tol,
        }
    }
}

/// Every operator identity around the projector decomposition.
#[derive(Clone, Debug)]
pub struct IdentityReport<S: Scalar> {
    /// `D_α = P⁺D_κ + P⁻D_₋κ`; an algebraic identity for any `κ ≠ 0`.
    pub forward: OperatorIdentity<S>,
    /// `D_κ = P⁺D_α + P⁻D_₋α`
    pub reverse_plus: OperatorIdentity<S>,
    /// `D_₋κ = P⁻D_α + P⁺D_₋α`
    pub reverse_minus: OperatorIdentity<S>,
    /// `P⁺D_κ = D_κP⁺`
    pub commute_plus: OperatorIdentity<S>,
    /// `P⁻D_₋κ = D_₋κP⁻`
    pub commute_minus: OperatorIdentity<S>,
    /// `P⁺D_α = D_κP⁺`; requires `κ² = α²`.
    pub mixed_plus: OperatorIdentity<S>,
    /// `P⁻D_α = D_₋κP⁻`; requires `κ² = α²`.
    pub mixed_minus: OperatorIdentity<S>,
}

impl<S: Scalar> IdentityReport<S> {
    pub fn identities(&self) -> [&OperatorIdentity<S>; 7] {
        [
            &self.forward,
            &self.reverse_plus,
            &self.reverse_minus,
            &self.commute_plus,
            &self.commute_minus,
            &self.mixed_plus,
            &self.mixed_minus,
        ]
    }
}

pub fn operator_identities<S: Scalar>(
    kappa: &S,
    alpha: &Quaternion<S>,
) -> Result<IdentityReport<S>> {
    let pp = projectors(kappa, alpha)?;
    let (pl, mi) = (pp.plus_operator(), pp.minus_operator());
    let da = d_alpha(alpha);
    let dma = d_alpha(&-alpha.clone());
    let dk = d_kappa(kappa, Sign::Plus);
    let dmk = d_kappa(kappa, Sign::Minus);
    let id = |name, lhs: DiffOperator<S>, rhs: DiffOperator<S>| OperatorIdentity {
        name,
        difference: lhs - rhs,
    };
    Ok(IdentityReport {
        forward: id("D_a = P+ D_k + P- D_-k", da.clone(), &pl * &dk + &mi * &dmk),
        reverse_plus: id("D_k = P+ D_a + P- D_-a", dk.clone(), &pl * &da + &mi * &dma),
        reverse_minus: id(
            "D_-k = P- D_a + P+ D_-a",
            dmk.clone(),
            &mi * &da + &pl * &dma,
        ),
        commute_plus: id("P+ D_k = D_k P+", &pl * &dk, &dk * &pl),
        commute_minus: id("P- D_-k = D_-k P-", &mi * &dmk, &dmk * &mi),
        mixed_plus: id("P+ D_a = D_k P+", &pl * &da, &dk * &pl),
        mixed_minus: id("P- D_a = D_-k P-", &mi * &da, &dmk * &mi),
    })
}

/// Residual of `κ² = α²`.
pub fn dispersion_gap<S: Scalar>(kappa: &S, alpha: &Quaternion<S>) -> Result<S> {
    Ok(kappa.square() - square_of_vector(alpha)?)
}

/// `f = (jωε/κ) E·α + κH`, a solution of `D_α f = 0` built from a Maxwell
/// solution whose wave number matches the Dirac parameters.
pub fn maxwell_to_dirac<S: Scalar>(
    pair: &MaxwellPair<S>,
    m: &MediumParams<S>,
    p: &DiracParams<S>,
    tol: f64,
) -> Result<AnalyticField<S>> {
    let kappa = m.wavenumber()?;
    let alpha = alpha_vector(p);
    let gap = dispersion_gap(&kappa, &alpha)?;
    if !gap.is_negligible(tol) {
        return Err(Error::DispersionMismatch(gap.modulus()));
    }
    let res = maxwell_residuals(pair, m);
    if !res.vanish(tol) {
        return Err(Error::NotMaxwellSolution(res.max_amplitude()));
    }
    let inv_k = kappa.inv().ok_or(Error::ZeroDivisor("kappa"))?;
    let coeff = S::j() * m.omega.clone() * m.eps() * inv_k;
    Ok((pair.e.right_mul(&alpha).scale(&coeff) + pair.h.scale(&kappa)).normalized())
}

/// `P⁺ψ + P⁻φ` for a Maxwell pair's Beltrami fields.
pub fn recombine<S: Scalar>(
    pair: &MaxwellPair<S>,
    m: &MediumParams<S>,
    alpha: &Quaternion<S>,
) -> Result<AnalyticField<S>> {
    let kappa = m.wavenumber()?;
    let pp = projectors(&kappa, alpha)?;
    let (phi, psi) = to_beltrami(pair, m)?;
    Ok((psi.right_mul(&pp.plus) + phi.right_mul(&pp.minus)).normalized())
}

/// `ψ = P⁺f` and `φ = P⁻f`, with `f = ψ + φ`.
pub fn decompose<S: Scalar>(
    f: &AnalyticField<S>,
    kappa: &S,
    alpha: &Quaternion<S>,
) -> Result<(AnalyticField<S>, AnalyticField<S>)> {
    let pp = projectors(kappa, alpha)?;
    Ok((f.right_mul(&pp.plus), f.right_mul(&pp.minus)))
}

/// Beltrami residuals of a decomposition: `(D + κ)ψ` and `(D - κ)φ`.
pub fn decomposition_residuals<S: Scalar>(
    psi: &AnalyticField<S>,
    phi: &AnalyticField<S>,
    kappa: &S,
) -> (AnalyticField<S>, AnalyticField<S>) {
    (
        beltrami_residual(psi, kappa, Helicity::Negative),
        beltrami_residual(phi, kappa, Helicity::Positive),
    )
}

/// `D_α f`.
pub fn dirac_residual<S: Scalar>(f: &AnalyticField<S>, alpha: &Quaternion<S>) -> AnalyticField<S> {
    apply_operator(&d_alpha(alpha), f)
}

/// Energy, mass, frequency and wave-number bookkeeping of one matched pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DispersionRecord<S> {
    pub omega: S,
    pub kappa: S,
    pub energy: S,
    pub mass: S,
    /// `p = ħκ`
    pub momentum: S,
    pub eps_r: S,
    pub mu_r: S,
    pub hbar: S,
    pub c: S,
}

impl<S: Scalar> DispersionRecord<S> {
    /// Chooses `κ` from the Dirac parameters, `ω = κc/√(εr μr)` and `p = ħκ`.
    pub fn matched(p: &DiracParams<S>, eps_r: S, mu_r: S) -> Result<Self> {
        let kappa = matching_kappa(p)?;
        let n2 = eps_r.clone() * mu_r.clone();
        let n = n2
            .sqrt()
            .ok_or_else(|| Error::InexactSqrt(n2.to_literal()))?;
        let inv_n = n.inv().ok_or(Error::ZeroDivisor("eps_r*mu_r"))?;
        Ok(DispersionRecord {
            omega: kappa.clone() * p.c.clone() * inv_n,
            momentum: p.hbar.clone() * kappa.clone(),
            kappa,
            energy: p.energy.clone(),
            mass: p.mass.clone(),
            eps_r,
            mu_r,
            hbar: p.hbar.clone(),
            c: p.c.clone(),
        })
    }

    /// Takes `κ` from the medium and `p = ħκ`.
    pub fn from_medium(m: &MediumParams<S>, p: &DiracParams<S>) -> Result<Self> {
        let kappa = m.wavenumber()?;
        Ok(DispersionRecord {
            omega: m.omega.clone(),
            momentum: p.hbar.clone() * kappa.clone(),
            kappa,
            energy: p.energy.clone(),
            mass: p.mass.clone(),
            eps_r: m.eps_r.clone(),
            mu_r: m.mu_r.clone(),
            hbar: p.hbar.clone(),
            c: m.c.clone(),
        })
    }

    pub fn record(&self) -> DispersionJson {
        let p = |s: &S| {
            let z = s.to_c64();
            [z.re, z.im]
        };
        DispersionJson {
            omega: p(&self.omega),
            kappa: p(&self.kappa),
            energy: p(&self.energy),
            mass: p(&self.mass),
            momentum: p(&self.momentum),
            eps_r: p(&self.eps_r),
            mu_r: p(&self.mu_r),
            hbar: p(&self.hbar),
            c: p(&self.c),
        }
    }
}

/// JSON mirror of [`DispersionRecord`] with `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionJson {
    pub omega: [f64; 2],
    pub kappa: [f64; 2],
    pub energy: [f64; 2],
    pub mass: [f64; 2],
    pub momentum: [f64; 2],
    pub eps_r: [f64; 2],
    pub mu_r: [f64; 2],
    pub hbar: [f64; 2],
    pub c: [f64; 2],
}

#[derive(Clone, Debug)]
pub struct DispersionCheck<S> {
    /// `κ² - (ℰ²/c² - m²c²)/ħ²`
    pub kappa_form: S,
    /// `(ħω)² εr μr - (ℰ² - m²c⁴)`
    pub energy_form: S,
    /// `ℰ² - (p²c² + m²c⁴)`
    pub fundamental: S,
    /// `p - ħκ`
    pub de_broglie: S,
    /// `ħω - pc`, meaningful in vacuum.
    pub vacuum_photon: S,
}

impl<S: Scalar> DispersionCheck<S> {
    pub fn entries(&self) -> [(&'static str, &S); 4] {
        [
            ("kappa^2 = (E^2/c^2 - m^2 c^2)/hbar^2", &self.kappa_form),
            (
                "(hbar omega)^2 eps_r mu_r = E^2 - m^2 c^4",
                &self.energy_form,
            ),
            ("E^2 = p^2 c^2 + m^2 c^4", &self.fundamental),
            ("p = hbar kappa", &self.de_broglie),
        ]
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.entries().iter().all(|(_, r)| r.is_negligible(tol))
    }
}

pub fn dispersion_check<S: Scalar>(r: &DispersionRecord<S>) -> Result<DispersionCheck<S>> {
    let c2 = r.c.square();
    let m2 = r.mass.square();
    let e2 = r.energy.square();
    let h2 = r.hbar.square();
    let inv_c2 = c2.inv().ok_or(Error::ZeroDivisor("c"))?;
    let inv_h2 = h2.inv().ok_or(Error::ZeroDivisor("hbar"))?;
    let rest = m2 * c2.square();
    Ok(DispersionCheck {
        kappa_form: r.kappa.square()
            - (e2.clone() * inv_c2 - r.mass.square() * c2.clone()) * inv_h2,
        energy_form: (r.hbar.clone() * r.omega.clone()).square() * r.eps_r.clone() * r.mu_r.clone()
            - (e2.clone() - rest.clone()),
        fundamental: e2 - (r.momentum.square() * c2 + rest),
        de_broglie: r.momentum.clone() - r.hbar.clone() * r.kappa.clone(),
        vacuum_photon: r.hbar.clone() * r.omega.clone() - r.momentum.clone() * r.c.clone(),
    })
}
