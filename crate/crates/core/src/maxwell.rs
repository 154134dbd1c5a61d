//! Time-harmonic Maxwell equations in a sourceless homogeneous medium, their
//! quaternionic form `DE = jωμH`, `DH = -jωεE`, and the diagonalization into
//! Beltrami fields `φ = -jωεE + κH`, `ψ = jωεE + κH`.
//!
//! Fields carry the time factor `exp(-jωt)` implicitly; only spatial
//! amplitudes are represented.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{apply_operator, vector_parts, AnalyticField};
use crate::operator::{d_kappa, moisil_theodoresco, Sign};
use crate::quaternion::{cross3, dot3, Quaternion};
use crate::scalar::{Mode, Scalar};

/// Relative tolerance on `ε0 μ0 c² = 1` in float mode.
const FLOAT_UNIT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct MediumParams<S> {
    pub eps0: S,
    pub mu0: S,
    pub eps_r: S,
    pub mu_r: S,
    pub omega: S,
    pub c: S,
}

impl<S: Scalar> MediumParams<S> {
    pub fn new(eps0: S, mu0: S, eps_r: S, mu_r: S, omega: S, c: S) -> Result<Self> {
        let unit = eps0.clone() * mu0.clone() * c.square() - S::one();
        let ok = match S::MODE {
            Mode::Exact => unit.is_zero(),
            Mode::Float => unit.modulus() <= FLOAT_UNIT_TOL,
        };
        if !ok {
            return Err(Error::InvalidParams(format!(
                "eps0*mu0*c^2 must equal 1 (off by {})",
                unit.to_literal()
            )));
        }
        if c.is_zero() {
            return Err(Error::InvalidParams("c must be nonzero".into()));
        }
        Ok(MediumParams {
            eps0,
            mu0,
            eps_r,
            mu_r,
            omega,
            c,
        })
    }

    /// Natural units `ε0 = μ0 = c = 1`.
    pub fn natural(eps_r: S, mu_r: S, omega: S) -> Self {
        MediumParams {
            eps0: S::one(),
            mu0: S::one(),
            eps_r,
            mu_r,
            omega,
            c: S::one(),
        }
    }

    pub fn vacuum(omega: S) -> Self {
        Self::natural(S::one(), S::one(), omega)
    }

    /// Absolute permittivity `ε = ε0 εr`.
    pub fn eps(&self) -> S {
        self.eps0.clone() * self.eps_r.clone()
    }

    /// Absolute permeability `μ = μ0 μr`.
    pub fn mu(&self) -> S {
        self.mu0.clone() * self.mu_r.clone()
    }

    /// `κ = (ω/c) √(εr μr)` with the principal root.
    pub fn wavenumber(&self) -> Result<S> {
        let radicand = self.eps_r.clone() * self.mu_r.clone();
        let root = radicand
            .sqrt()
            .ok_or_else(|| Error::InexactSqrt(radicand.to_literal()))?;
        let inv_c = self.c.inv().ok_or(Error::ZeroDivisor("c"))?;
        Ok(self.omega.clone() * inv_c * root)
    }
}

/// Plain-number view of [`MediumParams`] used in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MediumRecord {
    pub eps0: [f64; 2],
    pub mu0: [f64; 2],
    pub eps_r: [f64; 2],
    pub mu_r: [f64; 2],
    pub omega: [f64; 2],
    pub c: [f64; 2],
}

impl<S: Scalar> From<&MediumParams<S>> for MediumRecord {
    fn from(m: &MediumParams<S>) -> Self {
        let p = |s: &S| {
            let z = s.to_c64();
            [z.re, z.im]
        };
        MediumRecord {
            eps0: p(&m.eps0),
            mu0: p(&m.mu0),
            eps_r: p(&m.eps_r),
            mu_r: p(&m.mu_r),
            omega: p(&m.omega),
            c: p(&m.c),
        }
    }
}

/// Electric and magnetic amplitudes, both purely vectorial.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellPair<S> {
    pub e: AnalyticField<S>,
    pub h: AnalyticField<S>,
}

impl<S: Scalar> MaxwellPair<S> {
    pub fn new(e: AnalyticField<S>, h: AnalyticField<S>) -> Result<Self> {
        for (name, f) in [("E", &e), ("H", &h)] {
            if !f.is_vectorial() {
                return Err(Error::NotVectorial(format!(
                    "{name} has a scalar component"
                )));
            }
        }
        Ok(MaxwellPair { e, h })
    }

    pub fn zero() -> Self {
        MaxwellPair {
            e: AnalyticField::zero(),
            h: AnalyticField::zero(),
        }
    }
}

/// Left-hand sides minus right-hand sides of the four Maxwell equations.
#[derive(Clone, Debug)]
pub struct MaxwellResiduals<S> {
    /// `rot H + jωεE`
    pub ampere: AnalyticField<S>,
    /// `rot E - jωμH`
    pub faraday: AnalyticField<S>,
    /// `div E`
    pub gauss_e: AnalyticField<S>,
    /// `div H`
    pub gauss_h: AnalyticField<S>,
}

impl<S: Scalar> MaxwellResiduals<S> {
    pub fn fields(&self) -> [(&'static str, &AnalyticField<S>); 4] {
        [
            ("rot H = -j omega eps E", &self.ampere),
            ("rot E = j omega mu H", &self.faraday),
            ("div E = 0", &self.gauss_e),
            ("div H = 0", &self.gauss_h),
        ]
    }

    pub fn max_amplitude(&self) -> f64 {
        self.fields()
            .iter()
            .map(|(_, f)| f.max_amplitude())
            .fold(0.0, f64::max)
    }

    pub fn vanish(&self, tol: f64) -> bool {
        self.fields().iter().all(|(_, f)| f.is_negligible(tol))
    }
}

pub fn maxwell_residuals<S: Scalar>(
    p: &MaxwellPair<S>,
    m: &MediumParams<S>,
) -> MaxwellResiduals<S> {
    let je = S::j() * m.omega.clone() * m.eps();
    let jm = S::j() * m.omega.clone() * m.mu();
    let pe = vector_parts(&p.e);
    let ph = vector_parts(&p.h);
    MaxwellResiduals {
        ampere: (ph.rot + p.e.scale(&je)).normalized(),
        faraday: (pe.rot - p.h.scale(&jm)).normalized(),
        gauss_e: pe.div,
        gauss_h: ph.div,
    }
}

/// `(DE - jωμH, DH + jωεE)`.
pub fn quaternionic_residuals<S: Scalar>(
    p: &MaxwellPair<S>,
    m: &MediumParams<S>,
) -> (AnalyticField<S>, AnalyticField<S>) {
    let d = moisil_theodoresco();
    let je = S::j() * m.omega.clone() * m.eps();
    let jm = S::j() * m.omega.clone() * m.mu();
    (
        (apply_operator(&d, &p.e) - p.h.scale(&jm)).normalized(),
        (apply_operator(&d, &p.h) + p.e.scale(&je)).normalized(),
    )
}

/// `φ = -jωεE + κH`, `ψ = jωεE + κH`.
pub fn to_beltrami<S: Scalar>(
    p: &MaxwellPair<S>,
    m: &MediumParams<S>,
) -> Result<(AnalyticField<S>, AnalyticField<S>)> {
    let kappa = m.wavenumber()?;
    let je = S::j() * m.omega.clone() * m.eps();
    let kh = p.h.scale(&kappa);
    let phi = (kh.clone() - p.e.scale(&je)).normalized();
    let psi = (kh + p.e.scale(&je)).normalized();
    Ok((phi, psi))
}

/// `E = (ψ - φ) / (2jωε)`, `H = (ψ + φ) / (2κ)`.
pub fn from_beltrami<S: Scalar>(
    phi: &AnalyticField<S>,
    psi: &AnalyticField<S>,
    m: &MediumParams<S>,
) -> Result<MaxwellPair<S>> {
    let kappa = m.wavenumber()?;
    let two = S::from_i64(2);
    let je2 = two.clone() * S::j() * m.omega.clone() * m.eps();
    let inv_e = je2.inv().ok_or(Error::ZeroDivisor("omega*eps"))?;
    let inv_h = (two * kappa).inv().ok_or(Error::ZeroDivisor("kappa"))?;
    Ok(MaxwellPair {
        e: (psi.clone() - phi.clone()).scale(&inv_e).normalized(),
        h: (psi.clone() + phi.clone()).scale(&inv_h).normalized(),
    })
}

/// Eigenvalue of `D` selecting the Beltrami equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Helicity {
    /// `Df = κf`, i.e. `(D - κ)f = 0`.
    Positive,
    /// `Df = -κf`, i.e. `(D + κ)f = 0`.
    Negative,
}

impl Helicity {
    pub fn sign(self) -> i64 {
        match self {
            Helicity::Positive => 1,
            Helicity::Negative => -1,
        }
    }
}

/// `(D - κ)f` for positive helicity, `(D + κ)f` for negative.
pub fn beltrami_residual<S: Scalar>(
    f: &AnalyticField<S>,
    kappa: &S,
    helicity: Helicity,
) -> AnalyticField<S> {
    let sign = match helicity {
        Helicity::Positive => Sign::Minus,
        Helicity::Negative => Sign::Plus,
    };
    apply_operator(&d_kappa(kappa, sign), f)
}

fn check_direction<S: Scalar>(k_hat: &[S; 3]) -> Result<()> {
    if k_hat.iter().all(S::is_zero) || !k_hat.iter().all(S::is_real) {
        return Err(Error::BadDirection);
    }
    let norm = dot3(k_hat, k_hat) - S::one();
    if !norm.is_negligible(1e-12) {
        return Err(Error::BadDirection);
    }
    Ok(())
}

fn wave_vector<S: Scalar>(kappa: &S, k_hat: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| kappa.clone() * k_hat[i].clone())
}

fn vector_field<S: Scalar>(v: [S; 3], k: [S; 3]) -> AnalyticField<S> {
    let [a, b, c] = v;
    AnalyticField::quaternion_wave(Quaternion::vector(a, b, c), k)
}

/// Plane-wave solution `E = e·exp(jκ<k̂,x>)`, `H = κ/(ωμ) (k̂×e)·exp(jκ<k̂,x>)`.
pub fn plane_wave<S: Scalar>(
    m: &MediumParams<S>,
    k_hat: &[S; 3],
    e: &[S; 3],
) -> Result<MaxwellPair<S>> {
    check_direction(k_hat)?;
    if !dot3(k_hat, e).is_negligible(1e-12) {
        return Err(Error::NonTransverse);
    }
    let kappa = m.wavenumber()?;
    let omega_mu = m.omega.clone() * m.mu();
    if omega_mu.is_zero() {
        return Err(Error::ZeroDivisor("omega*mu"));
    }
    let factor = kappa.clone() / omega_mu;
    let k = wave_vector(&kappa, k_hat);
    let h = cross3(k_hat, e).map(|x| factor.clone() * x);
    Ok(MaxwellPair {
        e: vector_field(e.clone(), k.clone()),
        h: vector_field(h, k),
    })
}

/// Circularly polarized Beltrami field `(u ± j v) exp(jκ<k̂,x>)` with
/// `{u, v, k̂}` right-handed orthonormal, solving `(D ∓ κ)f = 0`.
pub fn circular_beltrami<S: Scalar>(
    kappa: &S,
    k_hat: &[S; 3],
    helicity: Helicity,
) -> Result<AnalyticField<S>> {
    check_direction(k_hat)?;
    // least aligned coordinate axis, lowest index on ties
    let axis = (0..3)
        .min_by(|&a, &b| k_hat[a].modulus().total_cmp(&k_hat[b].modulus()))
        .expect("three axes");
    let a: [S; 3] = std::array::from_fn(|i| if i == axis { S::one() } else { S::zero() });
    let proj = k_hat[axis].clone();
    let raw: [S; 3] = std::array::from_fn(|i| a[i].clone() - proj.clone() * k_hat[i].clone());
    let n2 = dot3(&raw, &raw);
    let norm = n2
        .sqrt()
        .ok_or_else(|| Error::InexactSqrt(n2.to_literal()))?;
    let u = raw.map(|x| x / norm.clone());
    let v = cross3(k_hat, &u);
    let s = S::from_i64(helicity.sign()) * S::j();
    let amp: [S; 3] = std::array::from_fn(|i| u[i].clone() + s.clone() * v[i].clone());
    Ok(vector_field(amp, wave_vector(kappa, k_hat)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Float};

    fn e(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    fn ez() -> [Exact; 3] {
        [e(0), e(0), e(1)]
    }

    fn ex() -> [Exact; 3] {
        [e(1), e(0), e(0)]
    }

    #[test]
    fn wavenumber_cases() {
        assert_eq!(MediumParams::vacuum(e(1)).wavenumber().unwrap(), e(1));
        assert_eq!(
            MediumParams::natural(e(4), e(1), e(1))
                .wavenumber()
                .unwrap(),
            e(2)
        );
        assert_eq!(
            MediumParams::natural(e(-1), e(1), e(3))
                .wavenumber()
                .unwrap(),
            e(3) * Exact::j()
        );
        assert!(MediumParams::natural(e(2), e(1), e(1))
            .wavenumber()
            .is_err());
        let f = MediumParams::<Float>::natural(
            Float::new(2.0, 0.0),
            Float::new(1.0, 0.0),
            Float::new(1.0, 0.0),
        );
        assert!((f.wavenumber().unwrap().re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn si_constants_satisfy_unit_relation() {
        let c = 299_792_458.0;
        let eps0 = 8.8541878128e-12;
        let mu0 = 1.0 / (eps0 * c * c);
        let f = |x: f64| Float::new(x, 0.0);
        assert!(MediumParams::new(f(eps0), f(mu0), f(1.0), f(1.0), f(1e9), f(c)).is_ok());
        assert!(MediumParams::new(e(2), e(1), e(1), e(1), e(1), e(1)).is_err());
    }

    #[test]
    fn vacuum_plane_wave_components() {
        let m = MediumParams::vacuum(e(1));
        let p = plane_wave(&m, &ez(), &ex()).unwrap();
        let want = AnalyticField::quaternion_wave(Quaternion::unit(2), ez());
        assert!(p.h.equivalent(&want));
        assert!(maxwell_residuals(&p, &m).vanish(0.0));
    }

    #[test]
    fn zero_pair_has_zero_residuals() {
        let m = MediumParams::vacuum(e(2));
        let r = maxwell_residuals(&MaxwellPair::zero(), &m);
        assert!(r.vanish(0.0));
    }

    #[test]
    fn doubled_h_breaks_ampere() {
        let m = MediumParams::natural(e(4), e(1), e(3));
        let mut p = plane_wave(&m, &ez(), &[e(1), Exact::j(), e(0)]).unwrap();
        p.h = p.h.scale(&e(2));
        let r = maxwell_residuals(&p, &m);
        assert!(!r.ampere.is_identically_zero());
    }

    #[test]
    fn plane_wave_preconditions() {
        let m = MediumParams::vacuum(e(1));
        assert_eq!(plane_wave(&m, &ez(), &ez()), Err(Error::NonTransverse));
        assert_eq!(
            plane_wave(&m, &[e(0), e(0), e(0)], &ex()),
            Err(Error::BadDirection)
        );
        assert_eq!(
            plane_wave(&m, &[e(0), e(0), e(2)], &ex()),
            Err(Error::BadDirection)
        );
    }

    #[test]
    fn beltrami_round_trip_and_residuals() {
        let m = MediumParams::natural(e(9), e(1), e(2));
        let k_hat = [Exact::from_ratio(3, 5), Exact::from_ratio(4, 5), e(0)];
        let pol = [
            Exact::from_ratio(-4, 5),
            Exact::from_ratio(3, 5),
            Exact::j(),
        ];
        let p = plane_wave(&m, &k_hat, &pol).unwrap();
        let kappa = m.wavenumber().unwrap();
        let (phi, psi) = to_beltrami(&p, &m).unwrap();
        assert!(beltrami_residual(&phi, &kappa, Helicity::Positive).is_identically_zero());
        assert!(beltrami_residual(&psi, &kappa, Helicity::Negative).is_identically_zero());
        let back = from_beltrami(&phi, &psi, &m).unwrap();
        assert!(back.e.equivalent(&p.e) && back.h.equivalent(&p.h));
    }

    #[test]
    fn beltrami_with_no_electric_field() {
        let m = MediumParams::vacuum(e(3));
        let h = AnalyticField::quaternion_wave(Quaternion::unit(1), ez());
        let (phi, psi) = to_beltrami(
            &MaxwellPair {
                e: AnalyticField::zero(),
                h: h.clone(),
            },
            &m,
        )
        .unwrap();
        assert!(phi.equivalent(&h.scale(&e(3))) && psi.equivalent(&phi));
    }

    #[test]
    fn inversion_needs_nonzero_frequency() {
        let m = MediumParams::vacuum(e(0));
        let z = AnalyticField::zero();
        assert!(matches!(
            from_beltrami(&z, &z, &m),
            Err(Error::ZeroDivisor(_))
        ));
    }

    #[test]
    fn circular_beltrami_is_eigenfield() {
        let f = circular_beltrami(&e(1), &ez(), Helicity::Positive).unwrap();
        let want = AnalyticField::quaternion_wave(Quaternion::vector(e(1), Exact::j(), e(0)), ez());
        assert!(f.equivalent(&want));
        assert!(beltrami_residual(&f, &e(1), Helicity::Positive).is_identically_zero());
        let g = circular_beltrami(
            &e(2),
            &[Exact::from_ratio(3, 5), e(0), Exact::from_ratio(4, 5)],
            Helicity::Negative,
        )
        .unwrap();
        assert!(beltrami_residual(&g, &e(2), Helicity::Negative).is_identically_zero());
        assert!(!beltrami_residual(&g, &e(2), Helicity::Positive).is_identically_zero());
    }

    #[test]
    fn beltrami_residual_of_constants() {
        let kappa = e(5);
        let c = AnalyticField::constant([e(1), e(2), e(0), e(-1)]);
        assert!(beltrami_residual(&c, &kappa, Helicity::Positive).equivalent(&c.scale(&e(-5))));
        assert!(beltrami_residual(&c, &kappa, Helicity::Negative).equivalent(&c.scale(&e(5))));
        assert!(
            beltrami_residual(&AnalyticField::zero(), &kappa, Helicity::Positive)
                .is_identically_zero()
        );
    }
}
