//! Suite orchestration. Every suite draws its random samples from its own
//! seeded stream, so a report does not depend on which other suites ran.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::{
    decompose, decomposition_residuals, dirac_residual, dispersion_check, maxwell_to_dirac,
    operator_identities, projector_laws, projectors, recombine, DispersionRecord,
};
use crate::dirac::{
    alpha_vector, conjugated_dirac, conjugation_identity_residual, covariant_residual,
    default_points, reconstruct_gammas, DiracParams, TransformA,
};
use crate::error::{Error, Result};
use crate::field::{AnalyticField, PlaneWaveTerm};
use crate::grid::fd_error;
use crate::harness::config::ScenarioConfig;
use crate::harness::expr::{lower, parse_expr, parse_operator, print_operator, ComplexLit, CORPUS};
use crate::harness::report::{CheckRecord, Status, VerificationReport};
use crate::matrix::Matrix4;
use crate::maxwell::{
    beltrami_residual, from_beltrami, maxwell_residuals, plane_wave, quaternionic_residuals,
    to_beltrami, Helicity, MaxwellPair, MediumParams,
};
use crate::operator::{d_alpha, d_kappa, laplacian, moisil_theodoresco, DiffOperator, Sign};
use crate::quaternion::{lift_left, lift_right, qmul, qmul_vecform, square_of_vector, Quaternion};
use crate::scalar::{Exact, Float, Mode, Scalar};

/// Suite names in execution order.
pub const SUITES: &[&str] = &[
    "algebra",
    "operators",
    "maxwell",
    "dirac",
    "bridge",
    "projector-laws",
    "dispersion",
    "fd-convergence",
];

const RANDOM_SAMPLES: usize = 25;
const BISPINOR_SAMPLES: usize = 50;

/// Expands `all`, removes duplicates and orders by [`SUITES`].
pub fn resolve(names: &[String]) -> Result<Vec<&'static str>> {
    let mut chosen = [false; 8];
    for n in names {
        if n == "all" {
            chosen = [true; 8];
            continue;
        }
        let idx = SUITES.iter().position(|s| s == n).ok_or_else(|| {
            Error::Config(format!(
                "unknown suite `{n}`; known: all, {}",
                SUITES.join(", ")
            ))
        })?;
        chosen[idx] = true;
    }
    Ok(SUITES
        .iter()
        .zip(chosen)
        .filter(|(_, c)| *c)
        .map(|(s, _)| *s)
        .collect())
}

/// Runs the suites listed in `cfg.suites` in the configured mode.
pub fn run_suite(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    match cfg.mode {
        Mode::Exact => run_in::<Exact>(cfg),
        Mode::Float => run_in::<Float>(cfg),
    }
}

fn run_in<S: Scalar>(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let mut rec = Recorder::new(S::MODE, cfg.tolerance);
    let ctx = Context::<S>::new(cfg);
    for suite in resolve(&cfg.suites)? {
        match suite {
            "algebra" => algebra(&mut rec, &ctx),
            "operators" => operators(&mut rec, &ctx),
            "maxwell" => maxwell(&mut rec, &ctx),
            "dirac" => dirac(&mut rec, &ctx),
            "bridge" => bridge(&mut rec, &ctx),
            "projector-laws" => projector_suite(&mut rec, &ctx),
            "dispersion" => dispersion(&mut rec, &ctx),
            "fd-convergence" => fd_convergence(&mut rec, &ctx),
            _ => unreachable!("resolved suite names are known"),
        }
    }
    Ok(rec.finish())
}

/// Per-suite stream derived from the canonical suite index.
fn suite_seed(base: u64, suite: &str) -> u64 {
    let idx = SUITES.iter().position(|s| *s == suite).unwrap_or(0) as u64;
    base.wrapping_add(0x9e37_79b9 * (idx + 1))
}

/// Inputs shared by the suites, each kept as a `Result` so a bad value fails
/// only the checks that need it.
struct Context<S: Scalar> {
    seed: u64,
    medium: Result<MediumParams<S>>,
    dirac: Result<DiracParams<S>>,
    e: AnalyticField<S>,
    h: AnalyticField<S>,
    grid: crate::grid::GridSpec,
}

impl<S: Scalar> Context<S> {
    fn new(cfg: &ScenarioConfig) -> Self {
        Context {
            seed: cfg.seed,
            medium: cfg.medium.params(),
            dirac: cfg.dirac.params(),
            e: cfg.e_field(),
            h: cfg.h_field(),
            grid: cfg.grid,
        }
    }

    fn kappa(&self) -> Result<S> {
        self.medium.clone()?.wavenumber()
    }

    fn alpha(&self) -> Result<Quaternion<S>> {
        Ok(alpha_vector(&self.dirac.clone()?))
    }

    fn pair(&self) -> Result<MaxwellPair<S>> {
        MaxwellPair::new(self.e.clone(), self.h.clone())
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(suite_seed(self.seed, suite))
    }
}

/// Zero test and size of a residual object.
trait Measure {
    fn exact_zero(&self) -> bool;
    fn size(&self) -> f64;
}

impl<S: Scalar> Measure for AnalyticField<S> {
    fn exact_zero(&self) -> bool {
        self.is_identically_zero()
    }

    fn size(&self) -> f64 {
        self.max_amplitude()
    }
}

impl<S: Scalar> Measure for DiffOperator<S> {
    fn exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn size(&self) -> f64 {
        self.max_modulus()
    }
}

impl<S: Scalar> Measure for Matrix4<S> {
    fn exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn size(&self) -> f64 {
        self.max_modulus()
    }
}

impl<S: Scalar> Measure for Quaternion<S> {
    fn exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn size(&self) -> f64 {
        self.max_modulus()
    }
}

struct ScalarResidual<S>(S);

impl<S: Scalar> Measure for ScalarResidual<S> {
    fn exact_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn size(&self) -> f64 {
        self.0.modulus()
    }
}

struct Recorder {
    mode: Mode,
    tol: f64,
    report: VerificationReport,
}

impl Recorder {
    fn new(mode: Mode, tol: f64) -> Self {
        Recorder {
            mode,
            tol,
            report: VerificationReport::new(mode),
        }
    }

    fn finish(self) -> VerificationReport {
        self.report
    }

    fn push(
        &mut self,
        name: &str,
        anchor: &str,
        ok: bool,
        residual: Option<f64>,
        tolerance: f64,
        detail: Option<String>,
    ) {
        self.report.checks.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: Status::from_bool(ok),
            residual: residual.filter(|r| r.is_finite()),
            tolerance,
            mode: self.mode,
            detail,
        });
    }

    fn zero_tolerance(&self) -> f64 {
        match self.mode {
            Mode::Exact => 0.0,
            Mode::Float => self.tol,
        }
    }

    fn passes(&self, m: &dyn Measure) -> bool {
        match self.mode {
            Mode::Exact => m.exact_zero(),
            Mode::Float => m.size() <= self.tol,
        }
    }

    /// The residual must vanish: exactly in exact mode, within the tolerance
    /// in float mode.
    fn vanishes(&mut self, name: &str, anchor: &str, m: &dyn Measure) {
        let ok = self.passes(m);
        self.push(
            name,
            anchor,
            ok,
            Some(m.size()),
            self.zero_tolerance(),
            None,
        );
    }

    /// All residuals must vanish; reports the largest.
    fn all_vanish<'a>(
        &mut self,
        name: &str,
        anchor: &str,
        items: impl IntoIterator<Item = &'a dyn Measure>,
    ) {
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for m in items {
            ok &= self.passes(m);
            worst = worst.max(m.size());
        }
        self.push(name, anchor, ok, Some(worst), self.zero_tolerance(), None);
    }

    /// The residual must not vanish.
    fn nonzero(&mut self, name: &str, anchor: &str, m: &dyn Measure) {
        let ok = !self.passes(m);
        self.push(
            name,
            anchor,
            ok,
            Some(m.size()),
            self.zero_tolerance(),
            None,
        );
    }

    fn flag(&mut self, name: &str, anchor: &str, ok: bool, residual: f64, detail: Option<String>) {
        self.push(name, anchor, ok, Some(residual), 0.0, detail);
    }

    fn error(&mut self, name: &str, anchor: &str, e: &Error) {
        self.push(
            name,
            anchor,
            false,
            None,
            self.zero_tolerance(),
            Some(e.to_string()),
        );
    }

    /// Unwraps `r`, recording a failed check when it is an error.
    fn need<T>(&mut self, name: &str, anchor: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(name, anchor, &e);
                None
            }
        }
    }
}

fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let re = S::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=4));
    let im = S::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=4));
    re + S::j() * im
}

fn random_quaternion<S: Scalar>(rng: &mut ChaCha8Rng) -> Quaternion<S> {
    Quaternion::from_coords(std::array::from_fn(|_| random_scalar(rng)))
}

fn random_real<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    S::from_ratio(rng.random_range(-6..=6), rng.random_range(1..=3))
}

fn random_plane_wave<S: Scalar>(rng: &mut ChaCha8Rng) -> AnalyticField<S> {
    let terms = (0..rng.random_range(1..=3))
        .map(|_| {
            PlaneWaveTerm::new(
                std::array::from_fn(|_| random_scalar(rng)),
                std::array::from_fn(|_| random_real(rng)),
            )
        })
        .collect();
    AnalyticField::from_terms(terms)
}

fn algebra<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let mut rng = ctx.rng("algebra");
    let triples: Vec<[Quaternion<S>; 3]> = (0..RANDOM_SAMPLES)
        .map(|_| std::array::from_fn(|_| random_quaternion(&mut rng)))
        .collect();

    let assoc: Vec<Quaternion<S>> = triples
        .iter()
        .map(|[a, b, c]| qmul(&qmul(a, b), c) - qmul(a, &qmul(b, c)))
        .collect();
    rec.all_vanish(
        "quaternion product is associative",
        "(ab)c = a(bc)",
        assoc.iter().map(|q| q as &dyn Measure),
    );

    let vecform: Vec<Quaternion<S>> = triples
        .iter()
        .map(|[a, b, _]| qmul(a, b) - qmul_vecform(a, b))
        .collect();
    rec.all_vanish(
        "vector form of the product agrees with the table",
        "ab = a0 b0 - <a,b> + a0 b + b0 a + [a x b]",
        vecform.iter().map(|q| q as &dyn Measure),
    );

    let units: Vec<Quaternion<S>> = (1..=3)
        .flat_map(|k| {
            let next = k % 3 + 1;
            let third = next % 3 + 1;
            [
                qmul(&Quaternion::unit(k), &Quaternion::unit(k)) + Quaternion::one(),
                qmul(&Quaternion::unit(k), &Quaternion::unit(next)) - Quaternion::unit(third),
            ]
        })
        .collect();
    rec.all_vanish(
        "unit products",
        "i1 i2 = i3, i2 i3 = i1, i3 i1 = i2, ik^2 = -1",
        units.iter().map(|q| q as &dyn Measure),
    );

    let left: Vec<Matrix4<S>> = triples
        .iter()
        .map(|[a, b, _]| &lift_left(&qmul(a, b)) - &(&lift_left(a) * &lift_left(b)))
        .collect();
    rec.all_vanish(
        "left lift is a homomorphism",
        "L[ab] = L[a] L[b]",
        left.iter().map(|m| m as &dyn Measure),
    );

    let right: Vec<Matrix4<S>> = triples
        .iter()
        .map(|[a, b, _]| &lift_right(&qmul(a, b)) - &(&lift_right(b) * &lift_right(a)))
        .collect();
    rec.all_vanish(
        "right lift reverses order",
        "M[ab] = M[b] M[a]",
        right.iter().map(|m| m as &dyn Measure),
    );

    let commute: Vec<Matrix4<S>> = triples
        .iter()
        .map(|[a, b, _]| &(&lift_left(a) * &lift_right(b)) - &(&lift_right(b) * &lift_left(a)))
        .collect();
    rec.all_vanish(
        "left and right lifts commute",
        "L[a] M[b] = M[b] L[a]",
        commute.iter().map(|m| m as &dyn Measure),
    );

    let anchor = "alpha^2 = (E^2/c^2 - m^2 c^2)/hbar^2";
    if let Some(p) = rec.need("square of alpha", anchor, ctx.dirac.clone()) {
        let want =
            (p.energy.square() / p.c.square() - p.mass.square() * p.c.square()) / p.hbar.square();
        if let Some(sq) = rec.need(
            "square of alpha",
            anchor,
            square_of_vector(&alpha_vector(&p)),
        ) {
            rec.vanishes("square of alpha", anchor, &ScalarResidual(sq - want));
        }
    }
}

fn operators<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let mut rng = ctx.rng("operators");
    let d = moisil_theodoresco::<S>();
    rec.vanishes(
        "D*D = -Laplacian",
        "D^2 = -(d1^2 + d2^2 + d3^2)",
        &(&d * &d + laplacian()),
    );

    let anchor = "(D + k)(D - k) = -(Laplacian + k^2)";
    if let Some(k) = rec.need("D_k D_-k", anchor, ctx.kappa()) {
        let lhs = &d_kappa(&k, Sign::Plus) * &d_kappa(&k, Sign::Minus);
        let rhs = -(laplacian() + DiffOperator::scalar(k.square()));
        rec.vanishes("D_k D_-k", anchor, &(lhs - rhs));
    }

    let r3 = DiffOperator::<S>::reflect(3).expect("axis 3");
    let d3 = DiffOperator::<S>::partial(3).expect("axis 3");
    rec.vanishes(
        "reflection flips its derivative",
        "R3 d3 R3 = -d3",
        &(&(&r3 * &d3) * &r3 + d3.clone()),
    );

    let (i1, i2) = (Quaternion::<S>::unit(1), Quaternion::<S>::unit(2));
    let reversed = &DiffOperator::const_right(&i1) * &DiffOperator::const_right(&i2)
        - DiffOperator::const_right(&qmul(&i2, &i1));
    rec.vanishes(
        "right multiplications compose in reverse",
        "M[i1] M[i2] = M[i2 i1]",
        &reversed,
    );

    let assoc: Vec<DiffOperator<S>> = (0..5)
        .map(|_| {
            let a = d_alpha(&random_quaternion(&mut rng));
            let b = &(&DiffOperator::reflect(rng.random_range(1..=3)).expect("axis")
                * &DiffOperator::partial(rng.random_range(1..=3)).expect("axis"))
                + &DiffOperator::const_left(&random_quaternion(&mut rng));
            let c = &moisil_theodoresco()
                * &DiffOperator::reflect(rng.random_range(1..=3)).expect("axis")
                + DiffOperator::const_right(&random_quaternion(&mut rng));
            &(&a * &b) * &c - &a * &(&b * &c)
        })
        .collect();
    rec.all_vanish(
        "operator composition is associative",
        "(AB)C = A(BC)",
        assoc.iter().map(|o| o as &dyn Measure),
    );

    let mut broken = Vec::new();
    for src in CORPUS {
        let ok = parse_expr(src).ok().and_then(|e| {
            let again = parse_expr(&e.to_string()).ok()?;
            let same_ops = lower::<S>(&e).ok()? == lower::<S>(&again).ok()?;
            Some(again == e && same_ops)
        });
        if ok != Some(true) {
            broken.push(*src);
        }
    }
    rec.flag(
        "parser round trip",
        "parse(print(parse(s))) = parse(s)",
        broken.is_empty(),
        broken.len() as f64,
        (!broken.is_empty()).then(|| format!("failed: {}", broken.join(" | "))),
    );

    let anchor = "parse(\"D + M[alpha]\") = D_alpha";
    if let Some(alpha) = rec.need("parsed Dirac operator", anchor, ctx.alpha()) {
        let text = alpha
            .coords()
            .iter()
            .map(ComplexLit::from_scalar)
            .collect::<Result<Vec<_>>>()
            .map(|c| {
                format!(
                    "D + M[{}]",
                    c.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            });
        let parsed = text.and_then(|t| parse_operator::<S>(&t));
        if let Some(op) = rec.need("parsed Dirac operator", anchor, parsed) {
            rec.vanishes("parsed Dirac operator", anchor, &(op - d_alpha(&alpha)));
        }
        let op = d_alpha(&alpha);
        let again = print_operator(&op).and_then(|t| parse_operator::<S>(&t));
        if let Some(again) = rec.need(
            "printed normal form reparses",
            "parse(print(D_alpha)) = D_alpha",
            again,
        ) {
            rec.vanishes(
                "printed normal form reparses",
                "parse(print(D_alpha)) = D_alpha",
                &(again - op),
            );
        }
    }
}

const PERTURBATION: (i64, i64) = (11, 10);

fn maxwell<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let Some(m) = rec.need("medium parameters", "eps0 mu0 c^2 = 1", ctx.medium.clone()) else {
        return;
    };
    if let Some(pair) = rec.need("fields are vectorial", "Sc E = Sc H = 0", ctx.pair()) {
        maxwell_pair_checks(rec, &m, &pair, "");
        if !pair.h.is_identically_zero() {
            let bumped = MaxwellPair {
                e: pair.e.clone(),
                h: pair.h.scale(&S::from_ratio(PERTURBATION.0, PERTURBATION.1)),
            };
            let ampere = maxwell_residuals(&bumped, &m).ampere;
            rec.nonzero(
                "perturbed H breaks rot H = -j omega eps E",
                "rot 1.1H + j omega eps E != 0",
                &ampere,
            );
            if let Some((phi, _)) = rec.need(
                "perturbed H breaks (D - k) phi = 0",
                "(D - k) phi != 0",
                to_beltrami(&bumped, &m),
            ) {
                if let Some(k) = rec.need(
                    "perturbed H breaks (D - k) phi = 0",
                    "(D - k) phi != 0",
                    m.wavenumber(),
                ) {
                    let r = beltrami_residual(&phi, &k, Helicity::Positive);
                    rec.nonzero("perturbed H breaks (D - k) phi = 0", "(D - k) phi != 0", &r);
                }
            }
        }
    }

    for (label, k_hat, e) in generated_directions::<S>() {
        let anchor = "E = e exp(j k<n,x>), H = k/(omega mu) (n x e) exp(j k<n,x>)";
        let name = format!("generated plane wave along {label}");
        if let Some(pair) = rec.need(&name, anchor, plane_wave(&m, &k_hat, &e)) {
            maxwell_pair_checks(rec, &m, &pair, &format!(" [{label}]"));
        }
    }
}

fn generated_directions<S: Scalar>() -> Vec<(&'static str, [S; 3], [S; 3])> {
    let r = |n: i64, d: i64| S::from_ratio(n, d);
    vec![
        (
            "x3",
            [r(0, 1), r(0, 1), r(1, 1)],
            [r(1, 1), r(0, 1), r(0, 1)],
        ),
        (
            "(3/5, 4/5, 0)",
            [r(3, 5), r(4, 5), r(0, 1)],
            [r(0, 1), r(0, 1), r(2, 1)],
        ),
        (
            "(2/3, 1/3, 2/3)",
            [r(2, 3), r(1, 3), r(2, 3)],
            [r(1, 1), r(0, 1), r(-1, 1)],
        ),
    ]
}

fn maxwell_pair_checks<S: Scalar>(
    rec: &mut Recorder,
    m: &MediumParams<S>,
    pair: &MaxwellPair<S>,
    suffix: &str,
) {
    let res = maxwell_residuals(pair, m);
    for (name, f) in res.fields() {
        rec.vanishes(&format!("{name}{suffix}"), name, f);
    }
    let (d1, d2) = quaternionic_residuals(pair, m);
    rec.vanishes(
        &format!("DE = j omega mu H{suffix}"),
        "DE = j omega mu H",
        &d1,
    );
    rec.vanishes(
        &format!("DH = -j omega eps E{suffix}"),
        "DH = -j omega eps E",
        &d2,
    );

    let anchor = "phi = -j omega eps E + k H, psi = j omega eps E + k H";
    let Some((phi, psi)) = rec.need(
        &format!("Beltrami fields{suffix}"),
        anchor,
        to_beltrami(pair, m),
    ) else {
        return;
    };
    let Some(k) = rec.need(&format!("Beltrami fields{suffix}"), anchor, m.wavenumber()) else {
        return;
    };
    rec.vanishes(
        &format!("(D - k) phi = 0{suffix}"),
        "D phi = k phi",
        &beltrami_residual(&phi, &k, Helicity::Positive),
    );
    rec.vanishes(
        &format!("(D + k) psi = 0{suffix}"),
        "D psi = -k psi",
        &beltrami_residual(&psi, &k, Helicity::Negative),
    );
    let anchor = "E = (psi - phi)/(2j omega eps), H = (psi + phi)/(2k)";
    if let Some(back) = rec.need(
        &format!("Beltrami fields recombine{suffix}"),
        anchor,
        from_beltrami(&phi, &psi, m),
    ) {
        let de = back.e - pair.e.clone();
        let dh = back.h - pair.h.clone();
        rec.all_vanish(
            &format!("Beltrami fields recombine{suffix}"),
            anchor,
            [&de as &dyn Measure, &dh],
        );
    }
}

fn dirac<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let mut rng = ctx.rng("dirac");
    let t = TransformA::<S>::standard();
    let inv_fwd = &(&t.inverse * &t.forward) - &Matrix4::identity();
    rec.vanishes(
        "A-matrix inverse",
        "M_inv M_A = Id (with the 1/2 in M_A)",
        &inv_fwd,
    );

    let mut roundtrip: Vec<AnalyticField<S>> = Vec::new();
    for _ in 0..BISPINOR_SAMPLES {
        let phi = random_plane_wave::<S>(&mut rng);
        roundtrip.push(t.apply(&t.apply_inverse(&phi)) - phi.clone());
        roundtrip.push(t.apply_inverse(&t.apply(&phi)) - phi);
    }
    rec.all_vanish(
        "A and its inverse on random bispinors",
        "A A^-1 = A^-1 A = Id",
        roundtrip.iter().map(|f| f as &dyn Measure),
    );

    let Some(p) = rec.need("Dirac parameters", "hbar != 0, c != 0", ctx.dirac.clone()) else {
        return;
    };
    let n = conjugated_dirac(&p);
    rec.flag(
        "conjugated operator has no reflections",
        "N = -A^-1 D_alpha A has empty reflection masks",
        !n.has_reflections(),
        n.terms().filter(|(mono, _)| !mono.mask.is_empty()).count() as f64,
        None,
    );

    let (p1, p2) = default_points::<S>();
    let anchor = "N = j a P + j b Q + sum Bk dk, gamma0 = Q^-1 P, gammak = Q^-1 Bk";
    let Some(recon) = rec.need("gamma reconstruction", anchor, reconstruct_gammas(&p1, &p2)) else {
        return;
    };
    rec.flag(
        "Q is invertible",
        "det Q != 0",
        recon.q.inverse().is_some(),
        0.0,
        None,
    );

    let g = &recon.gammas;
    let sign = g.clifford_sign(rec.tol);
    rec.report.conventions.clifford_sign = sign;
    rec.push(
        "Clifford relations",
        "g_mu g_nu + g_nu g_mu = 2 s diag(1,-1,-1,-1)_mu,nu",
        sign.is_some(),
        Some(g.clifford_defect(sign.unwrap_or(1))),
        rec.zero_tolerance(),
        sign.map(|s| format!("s = {s}")),
    );
    rec.vanishes(
        "Q = g1 g2 g3",
        "Q = gamma1 gamma2 gamma3",
        &recon.product_residual(),
    );

    let alt = reconstruct_gammas(
        &DiracParams::natural(S::from_i64(2), S::from_i64(1)),
        &DiracParams::natural(S::from_i64(1), S::from_i64(3)),
    );
    if let Some(alt) = rec.need(
        "gammas independent of parameter points",
        "(a, b) = (1,0), (0,1) vs (2,1), (1,3)",
        alt,
    ) {
        let diffs: Vec<Matrix4<S>> = (0..4).map(|i| &alt.gammas.gamma[i] - &g.gamma[i]).collect();
        rec.all_vanish(
            "gammas independent of parameter points",
            "(a, b) = (1,0), (0,1) vs (2,1), (1,3)",
            diffs.iter().map(|m| m as &dyn Measure),
        );
    }

    rec.vanishes(
        "conjugation identity",
        "D_alpha = -A gamma1 gamma2 gamma3 DD A^-1",
        &conjugation_identity_residual(g, &p, -1),
    );
    rec.vanishes(
        "conjugation identity with opposite sign",
        "D_alpha = +A gamma1 gamma2 gamma3 DD A^-1",
        &conjugation_identity_residual(g, &p, 1),
    );

    let anchor = "DD q = -(gamma1 gamma2 gamma3)^-1 A^-1 D_alpha A q";
    match g.spatial_product().inverse() {
        Some(g123_inv) => {
            let diffs: Vec<AnalyticField<S>> = (0..5)
                .map(|_| {
                    let q = random_plane_wave::<S>(&mut rng);
                    let lhs = covariant_residual(&q, g, &p);
                    let rhs = t
                        .apply_inverse(&dirac_residual(&t.apply(&q), &alpha_vector(&p)))
                        .apply_matrix(&g123_inv);
                    lhs + rhs
                })
                .collect();
            rec.all_vanish(
                "covariant operator restates D_alpha",
                anchor,
                diffs.iter().map(|f| f as &dyn Measure),
            );
        }
        None => rec.error(
            "covariant operator restates D_alpha",
            anchor,
            &Error::Singular("gamma1 gamma2 gamma3"),
        ),
    }

    let anchor = "DD A^-1 f = 0 when D_alpha f = 0";
    let transported = ctx
        .medium
        .clone()
        .and_then(|m| maxwell_to_dirac(&ctx.pair()?, &m, &p, rec.tol));
    if let Some(f) = rec.need(
        "covariant residual of a transported solution",
        anchor,
        transported,
    ) {
        let r = covariant_residual(&t.apply_inverse(&f), g, &p);
        rec.vanishes("covariant residual of a transported solution", anchor, &r);
    }
    rec.vanishes(
        "covariant residual of zero",
        "DD 0 = 0",
        &covariant_residual(&AnalyticField::zero(), g, &p),
    );
}

fn bridge<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let anchor = "k = omega sqrt(eps_r mu_r)/c, alpha = -(j E/c i1 + m c i2)/hbar";
    let Some(kappa) = rec.need("bridge parameters", anchor, ctx.kappa()) else {
        return;
    };
    let Some(alpha) = rec.need("bridge parameters", anchor, ctx.alpha()) else {
        return;
    };
    if let Some(rel) = rec.need(
        "operator identities",
        "P+- = M[(k +- alpha)/(2k)]",
        operator_identities(&kappa, &alpha),
    ) {
        for id in rel.identities() {
            rec.vanishes(id.name, id.name, &id.difference);
        }
    }

    let anchor = "f = (j omega eps/k) E alpha + k H";
    let transported = ctx.medium.clone().and_then(|m| {
        let p = ctx.dirac.clone()?;
        maxwell_to_dirac(&ctx.pair()?, &m, &p, rec.tol)
    });
    let Some(f) = rec.need("transport to a Dirac solution", anchor, transported) else {
        return;
    };
    rec.vanishes(
        "transported field solves D_alpha f = 0",
        "D_alpha f = 0",
        &dirac_residual(&f, &alpha),
    );

    if let Some((psi, phi)) = rec.need(
        "decomposition",
        "psi = P+ f, phi = P- f",
        decompose(&f, &kappa, &alpha),
    ) {
        let sum = psi.clone() + phi.clone() - f.clone();
        rec.vanishes("decomposition sums back", "P+ f + P- f = f", &sum);
        let (rp, rf) = decomposition_residuals(&psi, &phi, &kappa);
        rec.vanishes("(D + k) P+ f = 0", "D_k psi = 0", &rp);
        rec.vanishes("(D - k) P- f = 0", "D_-k phi = 0", &rf);
    }
    let anchor = "f = P+ psi + P- phi with Beltrami psi, phi";
    let again = ctx
        .medium
        .clone()
        .and_then(|m| recombine(&ctx.pair()?, &m, &alpha));
    if let Some(g) = rec.need("projected Beltrami fields rebuild f", anchor, again) {
        rec.vanishes("projected Beltrami fields rebuild f", anchor, &(g - f));
    }
}

fn projector_suite<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let anchor = "P+- = M[(k +- alpha)/(2k)]";
    let pp = ctx.kappa().and_then(|k| projectors(&k, &ctx.alpha()?));
    let Some(pp) = rec.need("projectors", anchor, pp) else {
        return;
    };
    let laws = projector_laws(&pp);
    for (name, q) in laws.entries() {
        rec.vanishes(name, name, q);
    }
}

fn dispersion<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let anchor = "p = hbar k";
    let record = ctx
        .medium
        .clone()
        .and_then(|m| DispersionRecord::from_medium(&m, &ctx.dirac.clone()?));
    let Some(r) = rec.need("dispersion record", anchor, record) else {
        return;
    };
    if let Some(chk) = rec.need("dispersion record", anchor, dispersion_check(&r)) {
        for (name, v) in chk.entries() {
            rec.vanishes(name, name, &ScalarResidual(v.clone()));
        }
        if (r.eps_r.clone() * r.mu_r.clone() - S::one()).is_zero() {
            rec.vanishes(
                "hbar omega = p c",
                "vacuum: hbar omega = p c",
                &ScalarResidual(chk.vacuum_photon),
            );
        }
    }

    let anchor = "m = 0: E = hbar omega = p c";
    let massless = ctx.dirac.clone().and_then(|p| {
        let p0 = DiracParams::new(p.energy, S::zero(), p.hbar, p.c)?;
        DispersionRecord::matched(&p0, S::one(), S::one())
    });
    if let Some(r0) = rec.need("massless limit", anchor, massless) {
        let a = r0.energy.clone() - r0.hbar.clone() * r0.omega.clone();
        let b = r0.energy.clone() - r0.momentum.clone() * r0.c.clone();
        rec.all_vanish(
            "massless limit",
            anchor,
            [&ScalarResidual(a) as &dyn Measure, &ScalarResidual(b)],
        );
    }
}

/// Accepted band for the error ratio when `h` is halved (second order).
pub const FD_RATIO_BAND: (f64, f64) = (3.5, 4.5);

fn fd_convergence<S: Scalar>(rec: &mut Recorder, ctx: &Context<S>) {
    let anchor = "|FD(D) E - D E|(h) / |FD(D) E - D E|(h/2) in [3.5, 4.5]";
    let name = "finite differences converge at second order";
    let d = moisil_theodoresco::<S>();
    let coarse = fd_error(&d, &ctx.e, &ctx.grid);
    let fine = fd_error(&d, &ctx.e, &ctx.grid.with_spacing(ctx.grid.h / 2.0));
    let (Some(coarse), Some(fine)) = (rec.need(name, anchor, coarse), rec.need(name, anchor, fine))
    else {
        return;
    };
    let ratio = coarse / fine;
    let ok = ratio >= FD_RATIO_BAND.0 && ratio <= FD_RATIO_BAND.1;
    rec.push(
        name,
        anchor,
        ok,
        Some((ratio - 4.0).abs()),
        0.5,
        Some(format!(
            "errors {coarse:.3e} -> {fine:.3e}, ratio {ratio:.4}, order {:.3}",
            ratio.log2()
        )),
    );

    let lap = laplacian::<S>();
    let coarse = fd_error(&lap, &ctx.e, &ctx.grid);
    let fine = fd_error(&lap, &ctx.e, &ctx.grid.with_spacing(ctx.grid.h / 2.0));
    let name = "finite-difference Laplacian converges at second order";
    let anchor = "|FD(Laplacian) E - Laplacian E| ratio in [3.5, 4.5]";
    if let (Some(c), Some(f)) = (rec.need(name, anchor, coarse), rec.need(name, anchor, fine)) {
        let ratio = c / f;
        rec.push(
            name,
            anchor,
            ratio >= FD_RATIO_BAND.0 && ratio <= FD_RATIO_BAND.1,
            Some((ratio - 4.0).abs()),
            0.5,
            Some(format!("errors {c:.3e} -> {f:.3e}, ratio {ratio:.4}")),
        );
    }
}
