use proptest::prelude::*;

use qmd_core::bridge::decomposition_residuals;
use qmd_core::harness::{parse_operator, print_operator};
use qmd_core::maxwell::circular_beltrami;
use qmd_core::{
    apply_operator, decompose, lift_left, lift_right, moisil_theodoresco, operator_identities,
    projector_laws, projectors, qmul, qmul_vecform, square_of_vector, AnalyticField, DiffOperator,
    Exact, Float, Helicity, Matrix4, PlaneWaveTerm, Quaternion, Scalar,
};

fn small() -> impl Strategy<Value = Exact> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Exact::from_ratio(a, b) + Exact::j() * Exact::from_ratio(c, d))
}

fn nonzero() -> impl Strategy<Value = Exact> {
    small().prop_filter("nonzero", |z| !z.is_zero())
}

fn quat() -> impl Strategy<Value = Quaternion<Exact>> {
    prop::array::uniform4(small()).prop_map(Quaternion::from_coords)
}

fn vector() -> impl Strategy<Value = Quaternion<Exact>> {
    prop::array::uniform3(small()).prop_map(|[a, b, c]| Quaternion::vector(a, b, c))
}

fn wave() -> impl Strategy<Value = AnalyticField<Exact>> {
    prop::collection::vec(
        (
            prop::array::uniform4(small()),
            prop::array::uniform3(small()),
        ),
        1..3,
    )
    .prop_map(|terms| {
        AnalyticField::from_terms(
            terms
                .into_iter()
                .map(|(a, k)| PlaneWaveTerm::new(a, k))
                .collect(),
        )
    })
}

fn atom() -> impl Strategy<Value = DiffOperator<Exact>> {
    prop_oneof![
        (1usize..=3).prop_map(|k| DiffOperator::partial(k).unwrap()),
        (1usize..=3).prop_map(|k| DiffOperator::reflect(k).unwrap()),
        quat().prop_map(|q| DiffOperator::const_left(&q)),
        quat().prop_map(|q| DiffOperator::const_right(&q)),
        small().prop_map(DiffOperator::scalar),
    ]
}

/// Sums of short products of atoms.
fn operator() -> impl Strategy<Value = DiffOperator<Exact>> {
    prop::collection::vec(prop::collection::vec(atom(), 1..3), 1..3).prop_map(|sum| {
        sum.into_iter()
            .map(|prod| prod.into_iter().reduce(|a, b| a.compose(&b)).unwrap())
            .fold(DiffOperator::zero(), |acc, t| acc + t)
    })
}

fn to_float(q: &Quaternion<Exact>) -> Quaternion<Float> {
    Quaternion::from_coords(q.coords().each_ref().map(Scalar::to_c64))
}

/// Vector with `α² = κ²`, built from a Pythagorean direction.
fn matched_vector(kappa: &Exact, m: i64, n: i64) -> Quaternion<Exact> {
    let d = m * m + n * n;
    let a = kappa.clone() * Exact::from_ratio(m * m - n * n, d) * Exact::j();
    let b = kappa.clone() * Exact::from_ratio(2 * m * n, d) * Exact::j();
    Quaternion::vector(a, b, Exact::from_i64(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in quat(), b in quat(), c in quat()) {
        prop_assert_eq!(qmul(&qmul(&a, &b), &c), qmul(&a, &qmul(&b, &c)));
    }

    #[test]
    fn vector_form_agrees_with_table(a in quat(), b in quat()) {
        prop_assert_eq!(qmul(&a, &b), qmul_vecform(&a, &b));
    }

    #[test]
    fn float_product_tracks_exact(a in quat(), b in quat()) {
        let exact = to_float(&qmul(&a, &b));
        let float = qmul(&to_float(&a), &to_float(&b));
        prop_assert!((exact - float).max_modulus() <= 1e-12);
    }

    #[test]
    fn vector_square_is_scalar(v in vector()) {
        let s = square_of_vector(&v).unwrap();
        prop_assert_eq!(qmul(&v, &v), Quaternion::scalar(s));
    }

    #[test]
    fn lifts_are_homomorphisms(a in quat(), b in quat()) {
        let ab = qmul(&a, &b);
        prop_assert_eq!(lift_left(&ab), &lift_left(&a) * &lift_left(&b));
        prop_assert_eq!(lift_right(&ab), &lift_right(&b) * &lift_right(&a));
        prop_assert_eq!(&lift_left(&a) * &lift_right(&b), &lift_right(&b) * &lift_left(&a));
    }

    #[test]
    fn lifts_act_as_products(a in quat(), x in quat()) {
        prop_assert_eq!(lift_left(&a).apply(x.coords()), qmul(&a, &x).into_coords());
        prop_assert_eq!(lift_right(&a).apply(x.coords()), qmul(&x, &a).into_coords());
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn composition_distributes(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&(&b + &c)), &a.compose(&b) + &a.compose(&c));
        prop_assert_eq!((&a + &b).compose(&c), &a.compose(&c) + &b.compose(&c));
    }

    #[test]
    fn application_respects_composition(a in operator(), b in operator(), f in wave()) {
        let lhs = apply_operator(&a.compose(&b), &f);
        let rhs = apply_operator(&a, &apply_operator(&b, &f));
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn application_is_linear(a in operator(), f in wave(), g in wave(), s in small()) {
        let lhs = apply_operator(&a, &(f.scale(&s) + g.clone()));
        let rhs = apply_operator(&a, &f).scale(&s) + apply_operator(&a, &g);
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn printed_operators_reparse(a in operator()) {
        let text = print_operator(&a).unwrap();
        prop_assert_eq!(parse_operator::<Exact>(&text).unwrap(), a);
    }

    #[test]
    fn projector_split_holds_for_any_kappa(kappa in nonzero(), alpha in vector()) {
        prop_assert!(operator_identities(&kappa, &alpha).unwrap().forward.holds(0.0));
    }

    #[test]
    fn matched_projectors_are_complete(kappa in nonzero(), m in 1i64..5, n in 0i64..5) {
        let alpha = matched_vector(&kappa, m, n);
        prop_assert_eq!(square_of_vector(&alpha).unwrap(), kappa.square());
        let laws = projector_laws(&projectors(&kappa, &alpha).unwrap());
        for (name, r) in laws.entries() {
            prop_assert!(r.is_zero(), "{} = {}", name, r);
        }
        let report = operator_identities(&kappa, &alpha).unwrap();
        for id in report.identities() {
            prop_assert!(id.holds(0.0), "{}", id.name);
        }
    }

    #[test]
    fn decomposition_splits_beltrami_sum(m in 1i64..4, n in 0i64..4, k in 1i64..5) {
        let kappa = Exact::from_i64(k);
        let alpha = matched_vector(&kappa, m, n);
        let dir = [Exact::from_i64(0), Exact::from_i64(0), Exact::from_i64(1)];
        let phi = circular_beltrami(&kappa, &dir, Helicity::Positive).unwrap();
        let psi = circular_beltrami(&kappa, &dir, Helicity::Negative).unwrap();
        let p = projectors(&kappa, &alpha).unwrap();
        let f = psi.right_mul(&p.plus) + phi.right_mul(&p.minus);
        let (psi2, phi2) = decompose(&f, &kappa, &alpha).unwrap();
        prop_assert!((psi2.clone() + phi2.clone() - f.clone()).is_identically_zero());
        let (rp, rf) = decomposition_residuals(&psi2, &phi2, &kappa);
        prop_assert!(rp.is_identically_zero() && rf.is_identically_zero());
    }
}

#[test]
fn d_squared_is_minus_laplacian_on_waves() {
    let d = moisil_theodoresco::<Exact>();
    let f = AnalyticField::plane_wave(
        [
            Exact::from_i64(1),
            Exact::j(),
            Exact::from_ratio(1, 2),
            Exact::from_i64(-3),
        ],
        [
            Exact::from_i64(2),
            Exact::from_ratio(-1, 3),
            Exact::from_i64(1),
        ],
    );
    let dd = apply_operator(&d.compose(&d), &f);
    let lap = apply_operator(&qmd_core::laplacian(), &f);
    assert!((dd + lap).is_identically_zero());
    assert_eq!(Matrix4::<Exact>::identity(), lift_left(&Quaternion::one()));
}
