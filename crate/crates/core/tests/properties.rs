use lgcy_core::chazy::{bp_residual, chazy_residual, chazy_solve_s, ChazyInitialData};
use lgcy_core::hae::d_dc2;
use lgcy_core::modular::{qm_eval, quasimodularize, ramanujan_derive, weight_basis};
use lgcy_core::rational::{int, rat};
use lgcy_core::series::{DeriveMode, PowerSeries};
use lgcy_core::{Monomial, QMPolynomial, Var, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(|c| PowerSeries::new(Var::Q, c))
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order).prop_map(|mut c| {
        c.insert(0, int(1));
        PowerSeries::new(Var::Q, c)
    })
}

fn qm_poly(weight: u32) -> impl Strategy<Value = QMPolynomial> {
    let basis = weight_basis(weight);
    prop::collection::vec(small_rational(), basis.len())
        .prop_map(move |c| QMPolynomial::from_terms(basis.iter().copied().zip(c)))
}

fn mixed_qm_poly() -> impl Strategy<Value = QMPolynomial> {
    prop::collection::vec((0u32..3, 0u32..2, 0u32..2, small_rational()), 1..5)
        .prop_map(|t| QMPolynomial::from_terms(t.into_iter().map(|(a, b, c, x)| (Monomial::new(a, b, c), x))))
}

fn horner(f: &PowerSeries, g: &PowerSeries, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::zero(g.var(), order);
    let mut power = PowerSeries::one(g.var(), order);
    for c in f.coeffs() {
        acc = &acc + &power.scale(c);
        power = (&power * g).truncate(order);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn exp_log_round_trip(f in unit_series(7), g in series(7)) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f.clone());
        let g0 = &g - &PowerSeries::constant(Var::Q, 7, g.coeff(0).clone());
        prop_assert_eq!(g0.exp().unwrap().log().unwrap(), g0);
    }

    #[test]
    fn reciprocal_inverts(f in unit_series(9)) {
        prop_assert_eq!(&f * &f.reciprocal().unwrap(), PowerSeries::one(Var::Q, 9));
    }

    #[test]
    fn derive_is_a_derivation(a in series(8), b in series(8)) {
        for mode in [DeriveMode::ThetaQ, DeriveMode::Plain] {
            let lhs = (&a * &b).derive(mode);
            let rhs = &(&a.derive(mode) * &b) + &(&a * &b.derive(mode));
            let d = lhs.order().min(rhs.order()) as usize;
            prop_assert_eq!(lhs.truncate(d), rhs.truncate(d));
        }
    }

    #[test]
    fn compose_matches_horner(f in series(4), tail in series(5)) {
        let mut c = tail.into_coeffs();
        c[0] = Q::zero();
        let g = PowerSeries::new(Var::Q, c);
        let composed = f.compose(&g).unwrap();
        let order = composed.order() as usize;
        prop_assert_eq!(composed, horner(&f, &g, order));
    }

    #[test]
    fn reversion_inverts(tail in series(7), lead in 1i64..5) {
        let mut c = tail.into_coeffs();
        c[0] = Q::zero();
        c[1] = int(lead);
        let f = PowerSeries::new(Var::Q, c);
        let r = f.reversion().unwrap();
        prop_assert_eq!(f.compose(&r).unwrap(), PowerSeries::monomial(Var::Q, 7, 1, int(1)));
    }

    #[test]
    fn theta_commutes_with_evaluation(p in mixed_qm_poly()) {
        let order = 14;
        let lhs = qm_eval(&p, order).derive(DeriveMode::ThetaQ);
        let rhs = qm_eval(&ramanujan_derive(&p), order);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quasimodularize_inverts_evaluation(w in 1u32..6, seed in any::<u64>()) {
        let basis = weight_basis(2 * w);
        let p = QMPolynomial::from_terms(
            basis.iter().enumerate().map(|(i, m)| (*m, rat(((seed >> (i % 16)) % 11) as i64 - 5, 1 + i as i64))),
        );
        let f = qm_eval(&p, 40);
        prop_assert_eq!(quasimodularize(&f, 2 * w, 10).unwrap(), p);
    }

    #[test]
    fn quasimodularize_inverts_random_weight_eight(p in qm_poly(8)) {
        prop_assert_eq!(quasimodularize(&qm_eval(&p, 30), 8, 10).unwrap(), p);
    }

    #[test]
    fn bp_matches_chazy(g in series(20)) {
        let lhs = chazy_residual(&g.scale(&int(-24)), DeriveMode::ThetaQ).unwrap();
        let rhs = bp_residual(&g, DeriveMode::ThetaQ).unwrap().scale(&int(-480));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chazy_solutions_have_zero_residual(f0 in small_rational(), f1 in small_rational(), f2 in small_rational()) {
        let f = chazy_solve_s(&ChazyInitialData::new(f0, f1, f2), 12);
        prop_assert!(chazy_residual(&f, DeriveMode::Plain).unwrap().is_zero());
    }

    #[test]
    fn chazy_scaling(f2 in small_rational(), l in small_rational()) {
        // Every term of the equation has weight 4 when f has weight 1 and d/ds weight 1.
        let f = chazy_solve_s(&ChazyInitialData::new(Q::zero(), Q::zero(), f2), 12);
        let scaled = f.rescale(&l).scale(&l);
        prop_assert!(chazy_residual(&scaled, DeriveMode::Plain).unwrap().is_zero());
    }

    #[test]
    fn d_dc2_derivation(a in mixed_qm_poly(), b in mixed_qm_poly()) {
        prop_assert_eq!(d_dc2(&(&a * &b)), &(&d_dc2(&a) * &b) + &(&a * &d_dc2(&b)));
    }
}
