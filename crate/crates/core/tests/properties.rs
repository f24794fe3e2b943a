use num_traits::{Signed, Zero};
use proptest::prelude::*;

use flagcsc::momentum::{build_profile_inputs, metric_index, momentum_interval, default_width, IntervalEnd, MomentumProfile};
use flagcsc::poly::{frac, int, SturmSequence};
use flagcsc::{BundleWeight, FlagVariety, KahlerClass, Polynomial, Rational, RootSystem};

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| frac(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

/// Lie type, one-based Levi indices, weight and class of matching width.
fn flag_data() -> impl Strategy<Value = (&'static str, Vec<usize>, Vec<i64>, Vec<Rational>)> {
    prop_oneof![Just("A1"), Just("A2"), Just("A3"), Just("B2"), Just("C3"), Just("G2")]
        .prop_flat_map(|t| {
            let rank = RootSystem::parse(t).unwrap().rank;
            (Just(t), proptest::sample::subsequence((1..=rank).collect::<Vec<_>>(), 0..rank))
        })
        .prop_flat_map(|(t, pi)| {
            let width = RootSystem::parse(t).unwrap().rank - pi.len();
            (
                Just(t),
                Just(pi),
                proptest::collection::vec(-3i64..=-1, width),
                proptest::collection::vec(positive(), width),
            )
        })
}

fn flag(t: &str, pi: &[usize]) -> FlagVariety {
    FlagVariety::new(RootSystem::parse(t).unwrap(), pi.iter().map(|i| i - 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_matches_naive_horner(coeffs in proptest::collection::vec(rat(), 0..8), x in rat()) {
        let p = Polynomial::new(coeffs.clone());
        let mut acc = Rational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        prop_assert_eq!(p.eval(&x), acc);
    }

    #[test]
    fn sturm_counts_distinct_positive_roots(roots in proptest::collection::vec(rat(), 1..6)) {
        let mut p = Polynomial::one();
        for r in &roots {
            p = &p * &Polynomial::linear(-r.clone(), int(1));
        }
        let lo = frac(1, 1000);
        prop_assume!(!roots.contains(&lo));
        let mut distinct: Vec<&Rational> = roots.iter().filter(|r| **r > lo).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(SturmSequence::new(&p).count_from(&lo, None), distinct.len());
    }

    #[test]
    fn profile_solves_ode((t, pi, lam, kappa) in flag_data(), c in rat()) {
        let fv = flag(t, &pi);
        let inputs = build_profile_inputs(&fv, &BundleWeight::new(lam).unwrap(), &KahlerClass::new(kappa).unwrap()).unwrap();
        let prof = MomentumProfile::solve(&inputs, &c);
        prop_assert!(prof.residual().is_zero());
        prop_assert!(prof.phi_num.coeff(0).is_zero());
        prop_assert_eq!(prof.phi_num.derivative().coeff(0), prof.qtilde.coeff(0));
        prop_assert_eq!(inputs.qtilde.degree(), Some(fv.dim()));
    }

    #[test]
    fn interval_shape_follows_curvature_sign((t, pi, lam, kappa) in flag_data(), c in rat()) {
        let fv = flag(t, &pi);
        let inputs = build_profile_inputs(&fv, &BundleWeight::new(lam).unwrap(), &KahlerClass::new(kappa).unwrap()).unwrap();
        let prof = MomentumProfile::solve(&inputs, &c);
        let iv = momentum_interval(&prof, &default_width()).unwrap();
        match &iv.end {
            IntervalEnd::Infinite => prop_assert!(!c.is_positive()),
            IntervalEnd::Finite(enc) => {
                prop_assert!(c.is_positive());
                prop_assert!(enc.lo.is_positive() && enc.lo <= enc.hi);
                let inside = &enc.lo / int(2);
                prop_assert!(prof.phi_at(&inside).unwrap().is_positive());
                // phi changes sign across the enclosure
                prop_assert!(!prof.phi_num.eval(&(&enc.hi + int(1))).is_positive());
            }
        }
    }

    #[test]
    fn metric_index_is_inverse_in_weight_scale((t, pi, lam, _k) in flag_data(), m in 1i64..=5) {
        let fv = flag(t, &pi);
        let w = BundleWeight::new(lam).unwrap();
        let base = metric_index(&fv, &w).unwrap();
        prop_assert!(base.is_positive());
        prop_assert_eq!(metric_index(&fv, &w.scaled(m)).unwrap(), base / int(m));
    }

    #[test]
    fn positive_weights_are_rejected((t, pi, lam, kappa) in flag_data()) {
        let fv = flag(t, &pi);
        let flipped = BundleWeight::new(lam.iter().map(|x| -x).collect()).unwrap();
        prop_assert!(build_profile_inputs(&fv, &flipped, &KahlerClass::new(kappa).unwrap()).is_err());
    }
}
