use std::cmp::Ordering;

use proptest::prelude::*;
use shapiro_core::poly::{int, rat};
use shapiro_core::realroots::{count_real_roots, isolate_real_roots, sturm_count, Extended};
use shapiro_core::rootlocus::{
    gain_at, gain_derivative_numerator, AxisAnalysis, Extremum, Gain, Parity,
};
use shapiro_core::shapiro::{
    actual_verdict, classify, delta_sign_shortcut, predict_verdict, AxisPoint, ShapiroInstance,
};
use shapiro_core::{Error, Polynomial, Rational};

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (0..=max_degree)
        .prop_flat_map(|d| prop::collection::vec(-9i64..=9, d + 1))
        .prop_map(|c| Polynomial::from_i64(&c))
}

fn even_poly(degrees: &'static [usize]) -> impl Strategy<Value = Polynomial> {
    prop::sample::select(degrees)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-9i64..=9, n),
                (1i64..=9, any::<bool>()),
            )
        })
        .prop_map(|(mut c, (lead, neg))| {
            c.push(if neg { -lead } else { lead });
            Polynomial::from_i64(&c)
        })
}

fn finite_gain(g: Gain) -> Rational {
    match g {
        Gain::Finite(k) => k,
        Gain::Infinite => panic!("sample point is a zero"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gcd_divides_both(a in poly(5), b in poly(5)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert_eq!(g.leading_coefficient().cloned(), Some(int(1)));
    }

    #[test]
    fn gcd_of_product_recovers_common_factor(a in poly(4), b in poly(4), c in poly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
    }

    #[test]
    fn division_identity(a in poly(6), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn text_round_trip(a in poly(6)) {
        prop_assert_eq!(a.to_string().parse::<Polynomial>().unwrap(), a);
    }

    /// Roots planted as integer and half-integer linear factors are found
    /// exactly, with their multiplicities.
    #[test]
    fn planted_roots_are_isolated(roots in prop::collection::vec((-6i64..=6, 1usize..=3), 1..4), quad in 1i64..5) {
        let mut p = Polynomial::from_i64(&[quad, 0, 1]);
        let mut expected: Vec<(Rational, usize)> = Vec::new();
        for &(r, m) in &roots {
            let x = rat(r, 2);
            p = &p * &Polynomial::from_coefficients(vec![-x.clone(), int(1)]).pow(m as u32);
            match expected.iter_mut().find(|(y, _)| *y == x) {
                Some(e) => e.1 += m,
                None => expected.push((x, m)),
            }
        }
        expected.sort();
        let found = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(found.len(), expected.len());
        for (r, (x, m)) in found.iter().zip(&expected) {
            prop_assert_eq!(r.cmp_rational(x), Ordering::Equal);
            prop_assert_eq!(r.multiplicity(), *m);
        }
    }

    #[test]
    fn isolation_agrees_with_sturm_counts(p in poly(7)) {
        prop_assume!(!p.is_zero());
        let roots = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(roots.len(), sturm_count(&p, &Extended::NegInf, &Extended::PosInf).unwrap());
        for w in roots.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
        for r in &roots {
            if !r.is_exact() {
                prop_assert_ne!(r.owner().sign_at(r.lo()), r.owner().sign_at(r.hi()));
            }
        }
        let c = count_real_roots(&p).unwrap();
        prop_assert!(c.with_multiplicity <= p.degree().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prediction_matches_direct_count(p in even_poly(&[2, 4, 6])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let label = classify(&inst).label;
        match actual_verdict(&inst) {
            Ok(a) => prop_assert_eq!(predict_verdict(label), a.verdict, "{}", p),
            Err(e) => prop_assert_eq!(e, Error::DeltaIdenticallyZero),
        }
    }

    #[test]
    fn classification_is_scale_invariant(p in even_poly(&[2, 4, 6])) {
        let base = classify(&ShapiroInstance::build(&p).unwrap()).label;
        for k in [int(2), int(-3), rat(1, 5)] {
            let q = p.scale(&k);
            prop_assert_eq!(classify(&ShapiroInstance::build(&q).unwrap()).label, base);
        }
    }

    /// Δ loses its top two degrees, and the gain tends to n/(n-1) at infinity.
    #[test]
    fn delta_degree_drop_and_gain_limit(p in even_poly(&[2, 4, 6, 8])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let n = inst.n;
        prop_assert_eq!(inst.delta.coeff(2 * n - 2), int(0));
        let lc_p1_sq = inst.p1.pow(2).leading_coefficient().unwrap().clone();
        let lc_p2p = (&inst.p2 * &p).leading_coefficient().unwrap().clone();
        prop_assert_eq!(lc_p1_sq / lc_p2p, inst.k0.clone());
    }

    #[test]
    fn rf_sign_follows_parity(p in even_poly(&[2, 4, 6])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let a = AxisAnalysis::new(inst.pp.clone());
        for s in &a.segments {
            let expected = if s.parity == Parity::Even { Ordering::Greater } else { Ordering::Less };
            for x in s.sample_points(3) {
                prop_assert_eq!(inst.pp.sign_at(&x), expected);
            }
        }
    }

    /// On EVEN segments `sign(K - K0) = sign(Δ)`; checked against the gain itself.
    #[test]
    fn shortcut_matches_gain(p in even_poly(&[2, 4, 6])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let a = AxisAnalysis::new(inst.pp.clone());
        for s in &a.segments {
            for x in s.sample_points(4) {
                let shortcut = delta_sign_shortcut(&inst, AxisPoint::Rational(&x));
                if s.parity == Parity::Even {
                    let k = finite_gain(gain_at(&inst.pp, &x));
                    prop_assert_eq!(shortcut, Ok(k.cmp(&inst.k0)));
                } else {
                    prop_assert_eq!(shortcut, Err(Error::NotOnEvenSegment));
                }
            }
        }
    }

    /// A breakaway is an extremum exactly when it is a root of odd
    /// multiplicity of the gain-derivative numerator.
    #[test]
    fn standard_iff_odd_multiplicity(p in even_poly(&[4, 6])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let a = AxisAnalysis::new(inst.pp.clone());
        let crit = isolate_real_roots(&gain_derivative_numerator(&inst.pp)).unwrap();
        for b in &a.breakaways {
            let m = crit
                .iter()
                .find(|r| shapiro_core::realroots::compare_roots(r, &b.location) == Ordering::Equal)
                .map(|r| r.multiplicity())
                .unwrap();
            prop_assert_eq!(b.standard, m % 2 == 1);
            prop_assert_eq!(b.standard, b.extremum != Extremum::None);
        }
    }

    /// Between consecutive events and breakaway points the gain is strictly monotone.
    #[test]
    fn gain_is_monotone_between_critical_points(p in even_poly(&[2, 4, 6])) {
        let inst = ShapiroInstance::build(&p).unwrap();
        let a = AxisAnalysis::new(inst.pp.clone());
        for (i, s) in a.segments.iter().enumerate() {
            let cuts: Vec<_> = a.breakaways_in(i).map(|b| b.location.clone()).collect();
            let mut bounds = vec![s.left.clone()];
            bounds.extend(cuts.into_iter().map(Some));
            bounds.push(s.right.clone());
            for w in bounds.windows(2) {
                let xs = shapiro_core::rootlocus::sample_between(w[0].as_ref(), w[1].as_ref(), 4);
                let ks: Vec<Rational> = xs.iter().map(|x| finite_gain(gain_at(&inst.pp, x))).collect();
                let steps: Vec<Ordering> = ks.windows(2).map(|k| k[1].cmp(&k[0])).collect();
                prop_assert!(steps.iter().all(|&o| o == steps[0] && o != Ordering::Equal), "{}: {:?}", p, ks);
            }
        }
    }
}

#[test]
fn powers_of_a_linear_form_have_zero_delta() {
    for p in [
        Polynomial::from_i64(&[1, -4, 6, -4, 1]),
        Polynomial::from_i64(&[4, 4, 1]).scale(&int(-3)),
    ] {
        let inst = ShapiroInstance::build(&p).unwrap();
        assert!(inst.delta.is_zero());
        assert_eq!(actual_verdict(&inst), Err(Error::DeltaIdenticallyZero));
    }
}
