//! Randomized cross-validation of the symbolic layer against independent
//! oracles: exact integer sampling for the positivity decisions, direct gamma
//! evaluation for the prefactors, and brute-force rational arithmetic for the
//! algebraic identities the engine relies on.

mod common;

use common::IntPoly;
use lqembed::embed::lambda_threshold;
use lqembed::exact::{gamma_float, Rational};
use lqembed::moments::derive_moment_identity;
use lqembed::norms::PerturbedNormFamily;
use lqembed::validate::finite_difference_convexity;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((-160i64..=160, 1i64..=16), 1..=7)
        .prop_map(|coeffs| IntPoly { coeffs })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// The Sturm-based nonnegativity decision must agree with an exhaustive
    /// exact scan of 10^4 sample points on [0, 1].
    #[test]
    fn sturm_verdicts_agree_with_exact_sampling(poly in int_poly()) {
        common::check_sturm_against_sampling(&poly);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The bivariate expansion of (1 + lambda f(u))^(s q) must reproduce the
    /// directly computed power at random rational points, in both evaluation
    /// orders.
    #[test]
    fn power_expansion_matches_direct_powers(
        un in 0i64..=48,
        lp in -9i64..=9,
        ld in 95i64..=200,
    ) {
        let u = Rational::new(un, 48);
        let lambda = Rational::new(lp, ld);
        let cases = [
            (2u32, Rational::new(1, 2), 1i32),
            (2, Rational::int(1), 2),
            (4, Rational::new(1, 4), 1),
            (4, Rational::new(1, 2), 2),
        ];
        for (s, q, sq) in cases {
            let family = PerturbedNormFamily::new(3, s).unwrap();
            let expansion = family.expand_power(&q).unwrap();
            let at_u_then_lambda = expansion.eval_main(&u).eval(&lambda);
            let at_lambda_then_u = expansion.eval_lambda(&lambda).eval(&u);
            let direct = family.profile_at(&lambda).eval(&u).pow(sq);
            prop_assert_eq!(&at_u_then_lambda, &at_lambda_then_u);
            prop_assert_eq!(&at_u_then_lambda, &direct);
        }
    }

    /// Exact degree-1 homogeneity: N(t x) = |t| N(x), checked on the squared
    /// values so the comparison stays in rational arithmetic.
    #[test]
    fn perturbed_norms_are_exactly_homogeneous(
        xs in prop::collection::vec((-20i64..=20, 1i64..=9), 3),
        tn in -12i64..=12,
        td in 1i64..=7,
    ) {
        prop_assume!(tn != 0);
        prop_assume!(xs.iter().any(|&(p, _)| p != 0));
        let t = Rational::new(tn, td);
        let x: Vec<Rational> = xs.iter().map(|&(p, q)| Rational::new(p, q)).collect();
        let tx: Vec<Rational> = x.iter().map(|v| v * &t).collect();
        for (s, lambda) in [(2u32, Rational::new(1, 14)), (4, Rational::new(1, 26))] {
            let family = PerturbedNormFamily::new(3, s).unwrap();
            let plain = family.evaluate_exact(&lambda, &x).unwrap();
            let scaled = family.evaluate_exact(&lambda, &tx).unwrap();
            prop_assert_eq!(scaled.squared(), &t.pow(2) * &plain.squared());
        }
    }
}

/// Every row of a moment identity carries the same prefactor, and that
/// constant must match a from-scratch float computation of
/// gamma((n+q)/2) / (2 gamma((q+1)/2) pi^((n-1)/2)).
#[test]
fn prefactors_match_a_direct_gamma_computation() {
    for n in 3..=10u32 {
        for q in [
            Rational::new(1, 4),
            Rational::new(1, 2),
            Rational::int(1),
            Rational::new(3, 2),
        ] {
            let identity = derive_moment_identity(n, &q, 4).unwrap();
            let shared = &identity.entries[0].prefactor;
            for row in &identity.entries {
                assert_eq!(&row.prefactor, shared, "n={n} q={q} power={}", row.power);
            }
            let qf = q.to_f64();
            let nf = n as f64;
            let direct = gamma_float((nf + qf) / 2.0).unwrap()
                / (2.0
                    * gamma_float((qf + 1.0) / 2.0).unwrap()
                    * std::f64::consts::PI.powf((nf - 1.0) / 2.0));
            let got = shared.value_f64().unwrap();
            let rel = ((got - direct) / direct).abs();
            assert!(rel <= 1e-10, "n={n} q={q}: {got} vs {direct} (rel {rel:.3e})");
        }
    }
}

/// Random lambdas strictly inside a certified convexity window must survive
/// midpoint probing, and lambdas at least 1/1000 outside must yield a
/// violating pair.
#[test]
fn convexity_windows_are_sound_for_random_lambdas() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let windows = [
        (2u32, Rational::new(-1, 10), Rational::new(1, 11)),
        (4, Rational::new(-1, 22), Rational::new(1, 23)),
    ];
    for (s, lo, hi) in windows {
        let family = PerturbedNormFamily::new(3, s).unwrap();
        // The window is asymmetric with |lo| > hi, so scaling hi by a factor
        // in (-1, 1) always lands strictly inside.
        for _ in 0..20 {
            let k: i64 = rng.gen_range(-999..=999);
            let lambda = &Rational::new(k, 1000) * &hi;
            let report = finite_difference_convexity(&family, &lambda, 500, rng.gen()).unwrap();
            assert!(report.pass, "lambda={lambda} inside the s={s} window failed: {report:?}");
            assert!(report.tolerance > 0.0, "inside lambda took the search branch");
        }
        let outside = [
            &hi + &Rational::new(1, 1000),
            &hi + &Rational::new(3, 1000),
            &hi + &Rational::new(1, 100),
            &lo - &Rational::new(1, 1000),
            &lo - &Rational::new(1, 100),
        ];
        for lambda in outside {
            let report = finite_difference_convexity(&family, &lambda, 50, 5).unwrap();
            assert!(
                report.pass,
                "no violating pair found at lambda={lambda} outside the s={s} window"
            );
            assert!(report.tolerance < 0.0, "outside lambda took the probe branch");
        }
    }
}

/// A larger target exponent can only shrink the embeddable lambda range, and
/// the certified endpoints respect that ordering exactly.
#[test]
fn embedding_thresholds_shrink_as_the_exponent_grows() {
    let quad = PerturbedNormFamily::new(3, 2).unwrap();
    let q_half = lambda_threshold(&quad, &Rational::new(1, 2)).unwrap();
    let q_one = lambda_threshold(&quad, &Rational::int(1)).unwrap();
    assert_eq!(q_half.threshold.as_rational(), Some(&Rational::new(1, 14)));
    assert!(q_one.threshold < q_half.threshold);

    let quartic = PerturbedNormFamily::new(3, 4).unwrap();
    let r_quarter = lambda_threshold(&quartic, &Rational::new(1, 4)).unwrap();
    let r_half = lambda_threshold(&quartic, &Rational::new(1, 2)).unwrap();
    let r_three_quarters = lambda_threshold(&quartic, &Rational::new(3, 4)).unwrap();
    assert_eq!(r_quarter.threshold.as_rational(), Some(&Rational::new(1, 26)));
    assert!(r_half.threshold < r_quarter.threshold);
    assert!(r_three_quarters.threshold < r_half.threshold);
}
