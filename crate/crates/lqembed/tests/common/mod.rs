//! Exact-sampling oracle shared by the property and acceptance suites.
//!
//! The oracle re-decides nonnegativity of a rational-coefficient polynomial on
//! [0, 1] without Sturm chains: clear denominators, then evaluate the integer
//! polynomial at every k/STEPS in i128. That is a complete check at the sample
//! points and a one-sided check in between, which is exactly what is needed to
//! cross-examine the symbolic verdicts.

use lqembed::exact::{sturm_nonneg, Rational, SturmOutcome, UniPoly};

/// Sample count for the scan; 10^4 keeps every term inside i128 for the
/// coefficient ranges used by the generators (degree <= 6, |numerator| <= 160,
/// denominator <= 16).
pub const STEPS: i128 = 10_000;

/// A polynomial with fraction coefficients kept in raw integer form so the
/// oracle can evaluate it without any rational arithmetic.
#[derive(Debug, Clone)]
pub struct IntPoly {
    /// Coefficient i is numer/denom for u^i; denom >= 1.
    pub coeffs: Vec<(i64, i64)>,
}

impl IntPoly {
    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&(p, q)| Rational::new(p, q)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&(p, _)| p == 0)
    }

    /// Minimum of L * STEPS^deg * p(k/STEPS) over k = 0..=STEPS, where L is the
    /// common denominator. The scale factor is positive, so the sign of the
    /// returned value is the sign of p at the argmin.
    pub fn min_scaled_sample(&self) -> (i128, i128) {
        let deg = self.coeffs.len() as u32 - 1;
        let common: i128 = self.coeffs.iter().fold(1i128, |acc, &(_, q)| lcm(acc, q as i128));
        // Integer coefficient for u^i after multiplying by L * STEPS^deg:
        // a_i = numer_i * (L / denom_i) * STEPS^(deg - i).
        let scaled: Vec<i128> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| {
                p as i128 * (common / q as i128) * STEPS.pow(deg - i as u32)
            })
            .collect();
        let mut best = (0i128, eval_int(&scaled, 0));
        for k in 1..=STEPS {
            let v = eval_int(&scaled, k);
            if v < best.1 {
                best = (k, v);
            }
        }
        best
    }
}

fn eval_int(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c)
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Runs the symbolic decision on [0, 1] and checks it against the exact scan.
/// Panics with a description of the disagreement, if any.
pub fn check_sturm_against_sampling(poly: &IntPoly) {
    let p = poly.to_unipoly();
    let outcome = sturm_nonneg(&p, &Rational::int(0), &Rational::int(1))
        .expect("nonnegativity decision failed");
    let (argmin, min_scaled) = poly.min_scaled_sample();
    match &outcome {
        SturmOutcome::IdenticallyZero => {
            assert!(poly.is_zero(), "zero verdict for nonzero polynomial {p}");
        }
        SturmOutcome::StrictlyPositive { .. } => {
            assert!(
                min_scaled > 0,
                "positive verdict but p({argmin}/{STEPS}) <= 0 for {p}"
            );
        }
        SturmOutcome::TouchesZero { zeros } => {
            assert!(
                min_scaled >= 0,
                "touches-zero verdict but p({argmin}/{STEPS}) < 0 for {p}"
            );
            assert!(!zeros.is_empty(), "touches-zero verdict with no isolated zeros for {p}");
            for z in zeros {
                assert!(z.lo >= Rational::int(0) && z.hi <= Rational::int(1));
            }
        }
        SturmOutcome::Negative { witness, value } => {
            // Re-evaluate at the witness from scratch; the verdict must carry
            // the exact value and it must be negative.
            let recomputed = p.eval(witness);
            assert!(recomputed.is_negative(), "witness {witness} does not refute {p}");
            assert_eq!(&recomputed, value, "stored witness value is not p(witness) for {p}");
        }
    }
    if min_scaled < 0 {
        assert!(
            matches!(outcome, SturmOutcome::Negative { .. }),
            "p({argmin}/{STEPS}) < 0 but verdict for {p} was not negative"
        );
    }
}
