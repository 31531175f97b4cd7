//! Finite-difference cross-check of the symbolic convexity window.
//!
//! Inside the certified window, random midpoint probes must never beat
//! convexity by more than float noise. Outside it, the Sturm witness pins the
//! sphere direction where the tangential Hessian goes negative, and a directed
//! step sweep around that direction is expected to exhibit a concrete midpoint
//! violation. The outside branch flips the report's sign convention: pass
//! means a violation was found, confirming the symbolic verdict.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{Rational, SturmOutcome};
use crate::norms::PerturbedNormFamily;
use crate::validate::quadrature::gaussian_vector;
use crate::validate::report::ValidationReport;
use crate::validate::CONVEXITY_SLACK;
use crate::{Error, Result};

pub fn finite_difference_convexity(
    family: &PerturbedNormFamily,
    lambda: &Rational,
    samples: u32,
    seed: u64,
) -> Result<ValidationReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("sample count must be positive".to_string()));
    }
    let cert = family.convexity_interval()?;
    let inside = cert.lambda_interval.contains(lambda);
    let evaluator = family.evaluator_unchecked(lambda);
    let n = family.n() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let test = format!(
        "finite-difference convexity n={} s={} lambda={}",
        family.n(),
        family.s(),
        lambda
    );

    // Relative midpoint excess; positive means convexity failed on this pair.
    let excess = |x: &[f64], y: &[f64]| -> f64 {
        let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
        let avg = 0.5 * (evaluator.value(x) + evaluator.value(y));
        if avg <= 0.0 {
            return 0.0;
        }
        (evaluator.value(&mid) - avg) / avg
    };

    if inside {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = gaussian_vector(&mut rng, n);
            let y = gaussian_vector(&mut rng, n);
            worst = worst.max(excess(&x, &y));
        }
        return Ok(ValidationReport::measured(test, samples as u64, worst, CONVEXITY_SLACK, seed)
            .with_note("inside certified window: random midpoint probes must stay convex"));
    }

    // Anchor the search at the Sturm witness direction: t is the squared last
    // coordinate on the unit circle in the (x_1, x_n) plane.
    let decision = family.is_norm(lambda)?;
    let t_star = match &decision.tangential {
        SturmOutcome::Negative { witness, .. } => witness.to_f64().clamp(0.0, 1.0),
        _ => 0.0,
    };
    let point_at = |t: f64| -> (Vec<f64>, Vec<f64>) {
        let (c, s) = ((1.0 - t).sqrt(), t.sqrt());
        let mut p = vec![0.0; n];
        let mut w = vec![0.0; n];
        p[0] = c;
        p[n - 1] = s;
        w[0] = -s;
        w[n - 1] = c;
        (p, w)
    };

    let mut best_excess = f64::NEG_INFINITY;
    let mut best_witness = (t_star, 0.0);
    let anchors: Vec<f64> = [0.0, -0.002, 0.002, -0.01, 0.01, -0.05, 0.05]
        .iter()
        .map(|d| (t_star + d).clamp(0.0, 1.0))
        .collect();
    for &t in &anchors {
        let (p, w) = point_at(t);
        for k in 0..60 {
            let h = 1e-4 * (0.8f64 / 1e-4).powf(k as f64 / 59.0);
            let plus: Vec<f64> = p.iter().zip(&w).map(|(a, b)| a + h * b).collect();
            let minus: Vec<f64> = p.iter().zip(&w).map(|(a, b)| a - h * b).collect();
            let e = excess(&plus, &minus);
            if e > best_excess {
                best_excess = e;
                best_witness = (t, h);
            }
        }
    }
    // Random jitter around the anchor covers violations the planar sweep
    // parameterization cannot reach.
    let (p_star, _) = point_at(t_star);
    for _ in 0..samples {
        let g1 = gaussian_vector(&mut rng, n);
        let g2 = gaussian_vector(&mut rng, n);
        let x: Vec<f64> = p_star.iter().zip(&g1).map(|(a, b)| a + 0.05 * b).collect();
        let y: Vec<f64> = p_star.iter().zip(&g2).map(|(a, b)| a + 0.05 * b).collect();
        let e = excess(&x, &y);
        if e > best_excess {
            best_excess = e;
            let h = x
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                / 2.0;
            best_witness = (t_star, h);
        }
    }

    Ok(ValidationReport::measured(
        test,
        samples as u64 + 60 * anchors.len() as u64,
        -best_excess,
        -CONVEXITY_SLACK,
        seed,
    )
    .with_note(format!(
        "outside certified window: pass means a midpoint violation was exhibited (anchor t = {t_star:.4})"
    ))
    .with_witness(vec![best_witness.0, best_witness.1]))
}
