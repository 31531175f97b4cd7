//! Spherical densities for N_lambda^q, embeddability decisions, and exact
//! lambda thresholds.
//!
//! On the unit sphere, N_lambda^q(x) = (1 + lambda f(u))^{sq} with u = x_n^2,
//! and each power u^j equals prefactor * INT |(x,xi)|^q P_j(xi_n^2) dxi by the
//! moment rows. Substituting row by row turns the expansion into a single
//! density b(xi_n^2, lambda) against the common Gamma-ratio prefactor. The
//! space embeds in L_q exactly when b is non-negative, so every decision and
//! threshold below reduces to Sturm runs on polynomial slices; the prefactor
//! never enters a sign decision.

use serde::{Deserialize, Serialize};

use crate::exact::algebraic::{rational_above, rational_below, rational_between};
use crate::exact::{
    sturm_nonneg, BivariatePoly, ExactValue, GammaRatioConstant,
    Rational, SturmOutcome, UniPoly,
};
use crate::moments::derive_moment_identity;
use crate::norms::{lambda_window_candidates, LambdaBound, NormDecision, PerturbedNormFamily};
use crate::{Error, Result};

/// Exact representation N_lambda^q(x) = prefactor * INT |(x,xi)|^q
/// b_poly(xi_n^2, lambda) dxi for x on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRepresentation {
    pub n: u32,
    pub q: Rational,
    pub family: PerturbedNormFamily,
    pub prefactor: GammaRatioConstant,
    /// Main variable u = xi_n^2, coefficients polynomial in lambda.
    pub b_poly: BivariatePoly,
}

impl DensityRepresentation {
    /// The density at a fixed lambda, as a polynomial in u.
    pub fn slice(&self, lambda: &Rational) -> UniPoly {
        self.b_poly.eval_lambda(lambda)
    }
}

/// Embeddability decision at a single (q, lambda), with the density slice it
/// ran on and the Sturm evidence (minimum location or negativity witness).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedDecision {
    pub q: Rational,
    pub lambda: Rational,
    pub embeds: bool,
    pub density: UniPoly,
    pub outcome: SturmOutcome,
}

/// The exact supremum of lambda for which the density stays non-negative,
/// together with which constraint stops it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCertificate {
    pub q: Rational,
    pub threshold: ExactValue,
    /// "b(1)=0", "b(0)=0", "interior minimum contact", or "convexity-limited".
    pub binding_condition: String,
    /// Set when the threshold coincides with the convexity endpoint, so the
    /// embedding window is cut by norm validity rather than by the density.
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_check: Option<String>,
}

/// Constants of the quadratic family (s=2) in dimension n: both thresholds,
/// the separator between them, and the convexity endpoint, with the exact
/// ordering chain certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFamilyReport {
    pub n: u32,
    /// q=1 threshold alpha_n, the lower edge of the counterexample window.
    pub q1_certificate: ThresholdCertificate,
    /// q=1/2 threshold 1/(6n-4), the upper edge of the counterexample window.
    pub q_half_certificate: ThresholdCertificate,
    /// 1/(6n-2), sitting strictly between the two thresholds.
    pub separator: Rational,
    pub convexity_endpoint: ExactValue,
    /// alpha_n < 1/(6n-2) < 1/(6n-4) <= convexity endpoint, all exact.
    pub chain_ok: bool,
}

impl QuadraticFamilyReport {
    pub fn alpha(&self) -> &ExactValue {
        &self.q1_certificate.threshold
    }

    pub fn half_threshold(&self) -> &ExactValue {
        &self.q_half_certificate.threshold
    }
}

/// Constants of the quartic family (s=4, n=3): convexity endpoint, thresholds
/// for q = 1/4, 1/2 (and 3/4 as an extra), and the consistency flags against
/// the conservative q=1/2 bound 1/28.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuarticFamilyReport {
    pub convexity_endpoint: ExactValue,
    pub quarter_certificate: ThresholdCertificate,
    pub half_certificate: ThresholdCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_quarter_certificate: Option<ThresholdCertificate>,
    /// A sufficient (not tight) bound for q=1/2 non-embeddability.
    pub conservative_half_bound: Rational,
    /// Engine threshold <= 1/28: the conservative bound never claims too much.
    pub half_bound_consistent: bool,
    /// Engine threshold == 1/28 exactly (it is not; the true value is smaller).
    pub half_bound_tight: bool,
    /// q=1/2 threshold < q=1/4 threshold, so the separating window is nonempty.
    pub window_nonempty: bool,
}

/// Everything needed to exhibit one space that embeds in L_{1/2} but not in
/// L_1: lambda choice, norm certificate, and both embedding decisions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleBundle {
    pub lambda: CounterexampleLambda,
    pub norm: NormDecision,
    pub embed: EmbedDecision,
    pub non_embed: EmbedDecision,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleLambda {
    pub n: u32,
    pub value: Rational,
}

/// Builds the spherical density of N_lambda^q from the power expansion and the
/// moment rows. Requires s*q to be a positive integer and q not an even
/// integer.
pub fn density(family: &PerturbedNormFamily, q: &Rational) -> Result<DensityRepresentation> {
    let expansion = family.expand_power(q)?;
    let deg = expansion.degree().unwrap_or(0);
    let identity = derive_moment_identity(family.n(), q, 2 * deg as u32)?;

    let prefactor = identity.entries[0].prefactor.clone();
    let mut b_poly = BivariatePoly::zero();
    for (j, e_j) in expansion.coeffs().iter().enumerate() {
        let row = identity.row_for_power(2 * j as u32).ok_or_else(|| {
            Error::Internal(format!("missing moment row for power {}", 2 * j))
        })?;
        if row.prefactor != prefactor {
            return Err(Error::Internal(
                "moment rows do not share a common prefactor".to_string(),
            ));
        }
        // u^j on the sphere contributes e_j(lambda) * P_j(v) to the density.
        b_poly = b_poly + BivariatePoly::from_main(&row.polynomial).mul_lambda(e_j);
    }

    let at_zero = b_poly.eval_lambda(&Rational::zero());
    if at_zero.degree() != Some(0) || !at_zero.coeff(0).is_positive() {
        return Err(Error::Internal(
            "density at lambda = 0 is not a positive constant".to_string(),
        ));
    }

    Ok(DensityRepresentation {
        n: family.n(),
        q: q.clone(),
        family: family.clone(),
        prefactor,
        b_poly,
    })
}

/// Decides isometric embeddability of (R^n, N_lambda) into L_q by the sign of
/// the density. Errors if lambda is outside the certified norm window, where
/// the question is ill-posed.
pub fn embeds(family: &PerturbedNormFamily, q: &Rational, lambda: &Rational) -> Result<EmbedDecision> {
    let norm = family.is_norm(lambda)?;
    if !norm.is_norm {
        return Err(Error::NotANorm(format!(
            "lambda = {lambda} is outside the certified norm window"
        )));
    }
    let repr = density(family, q)?;
    let slice = repr.slice(lambda);
    let outcome = sturm_nonneg(&slice, &Rational::zero(), &Rational::one())?;
    let embeds = !matches!(outcome, SturmOutcome::Negative { .. });
    Ok(EmbedDecision { q: q.clone(), lambda: lambda.clone(), embeds, density: slice, outcome })
}

fn sign_at(p: &UniPoly, v: &ExactValue) -> i32 {
    match v {
        ExactValue::Rat(r) => {
            let val = p.eval(r);
            if val.is_zero() {
                0
            } else if val.is_positive() {
                1
            } else {
                -1
            }
        }
        ExactValue::Alg(a) => a.sign_of_poly(p),
    }
}

/// The largest lambda_bar such that the density stays non-negative on [0,1]
/// for every lambda in [0, lambda_bar], scanned over the norm-validity window.
///
/// Candidate break values are where the minimum of the density can cross zero
/// (endpoint slices, interior double contact, degree or content collapse);
/// between consecutive candidates the answer is constant, so one Sturm run per
/// gap settles the whole window.
pub fn lambda_threshold(family: &PerturbedNormFamily, q: &Rational) -> Result<ThresholdCertificate> {
    let repr = density(family, q)?;
    let convexity = family.convexity_interval()?;
    let cap = match &convexity.lambda_interval.hi {
        LambdaBound::Finite { value, .. } => Some(value.clone()),
        LambdaBound::Unbounded => None,
    };

    let b = &repr.b_poly;
    let nonneg_at = |lambda: &Rational| -> Result<bool> {
        Ok(!matches!(
            sturm_nonneg(&b.eval_lambda(lambda), &Rational::zero(), &Rational::one())?,
            SturmOutcome::Negative { .. }
        ))
    };

    let zero = ExactValue::Rat(Rational::zero());
    let mut candidates: Vec<ExactValue> = lambda_window_candidates(b)?
        .into_iter()
        .filter(|c| *c > zero && cap.as_ref().is_none_or(|cap| c < cap))
        .collect();
    if let Some(cap) = &cap {
        candidates.push(cap.clone());
    }

    let mut threshold = None;
    let mut prev = zero;
    for c in &candidates {
        let sample = rational_between(&prev, c);
        if !nonneg_at(&sample)? {
            threshold = Some(prev.clone());
            break;
        }
        prev = c.clone();
    }
    let threshold = match threshold {
        Some(t) => t,
        None => {
            if cap.is_none() {
                // No convexity cap and no crossing found: check the tail.
                if nonneg_at(&rational_above(&prev))? {
                    return Err(Error::Unsupported(
                        "density is non-negative for unboundedly large lambda; no finite threshold"
                            .to_string(),
                    ));
                }
            }
            prev
        }
    };

    let degenerate = cap.as_ref() == Some(&threshold);
    let b1 = b.eval_main(&Rational::one());
    let b0 = b.eval_main(&Rational::zero());
    let binding_condition = if sign_at(&b1, &threshold) == 0 {
        "b(1)=0".to_string()
    } else if sign_at(&b0, &threshold) == 0 {
        "b(0)=0".to_string()
    } else if degenerate {
        "convexity-limited".to_string()
    } else {
        "interior minimum contact".to_string()
    };

    // Interior spot checks: the density must be non-negative strictly below
    // the threshold, sampled at ten rationals.
    let below = rational_below(&threshold);
    if below.is_positive() {
        for i in 1..=10 {
            let sample = &below * Rational::new(i, 10);
            if !nonneg_at(&sample)? {
                return Err(Error::Internal(format!(
                    "density goes negative at lambda = {sample}, below the computed threshold"
                )));
            }
        }
    }

    Ok(ThresholdCertificate {
        q: q.clone(),
        threshold,
        binding_condition,
        degenerate,
        window_check: None,
    })
}

/// Thresholds and ordering chain for the s=2 family in dimension n; errors
/// with a degenerate-window condition at n=2 where the q=1 threshold collides
/// with the convexity endpoint.
pub fn quadratic_family_report(n: u32) -> Result<QuadraticFamilyReport> {
    let family = PerturbedNormFamily::new(n, 2)?;
    let q1 = lambda_threshold(&family, &Rational::one())?;
    let q_half = lambda_threshold(&family, &Rational::new(1, 2))?;
    if q1.degenerate || q_half.degenerate {
        return Err(Error::DegenerateWindow(format!(
            "at n = {n} an embedding threshold coincides with the convexity endpoint; \
             the counterexample window is empty"
        )));
    }
    let convexity = family.convexity_interval()?;
    let convexity_endpoint = match convexity.lambda_interval.hi {
        LambdaBound::Finite { value, .. } => value,
        LambdaBound::Unbounded => {
            return Err(Error::Internal("convexity window is unbounded".to_string()))
        }
    };
    let separator = Rational::new(1, 6 * n as i64 - 2);
    let chain_ok = q1.threshold.cmp_rational(&separator) == std::cmp::Ordering::Less
        && q_half
            .threshold
            .cmp_rational(&separator)
            .eq(&std::cmp::Ordering::Greater)
        && q_half.threshold <= convexity_endpoint;
    Ok(QuadraticFamilyReport {
        n,
        q1_certificate: q1,
        q_half_certificate: q_half,
        separator,
        convexity_endpoint,
        chain_ok,
    })
}

/// Thresholds and window flags for the s=4 family at n=3, including the
/// consistency comparison with the conservative q=1/2 bound 1/28.
pub fn quartic_family_report() -> Result<QuarticFamilyReport> {
    let family = PerturbedNormFamily::new(3, 4)?;
    let convexity = family.convexity_interval()?;
    let convexity_endpoint = match convexity.lambda_interval.hi {
        LambdaBound::Finite { value, .. } => value,
        LambdaBound::Unbounded => {
            return Err(Error::Internal("convexity window is unbounded".to_string()))
        }
    };
    let quarter = lambda_threshold(&family, &Rational::new(1, 4))?;
    let mut half = lambda_threshold(&family, &Rational::new(1, 2))?;
    let three_quarter = lambda_threshold(&family, &Rational::new(3, 4))?;

    let conservative_half_bound = Rational::new(1, 28);
    let half_cmp = half.threshold.cmp_rational(&conservative_half_bound);
    let half_bound_consistent = half_cmp != std::cmp::Ordering::Greater;
    let half_bound_tight = half_cmp == std::cmp::Ordering::Equal;
    half.window_check = Some(format!(
        "threshold {} vs conservative bound 1/28: {}",
        half.threshold.decimal_string(),
        if half_bound_tight {
            "equal"
        } else if half_bound_consistent {
            "strictly below (the bound is valid but not tight)"
        } else {
            "above (inconsistent)"
        }
    ));
    let window_nonempty = half.threshold < quarter.threshold;

    Ok(QuarticFamilyReport {
        convexity_endpoint,
        quarter_certificate: quarter,
        half_certificate: half,
        three_quarter_certificate: Some(three_quarter),
        conservative_half_bound,
        half_bound_consistent,
        half_bound_tight,
        window_nonempty,
    })
}

/// Certificate bundle for lambda = 1/(6n-4): a norm that embeds in L_{1/2}
/// (density minimum exactly 0 at the pole) but not in L_1 (negative pole
/// value).
pub fn counterexample_bundle(n: u32) -> Result<CounterexampleBundle> {
    if n == 2 {
        return Err(Error::DegenerateWindow(
            "at n = 2 the counterexample window is empty: the q=1 threshold equals the \
             convexity endpoint 1/11"
                .to_string(),
        ));
    }
    let family = PerturbedNormFamily::new(n, 2)?;
    let lambda = Rational::new(1, 6 * n as i64 - 4);
    let norm = family.is_norm(&lambda)?;
    let embed = embeds(&family, &Rational::new(1, 2), &lambda)?;
    let non_embed = embeds(&family, &Rational::one(), &lambda)?;
    Ok(CounterexampleBundle {
        lambda: CounterexampleLambda { n, value: lambda },
        norm,
        embed,
        non_embed,
    })
}
