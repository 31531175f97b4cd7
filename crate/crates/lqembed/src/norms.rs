//! The perturbed norm family N_lambda(x) = |x|_2 (1 + lambda f(x_n^2/|x|_2^2))^s
//! and its exact convexity certification.
//!
//! Convexity of the unit ball reduces to a two-variable question: with
//! g(x, y) = (x^2+y^2)^{1/2} (1 + lambda f(y^2/(x^2+y^2)))^s, the tangential
//! Hessian form a^2 g_xx + 2ab g_xy + b^2 g_yy factors as a positive radial
//! power times (ay - bx)^2 times a polynomial, because degree-1 homogeneity
//! forces the radial direction into the Hessian kernel. The engine computes the
//! second derivatives symbolically, divides out the rank-one factor, and hands
//! the remaining quadrant polynomial to Sturm machinery on the circle slice
//! x^2 = 1-t, y^2 = t. The reduction from n variables to two is assumed valid
//! for axisymmetric profiles and is not re-derived here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::algebraic::{rational_above, rational_below, rational_between};
use crate::exact::{
    exact_real_roots, sturm_nonneg, BivariatePoly, ExactValue, Rational, SturmOutcome, UniPoly,
};
use crate::{Error, Result};

/// The family N_lambda(x) = |x|_2 (1 + lambda f(x_n^2/|x|_2^2))^s in dimension n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct PerturbedNormFamily {
    n: u32,
    s: u32,
    f: UniPoly,
}

/// Serialization shadow; deserialization re-runs the constructor checks.
#[derive(Serialize, Deserialize, Clone)]
struct FamilyRepr {
    n: u32,
    s: u32,
    f: UniPoly,
}

impl From<PerturbedNormFamily> for FamilyRepr {
    fn from(v: PerturbedNormFamily) -> Self {
        FamilyRepr { n: v.n, s: v.s, f: v.f }
    }
}

impl TryFrom<FamilyRepr> for PerturbedNormFamily {
    type Error = Error;

    fn try_from(v: FamilyRepr) -> Result<Self> {
        PerturbedNormFamily::with_profile(v.n, v.s, v.f)
    }
}

/// An exact norm value scale * sqrt(radicand); the square root of the Euclidean
/// part stays symbolic so homogeneity and power identities can be checked in
/// rational arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormValue {
    scale: Rational,
    radicand: Rational,
}

impl NormValue {
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    /// The exact square of the value.
    pub fn squared(&self) -> Rational {
        &self.scale * &self.scale * &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        self.scale.to_f64() * self.radicand.to_f64().sqrt()
    }
}

/// Fixed-lambda evaluator for the floating-point harness; the exact positivity
/// check happens once at construction, the per-point path is pure f64.
#[derive(Debug, Clone)]
pub struct NormEvaluator {
    profile: Vec<f64>,
    s: u32,
    n: usize,
}

impl NormEvaluator {
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return 0.0;
        }
        let last = x[x.len() - 1];
        let u = last * last / r2;
        let mut p = 0.0;
        for c in self.profile.iter().rev() {
            p = p * u + c;
        }
        r2.sqrt() * p.powi(self.s as i32)
    }
}

/// The tangential Hessian data: the quadrant polynomial by (x, y) bidegree, its
/// circle restriction, and the radial exponent that was factored off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentialForm {
    /// Coefficient of x^{2(sd-i)} y^{2i} at index i, as a polynomial in lambda.
    pub quadrant_coeffs: Vec<UniPoly>,
    /// The quadrant polynomial on the unit circle: main variable t = y^2.
    pub circle_poly: BivariatePoly,
    /// Exponent of x^2+y^2 multiplying (ay-bx)^2 times the quadrant polynomial.
    pub radial_exponent: Rational,
}

/// One side of a certified lambda window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaBound {
    Finite { value: ExactValue, approx: String },
    Unbounded,
}

impl LambdaBound {
    pub fn finite(value: ExactValue) -> Self {
        let approx = value.decimal_string();
        LambdaBound::Finite { value, approx }
    }

    pub fn value(&self) -> Option<&ExactValue> {
        match self {
            LambdaBound::Finite { value, .. } => Some(value),
            LambdaBound::Unbounded => None,
        }
    }
}

/// A closed lambda interval, possibly unbounded on either side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaInterval {
    pub lo: LambdaBound,
    pub hi: LambdaBound,
}

impl LambdaInterval {
    /// Closed-interval membership.
    pub fn contains(&self, lambda: &Rational) -> bool {
        let above_lo = match &self.lo {
            LambdaBound::Unbounded => true,
            LambdaBound::Finite { value, .. } => {
                value.cmp_rational(lambda) != std::cmp::Ordering::Greater
            }
        };
        let below_hi = match &self.hi {
            LambdaBound::Unbounded => true,
            LambdaBound::Finite { value, .. } => {
                value.cmp_rational(lambda) != std::cmp::Ordering::Less
            }
        };
        above_lo && below_hi
    }
}

/// Certified maximal lambda window on which the family stays convex, with the
/// quadrant polynomial the certification ran on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCertificate {
    pub lambda_interval: LambdaInterval,
    pub quadrant_poly: BivariatePoly,
    pub factored_note: String,
}

/// Norm decision at a single lambda, with the Sturm evidence for both the
/// tangential form and the profile positivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormDecision {
    pub lambda: Rational,
    pub is_norm: bool,
    pub tangential: SturmOutcome,
    pub profile: SturmOutcome,
}

impl PerturbedNormFamily {
    /// The default profile f(u) = 1 - 3u.
    pub fn new(n: u32, s: u32) -> Result<Self> {
        Self::with_profile(n, s, UniPoly::from_ints(&[1, -3]))
    }

    pub fn with_profile(n: u32, s: u32, f: UniPoly) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "ambient dimension must be at least 2, got {n}"
            )));
        }
        if s < 1 {
            return Err(Error::InvalidInput("power s must be at least 1".to_string()));
        }
        Ok(PerturbedNormFamily { n, s, f })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn profile(&self) -> &UniPoly {
        &self.f
    }

    /// 1 + lambda f(u) as a polynomial in u.
    pub fn profile_at(&self, lambda: &Rational) -> UniPoly {
        &self.f.scale(lambda) + &UniPoly::one()
    }

    fn require_profile_positive(&self, lambda: &Rational) -> Result<()> {
        match sturm_nonneg(&self.profile_at(lambda), &Rational::zero(), &Rational::one())? {
            SturmOutcome::StrictlyPositive { .. } => Ok(()),
            _ => Err(Error::InvalidInput(format!(
                "profile 1 + lambda f vanishes or goes negative on [0,1] at lambda = {lambda}"
            ))),
        }
    }

    /// Exact value of N_lambda at a rational point.
    pub fn evaluate_exact(&self, lambda: &Rational, x: &[Rational]) -> Result<NormValue> {
        if x.len() != self.n as usize {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, family dimension is {}",
                x.len(),
                self.n
            )));
        }
        self.require_profile_positive(lambda)?;
        let r2: Rational = x.iter().map(|c| c * c).sum();
        if r2.is_zero() {
            return Ok(NormValue { scale: Rational::zero(), radicand: Rational::zero() });
        }
        let last = &x[x.len() - 1];
        let u = last * last / &r2;
        let p = self.profile_at(lambda).eval(&u);
        Ok(NormValue { scale: p.pow(self.s as i32), radicand: r2 })
    }

    /// Floating-point evaluator for a fixed lambda; errors if the profile is
    /// not strictly positive on [0,1].
    pub fn evaluator(&self, lambda: &Rational) -> Result<NormEvaluator> {
        self.require_profile_positive(lambda)?;
        Ok(self.evaluator_unchecked(lambda))
    }

    /// Evaluator without the positivity gate, for numeric probes that step
    /// outside the valid window on purpose (the power s keeps values real).
    pub(crate) fn evaluator_unchecked(&self, lambda: &Rational) -> NormEvaluator {
        NormEvaluator {
            profile: self.profile_at(lambda).coeffs().iter().map(Rational::to_f64).collect(),
            s: self.s,
            n: self.n as usize,
        }
    }

    /// (1 + lambda f(u))^{s q} expanded exactly; requires s*q to be a positive
    /// integer so the sphere restriction of N^q is polynomial.
    pub fn expand_power(&self, q: &Rational) -> Result<BivariatePoly> {
        let sq = Rational::int(self.s as i64) * q;
        if !sq.is_integer() || !sq.is_positive() {
            return Err(Error::Unsupported(format!(
                "s*q = {sq} is not a positive integer; the power expansion is not polynomial"
            )));
        }
        let m = sq.to_i64().ok_or_else(|| {
            Error::InvalidInput(format!("s*q = {sq} is out of range"))
        })? as u32;
        // 1 + lambda f(u), as a bivariate polynomial in (u, lambda).
        let mut base = vec![UniPoly::new(vec![Rational::one(), self.f.coeff(0)])];
        for i in 1..self.f.coeffs().len() {
            base.push(UniPoly::new(vec![Rational::zero(), self.f.coeff(i)]));
        }
        Ok(BivariatePoly::new(base).pow(m))
    }

    /// Symbolic tangential Hessian of the two-variable reduction, with the
    /// rank-one radial factor divided out.
    pub fn hessian_tangential_form(&self) -> Result<TangentialForm> {
        let d = self.f.degree().unwrap_or(0) as u32;
        let sd = self.s * d;
        let sigma = Rational::new(1, 2) - Rational::int(sd as i64);
        let r = TriPoly::monomial(2, 0, 0, Rational::one())
            .add(&TriPoly::monomial(0, 2, 0, Rational::one()));

        // M = R^d + lambda sum_i f_i y^{2i} R^{d-i}; then g = R^sigma M^s.
        let mut m = r.pow(d);
        for (i, fi) in self.f.coeffs().iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            let term = TriPoly::monomial(0, 2 * i as u32, 1, fi.clone()).mul(&r.pow(d - i as u32));
            m = m.add(&term);
        }
        let t = m.pow(self.s);

        // Each derivative keeps the single-radical shape R^alpha * poly.
        let dx = |alpha: &Rational, p: &TriPoly| -> (Rational, TriPoly) {
            let lead = r.mul(&p.deriv(0));
            let tail = TriPoly::monomial(1, 0, 0, Rational::int(2) * alpha).mul(p);
            (alpha - Rational::one(), lead.add(&tail))
        };
        let dy = |alpha: &Rational, p: &TriPoly| -> (Rational, TriPoly) {
            let lead = r.mul(&p.deriv(1));
            let tail = TriPoly::monomial(0, 1, 0, Rational::int(2) * alpha).mul(p);
            (alpha - Rational::one(), lead.add(&tail))
        };

        let (a1, p1) = dx(&sigma, &t);
        let (radial_exponent, pxx) = dx(&a1, &p1);
        let (_, pxy) = dy(&a1, &p1);
        let (b1, q1) = dy(&sigma, &t);
        let (_, pyy) = dy(&b1, &q1);

        // Homogeneity forces Pxx = y^2 H, Pxy = -xy H, Pyy = x^2 H.
        let h = pxx.div_mono(0, 2).map_err(|_| {
            Error::Internal("homogeneity violated: g_xx is not divisible by y^2".to_string())
        })?;
        let minus_xy_h = TriPoly::monomial(1, 1, 0, -Rational::one()).mul(&h);
        let xx_h = TriPoly::monomial(2, 0, 0, Rational::one()).mul(&h);
        if pxy != minus_xy_h || pyy != xx_h {
            return Err(Error::Internal(
                "homogeneity violated: mixed and tangential second derivatives disagree with the rank-one factorization".to_string(),
            ));
        }

        // H is even and (x,y)-homogeneous of degree 2sd; bucket by y-power.
        let mut quadrant_coeffs = vec![UniPoly::zero(); sd as usize + 1];
        for ((xp, yp, lp), c) in h.terms() {
            if xp % 2 != 0 || yp % 2 != 0 || xp + yp != 2 * sd {
                return Err(Error::Internal(format!(
                    "quadrant polynomial has an impossible monomial x^{xp} y^{yp}"
                )));
            }
            let i = (yp / 2) as usize;
            let mut coeffs = quadrant_coeffs[i].coeffs().to_vec();
            if coeffs.len() <= *lp as usize {
                coeffs.resize(*lp as usize + 1, Rational::zero());
            }
            coeffs[*lp as usize] = &coeffs[*lp as usize] + c;
            quadrant_coeffs[i] = UniPoly::new(coeffs);
        }

        // Circle slice x^2 = 1-t, y^2 = t.
        let one_minus_t = BivariatePoly::from_main(&UniPoly::from_ints(&[1, -1]));
        let t_var = BivariatePoly::from_main(&UniPoly::from_ints(&[0, 1]));
        let mut circle = BivariatePoly::zero();
        for (i, qc) in quadrant_coeffs.iter().enumerate() {
            let geom = one_minus_t.pow((sd as usize - i) as u32) * t_var.pow(i as u32);
            circle = circle + geom.mul_lambda(qc);
        }

        Ok(TangentialForm { quadrant_coeffs, circle_poly: circle, radial_exponent })
    }

    /// Maximal closed lambda interval around 0 on which the tangential form is
    /// non-negative in every direction.
    pub fn convexity_interval(&self) -> Result<ConvexityCertificate> {
        let form = self.hessian_tangential_form()?;
        let d = &form.circle_poly;
        let note = format!(
            "rank-one factor (a*y - b*x)^2 extracted via degree-1 homogeneity; \
             radial prefactor (x^2+y^2)^({}); two-variable reduction assumed valid \
             for axisymmetric profiles",
            form.radial_exponent
        );

        let nonneg_at = |lambda: &Rational| -> Result<bool> {
            Ok(!matches!(
                sturm_nonneg(&d.eval_lambda(lambda), &Rational::zero(), &Rational::one())?,
                SturmOutcome::Negative { .. }
            ))
        };
        if !nonneg_at(&Rational::zero())? {
            return Err(Error::Internal(
                "tangential form is negative at lambda = 0".to_string(),
            ));
        }

        let candidates = lambda_window_candidates(d)?;
        let zero = ExactValue::Rat(Rational::zero());

        // Walk outward from 0; the first failing gap stops the window at the
        // preceding candidate (closed by continuity of the minimum over t).
        let mut hi = LambdaBound::Unbounded;
        let mut prev = zero.clone();
        let mut stopped = false;
        for c in candidates.iter().filter(|c| **c > zero) {
            let sample = rational_between(&prev, c);
            if !nonneg_at(&sample)? {
                hi = LambdaBound::finite(prev.clone());
                stopped = true;
                break;
            }
            prev = c.clone();
        }
        if !stopped && !nonneg_at(&rational_above(&prev))? {
            hi = LambdaBound::finite(prev);
        }

        let mut lo = LambdaBound::Unbounded;
        let mut prev = zero.clone();
        let mut stopped = false;
        for c in candidates.iter().rev().filter(|c| **c < zero) {
            let sample = rational_between(c, &prev);
            if !nonneg_at(&sample)? {
                lo = LambdaBound::finite(prev.clone());
                stopped = true;
                break;
            }
            prev = c.clone();
        }
        if !stopped && !nonneg_at(&rational_below(&prev))? {
            lo = LambdaBound::finite(prev);
        }

        Ok(ConvexityCertificate {
            lambda_interval: LambdaInterval { lo, hi },
            quadrant_poly: d.clone(),
            factored_note: note,
        })
    }

    /// Decides whether N_lambda is a norm, carrying the Sturm evidence.
    pub fn is_norm(&self, lambda: &Rational) -> Result<NormDecision> {
        let form = self.hessian_tangential_form()?;
        let tangential = sturm_nonneg(
            &form.circle_poly.eval_lambda(lambda),
            &Rational::zero(),
            &Rational::one(),
        )?;
        let profile = sturm_nonneg(&self.profile_at(lambda), &Rational::zero(), &Rational::one())?;
        let convex = !matches!(tangential, SturmOutcome::Negative { .. });
        let positive = matches!(profile, SturmOutcome::StrictlyPositive { .. });
        Ok(NormDecision { lambda: lambda.clone(), is_norm: convex && positive, tangential, profile })
    }
}

/// Candidate lambda values where non-negativity of a (t, lambda) polynomial
/// over t in [0,1] can change: endpoint slices, content, leading coefficient
/// and self-resultant of the square-free part. Sorted, deduplicated.
pub(crate) fn lambda_window_candidates(d: &BivariatePoly) -> Result<Vec<ExactValue>> {
    let mut polys = vec![
        d.eval_main(&Rational::zero()),
        d.eval_main(&Rational::one()),
        d.content(),
    ];
    let s = d.square_free_part_main()?;
    if let Some(lc) = s.leading_coeff() {
        polys.push(lc.clone());
    }
    polys.push(s.content());
    polys.push(s.resultant_main(&s.derivative_main())?);
    let mut out = Vec::new();
    for p in polys {
        if p.degree().is_some_and(|deg| deg >= 1) {
            out.extend(exact_real_roots(&p)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Trivariate polynomial in (x, y, lambda), used only by the Hessian engine.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct TriPoly(BTreeMap<(u32, u32, u32), Rational>);

impl TriPoly {
    fn monomial(xp: u32, yp: u32, lp: u32, c: Rational) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert((xp, yp, lp), c);
        }
        TriPoly(map)
    }

    fn one() -> Self {
        Self::monomial(0, 0, 0, Rational::one())
    }

    fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rational)> {
        self.0.iter()
    }

    fn insert_add(map: &mut BTreeMap<(u32, u32, u32), Rational>, key: (u32, u32, u32), c: Rational) {
        let entry = map.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            map.remove(&key);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut map = self.0.clone();
        for (k, c) in &other.0 {
            Self::insert_add(&mut map, *k, c.clone());
        }
        TriPoly(map)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut map = BTreeMap::new();
        for ((ax, ay, al), ac) in &self.0 {
            for ((bx, by, bl), bc) in &other.0 {
                Self::insert_add(&mut map, (ax + bx, ay + by, al + bl), ac * bc);
            }
        }
        TriPoly(map)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative; axis 0 is x, axis 1 is y.
    fn deriv(&self, axis: usize) -> Self {
        let mut map = BTreeMap::new();
        for ((xp, yp, lp), c) in &self.0 {
            let (p, key) = if axis == 0 {
                (*xp, (xp.wrapping_sub(1), *yp, *lp))
            } else {
                (*yp, (*xp, yp.wrapping_sub(1), *lp))
            };
            if p >= 1 {
                Self::insert_add(&mut map, key, Rational::int(p as i64) * c);
            }
        }
        TriPoly(map)
    }

    /// Exact division by x^xp y^yp; fails if any monomial lacks the powers.
    fn div_mono(&self, xp: u32, yp: u32) -> std::result::Result<Self, ()> {
        let mut map = BTreeMap::new();
        for ((ax, ay, al), c) in &self.0 {
            if *ax < xp || *ay < yp {
                return Err(());
            }
            map.insert((ax - xp, ay - yp, *al), c.clone());
        }
        Ok(TriPoly(map))
    }
}
