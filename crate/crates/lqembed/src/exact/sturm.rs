//! Exact real-root location via Sturm chains.
//!
//! The half-open convention is used throughout: with zeros skipped in the sign
//! sequence, the variation difference V(a) - V(b) of a square-free chain counts
//! the distinct roots in (a, b], whether or not an endpoint is itself a root.
//! All counting here runs on the square-free part; multiplicities are recovered
//! afterwards from a Yun decomposition.

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::Error;

/// Sturm chain of `p`: remainders with flipped sign, each scaled by the absolute
/// value of its leading coefficient to keep the numbers small (positive scaling
/// preserves every sign evaluation). Panics on the zero polynomial.
pub(crate) fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
    let mut chain = vec![norm_abs_lc(p)];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(norm_abs_lc(&d));
    loop {
        let len = chain.len();
        let rem = chain[len - 2].div_rem(&chain[len - 1]).1;
        if rem.is_zero() {
            return chain;
        }
        chain.push(norm_abs_lc(&-rem));
    }
}

fn norm_abs_lc(p: &UniPoly) -> UniPoly {
    let lc = p.leading_coeff().expect("normalizing the zero polynomial");
    p.scale(&lc.abs().recip())
}

/// Sign variations of the chain at `x`, zeros skipped.
pub(crate) fn variations_at(chain: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = p.eval(x).signum();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Distinct roots of the (square-free) chain's polynomial in `(a, b]`.
pub(crate) fn count_half_open(chain: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    assert!(a <= b, "inverted interval");
    variations_at(chain, a) - variations_at(chain, b)
}

/// Location of one distinct real root.
///
/// Either `lo == hi` (the root is exactly that rational) or the root lies strictly
/// inside `(lo, hi)` and neither endpoint is a root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn approx_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Bisects until the width is at most `max_width`. `sf` must be square-free with
    /// exactly this interval's root inside, so the endpoint signs differ.
    pub fn refine(&mut self, sf: &UniPoly, max_width: &Rational) {
        if self.is_point() {
            return;
        }
        let mut sign_lo = sf.eval(&self.lo).signum();
        debug_assert!(sign_lo != 0 && sf.eval(&self.hi).signum() == -sign_lo);
        while &self.width() > max_width {
            let m = self.midpoint();
            let sm = sf.eval(&m).signum();
            if sm == 0 {
                self.lo = m.clone();
                self.hi = m;
                return;
            }
            if sm == sign_lo {
                self.lo = m;
                sign_lo = sm;
            } else {
                self.hi = m;
            }
        }
    }
}

/// Isolates the distinct real roots of `p` in the closed interval `[lo, hi]`,
/// in increasing order, with multiplicities.
pub fn isolate_roots(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>, Error> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "cannot isolate roots of the zero polynomial".to_string(),
        ));
    }
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "inverted interval [{lo}, {hi}]"
        )));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let yun = yun_decomposition(p);
    if lo == hi {
        if p.eval(lo).is_zero() {
            let m = multiplicity_from_yun(&yun, lo);
            return Ok(vec![RootInterval { lo: lo.clone(), hi: hi.clone(), multiplicity: m }]);
        }
        return Ok(Vec::new());
    }

    let sf = p.square_free_part();
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(&sf);

    enum Raw {
        Point(Rational),
        Open(Rational, Rational),
    }
    let mut raw: Vec<Raw> = Vec::new();
    if sf.eval(lo).is_zero() {
        raw.push(Raw::Point(lo.clone()));
    }
    let mut stack = vec![(lo.clone(), hi.clone(), count_half_open(&chain, lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                if sf.eval(&b).is_zero() {
                    raw.push(Raw::Point(b));
                } else {
                    // Only the original left endpoint can be a root here; step off it.
                    let a = if sf.eval(&a).is_zero() {
                        first_rootless_prefix(&chain, &a, &b)
                    } else {
                        a
                    };
                    raw.push(Raw::Open(a, b));
                }
            }
            _ => {
                let m = non_root_split_point(&sf, &a, &b);
                let left = count_half_open(&chain, &a, &m);
                let right = n - left;
                stack.push((a, m.clone(), left));
                stack.push((m, b, right));
            }
        }
    }

    // Tighten the boxes so they are narrow relative to the domain, then sort.
    let span = hi - lo;
    let max_width = &span * Rational::new(1, 1 << 24);
    let mut out: Vec<RootInterval> = raw
        .into_iter()
        .map(|r| match r {
            Raw::Point(x) => {
                let m = multiplicity_from_yun(&yun, &x);
                RootInterval { lo: x.clone(), hi: x, multiplicity: m }
            }
            Raw::Open(a, b) => {
                let mut iv = RootInterval { lo: a, hi: b, multiplicity: 0 };
                iv.refine(&sf, &max_width);
                iv.multiplicity = if iv.is_point() {
                    multiplicity_from_yun(&yun, &iv.lo)
                } else {
                    multiplicity_from_yun_interval(&yun, &iv.lo, &iv.hi)
                };
                iv
            }
        })
        .collect();
    out.sort_by(|x, y| (&x.lo, &x.hi).cmp(&(&y.lo, &y.hi)));
    Ok(out)
}

/// Isolates every real root of `p`, using the Cauchy bound to box the root set.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RootInterval>, Error> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "cannot isolate roots of the zero polynomial".to_string(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let lc = p.leading_coeff().unwrap().abs();
    let mut bound = Rational::one();
    for c in p.coeffs().iter().take(p.coeffs().len() - 1) {
        let q = c.abs() / &lc;
        if q > bound {
            bound = q;
        }
    }
    bound += Rational::one();
    isolate_roots(p, &-&bound, &bound)
}

/// A split point in `(a, b)` that is not a root of `sf`: the midpoint if possible,
/// otherwise finer dyadic subdivisions.
pub(crate) fn non_root_split_point(sf: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let span = b - a;
    let mut k: i64 = 2;
    loop {
        let mut j = 1;
        while j < k {
            let cand = a + &span * Rational::new(j, k);
            if !sf.eval(&cand).is_zero() {
                return cand;
            }
            j += 2;
        }
        k *= 2;
        assert!(k < (1 << 40), "could not find a non-root split point");
    }
}

/// First `x` in `(a, b)` with no chain root in `(a, x]`; used to move an interval's
/// left endpoint off a root that belongs to a neighboring point.
fn first_rootless_prefix(chain: &[UniPoly], a: &Rational, b: &Rational) -> Rational {
    let mut step = (b - a) * Rational::new(1, 2);
    for _ in 0..4096 {
        let cand = a + &step;
        if count_half_open(chain, a, &cand) == 0 {
            return cand;
        }
        step *= Rational::new(1, 2);
    }
    unreachable!("root separation exhausted");
}

/// Yun square-free decomposition: returns pairwise-coprime monic square-free
/// factors with their multiplicities, `p = lc * prod f_i^i`.
fn yun_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let g = p.gcd(&p.derivative());
    if g.degree() == Some(0) {
        return vec![(p.monic(), 1)];
    }
    let mut out = Vec::new();
    let mut c = p.div_exact(&g).expect("gcd divides");
    let mut d = &p.derivative().div_exact(&g).expect("gcd divides p'") - &c.derivative();
    let mut i = 1u32;
    loop {
        let a = c.gcd(&d);
        if a.degree().is_some_and(|deg| deg >= 1) {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("factor divides");
        if c.degree().is_none_or(|deg| deg == 0) {
            return out;
        }
        d = &d.div_exact(&a).expect("factor divides d") - &c.derivative();
        i += 1;
        assert!(i as usize <= p.coeffs().len(), "Yun decomposition failed to terminate");
    }
}

fn multiplicity_from_yun(yun: &[(UniPoly, u32)], x: &Rational) -> u32 {
    for (f, i) in yun {
        if f.eval(x).is_zero() {
            return *i;
        }
    }
    panic!("no square-free factor vanishes at {x}");
}

/// Multiplicity of the single root inside `(lo, hi)`: the unique Yun factor with a
/// root there. Endpoints are non-roots of every factor by construction.
fn multiplicity_from_yun_interval(yun: &[(UniPoly, u32)], lo: &Rational, hi: &Rational) -> u32 {
    for (f, i) in yun {
        if f.degree() == Some(0) {
            continue;
        }
        let chain = sturm_chain(f);
        if count_half_open(&chain, lo, hi) == 1 {
            return *i;
        }
    }
    panic!("no square-free factor has a root in ({lo}, {hi})");
}

/// Verdict of an exact non-negativity check over a closed interval.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SturmOutcome {
    IdenticallyZero,
    /// Positive throughout; the approximate minimum is over endpoint and
    /// critical-point samples.
    StrictlyPositive { min_approx: f64, argmin_approx: f64 },
    /// Non-negative with zeros exactly at the listed roots.
    TouchesZero { zeros: Vec<RootInterval> },
    /// Takes a negative value; `witness` is the most negative sample found.
    Negative { witness: Rational, value: Rational },
}

/// Decides whether `p >= 0` on `[lo, hi]`, exactly.
///
/// Signs are sampled at the endpoints and between consecutive roots, which covers
/// every maximal sign region; a negative sample is returned as a witness.
pub fn sturm_nonneg(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<SturmOutcome, Error> {
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "inverted interval [{lo}, {hi}]"
        )));
    }
    if p.is_zero() {
        return Ok(SturmOutcome::IdenticallyZero);
    }
    let roots = isolate_roots(p, lo, hi)?;

    let mut samples: Vec<Rational> = Vec::new();
    if !p.eval(lo).is_zero() {
        samples.push(lo.clone());
    }
    for pair in roots.windows(2) {
        samples.push((&pair[0].hi + &pair[1].lo) * Rational::new(1, 2));
    }
    if lo != hi && !p.eval(hi).is_zero() {
        samples.push(hi.clone());
    }

    let mut worst: Option<(Rational, Rational)> = None; // (value, point)
    for s in samples {
        let v = p.eval(&s);
        if v.is_negative() && worst.as_ref().is_none_or(|(w, _)| &v < w) {
            worst = Some((v, s));
        }
    }
    if let Some((value, witness)) = worst {
        return Ok(SturmOutcome::Negative { witness, value });
    }
    if !roots.is_empty() {
        return Ok(SturmOutcome::TouchesZero { zeros: roots });
    }

    // Strictly positive: estimate the minimum from endpoints and critical points.
    let mut candidates = vec![lo.to_f64(), hi.to_f64()];
    let dp = p.derivative();
    if !dp.is_zero() && dp.degree() != Some(0) {
        let narrow = Rational::new(1, 1_000_000_000);
        let dsf = dp.square_free_part();
        for mut iv in isolate_roots(&dp, lo, hi)? {
            iv.refine(&dsf, &narrow);
            candidates.push(iv.approx_f64());
        }
    }
    let (mut min_approx, mut argmin_approx) = (f64::INFINITY, lo.to_f64());
    for x in candidates {
        let v = p.eval_f64(x);
        if v < min_approx {
            min_approx = v;
            argmin_approx = x;
        }
    }
    Ok(SturmOutcome::StrictlyPositive { min_approx, argmin_approx })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn witness_at_right_endpoint() {
        // (20 - 21u)/13 dips negative only past its root 20/21.
        let p = UniPoly::new(vec![r("20/13"), r("-21/13")]);
        let out = sturm_nonneg(&p, &r("0"), &r("1")).unwrap();
        assert_eq!(
            out,
            SturmOutcome::Negative { witness: r("1"), value: r("-1/13") }
        );
    }

    #[test]
    fn negative_dip_between_endpoint_roots() {
        let p = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1 on [-1, 1]
        let out = sturm_nonneg(&p, &r("-1"), &r("1")).unwrap();
        assert_eq!(out, SturmOutcome::Negative { witness: r("0"), value: r("-1") });
    }

    #[test]
    fn strictly_positive_reports_interior_minimum() {
        let p = UniPoly::from_ints(&[1, 0, 1]); // x^2 + 1
        match sturm_nonneg(&p, &r("-1"), &r("1")).unwrap() {
            SturmOutcome::StrictlyPositive { min_approx, argmin_approx } => {
                assert!((min_approx - 1.0).abs() < 1e-9);
                assert!(argmin_approx.abs() < 1e-6);
            }
            other => panic!("expected strict positivity, got {other:?}"),
        }
    }

    #[test]
    fn touching_zeros_at_endpoints_with_positive_interior() {
        let p = UniPoly::from_ints(&[0, 1]) * UniPoly::from_ints(&[1, -1]); // u(1-u)
        match sturm_nonneg(&p, &r("0"), &r("1")).unwrap() {
            SturmOutcome::TouchesZero { zeros } => {
                assert_eq!(zeros.len(), 2);
                assert!(zeros[0].is_point() && zeros[0].lo == r("0"));
                assert!(zeros[1].is_point() && zeros[1].lo == r("1"));
                assert_eq!((zeros[0].multiplicity, zeros[1].multiplicity), (1, 1));
            }
            other => panic!("expected touching zeros, got {other:?}"),
        }
    }

    #[test]
    fn double_root_keeps_nonnegativity_with_multiplicity_two() {
        // (x - 1/2)^2
        let p = UniPoly::new(vec![r("1/4"), r("-1"), r("1")]);
        match sturm_nonneg(&p, &r("0"), &r("1")).unwrap() {
            SturmOutcome::TouchesZero { zeros } => {
                assert_eq!(zeros.len(), 1);
                assert_eq!(zeros[0].multiplicity, 2);
                assert!(zeros[0].lo <= r("1/2") && r("1/2") <= zeros[0].hi);
            }
            other => panic!("expected touching zeros, got {other:?}"),
        }
    }

    #[test]
    fn zero_polynomial_and_degenerate_interval() {
        assert_eq!(
            sturm_nonneg(&UniPoly::zero(), &r("0"), &r("1")).unwrap(),
            SturmOutcome::IdenticallyZero
        );
        assert!(isolate_roots(&UniPoly::zero(), &r("0"), &r("1")).is_err());
        assert!(sturm_nonneg(&UniPoly::one(), &r("1"), &r("0")).is_err());
        // Point interval.
        let p = UniPoly::from_ints(&[-2, 1]); // x - 2
        match sturm_nonneg(&p, &r("2"), &r("2")).unwrap() {
            SturmOutcome::TouchesZero { zeros } => assert!(zeros[0].is_point()),
            other => panic!("expected touching zero, got {other:?}"),
        }
        assert!(matches!(
            sturm_nonneg(&p, &r("0"), &r("0")).unwrap(),
            SturmOutcome::Negative { .. }
        ));
    }

    #[test]
    fn isolates_mixed_rational_and_irrational_roots() {
        // (x^2 - 2)(x - 1) = x^3 - x^2 - 2x + 2: roots 1, +/- sqrt(2)
        let p2 = UniPoly::from_ints(&[2, -2, -1, 1]);
        assert_eq!(&p2, &(UniPoly::from_ints(&[-2, 0, 1]) * UniPoly::from_ints(&[-1, 1])));
        let roots = isolate_roots(&p2, &r("-2"), &r("2")).unwrap();
        assert_eq!(roots.len(), 3);
        let approx: Vec<f64> = roots.iter().map(RootInterval::approx_f64).collect();
        let expect = [-std::f64::consts::SQRT_2, 1.0, std::f64::consts::SQRT_2];
        for (a, e) in approx.iter().zip(expect) {
            assert!((a - e).abs() < 1e-6, "root near {e}, got {a}");
        }
        assert!(roots.iter().all(|iv| iv.multiplicity == 1));
    }

    #[test]
    fn multiplicities_via_yun_factors() {
        // (x - 1)^2 (x + 2)
        let p = UniPoly::from_ints(&[-1, 1]).pow(2) * UniPoly::from_ints(&[2, 1]);
        let roots = isolate_roots(&p, &r("-3"), &r("2")).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].approx_f64() + 2.0).abs() < 1e-6);
        assert_eq!(roots[0].multiplicity, 1);
        assert!((roots[1].approx_f64() - 1.0).abs() < 1e-6);
        assert_eq!(roots[1].multiplicity, 2);
    }

    #[test]
    fn whole_line_isolation_uses_cauchy_bound() {
        // 20x^3 - x: roots 0, +/- sqrt(1/20) (~0.2236)
        let p = UniPoly::from_ints(&[0, -1, 0, 20]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[1].approx_f64()).abs() < 1e-6);
        assert!((roots[2].approx_f64() - 0.05f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn endpoint_root_next_to_interval_root_still_samples_between() {
        // x (x^2 - 1/4) on [0, 1]: roots 0 and 1/2, negative between them.
        let p = UniPoly::x() * UniPoly::new(vec![r("-1/4"), r("0"), r("1")]);
        match sturm_nonneg(&p, &r("0"), &r("1")).unwrap() {
            SturmOutcome::Negative { witness, value } => {
                assert!(r("0") < witness && witness < r("1/2"));
                assert!(value.is_negative());
            }
            other => panic!("expected a negative dip, got {other:?}"),
        }
    }

    #[test]
    fn serde_round_trip_for_outcomes() {
        let out = SturmOutcome::Negative { witness: r("1"), value: r("-1/13") };
        let json = serde_json::to_string(&out).unwrap();
        assert!(json.contains(r#""outcome":"negative""#));
        assert_eq!(serde_json::from_str::<SturmOutcome>(&json).unwrap(), out);
    }
}
