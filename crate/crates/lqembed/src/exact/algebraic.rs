//! Exact real algebraic numbers and root extraction.
//!
//! An [`AlgebraicNumber`] is a square-free integer polynomial plus an isolating
//! interval with non-root endpoints; every comparison refines a local copy of the
//! interval until the answer is forced, so no floating point enters any decision.
//! The printed form is a 12-significant-digit decimal, and the stored interval is
//! centered on that decimal so the display is an honest bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::sturm::{count_half_open, isolate_real_roots, non_root_split_point, sturm_chain};
use super::unipoly::UniPoly;
use crate::Error;

const APPROX_DIGITS: usize = 12;

/// Rational-root search gives up past this coefficient size; callers then fall back
/// to representing the root symbolically, which stays correct.
const ROOT_ENUM_LIMIT: u64 = 1_000_000_000_000;

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "AlgebraicRepr", into = "AlgebraicRepr")]
pub struct AlgebraicNumber {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
    approx: String,
}

impl AlgebraicNumber {
    /// Builds the unique real root of `poly` inside `(lo, hi)`.
    ///
    /// The polynomial is canonicalized (square-free, coprime integer coefficients,
    /// positive leading coefficient). The interval must have non-root endpoints and
    /// contain exactly one distinct root.
    pub fn new(poly: UniPoly, lo: Rational, hi: Rational) -> Result<Self, Error> {
        let poly = canonical_defining_poly(&poly)?;
        validate_isolation(&poly, &lo, &hi)?;

        // A rational root gets an exact printed value and a clean digit window.
        let (ints, _) = poly.primitive_integer_coeffs();
        if let Some(roots) = rational_roots_int(&ints) {
            if let Some(r) = roots.into_iter().find(|r| &lo < r && r < &hi) {
                return Ok(Self::centered_at_rational(poly, r));
            }
        }

        let chain = sturm_chain(&poly);
        let (mut a, mut b) = (lo, hi);
        let mut guard = 0;
        while a.to_decimal_string(APPROX_DIGITS) != b.to_decimal_string(APPROX_DIGITS) {
            let (na, nb) = refine_once(&poly, &chain, &a, &b);
            a = na;
            b = nb;
            guard += 1;
            assert!(guard < 4096, "isolating interval failed to settle on a decimal");
        }
        let approx = a.to_decimal_string(APPROX_DIGITS);

        // Re-center the interval on the printed decimal, half an ulp each side, so
        // the display provably brackets the root. If a neighboring root is closer
        // than that (possible for tightly clustered roots), keep the refined box.
        let (digits, e) = a.sig_digits_round_half_even(APPROX_DIGITS);
        let mut value = Rational::from_big(digits.parse::<BigInt>().unwrap(), BigInt::from(1))
            * Rational::int(10).pow(e as i32 - (APPROX_DIGITS as i32 - 1));
        if a.is_negative() {
            value = -value;
        }
        let half_ulp = Rational::int(10).pow(e as i32 - (APPROX_DIGITS as i32 - 1))
            * Rational::new(1, 2);
        let (wlo, whi) = (&value - &half_ulp, &value + &half_ulp);
        let (lo, hi) = if !poly.eval(&wlo).is_zero()
            && !poly.eval(&whi).is_zero()
            && count_half_open(&chain, &wlo, &whi) == 1
        {
            (wlo, whi)
        } else {
            (a, b)
        };
        Ok(AlgebraicNumber { poly, lo, hi, approx })
    }

    fn centered_at_rational(poly: UniPoly, r: Rational) -> Self {
        let approx = r.to_decimal_string(APPROX_DIGITS);
        let chain = sturm_chain(&poly);
        let mut h = if r.is_zero() {
            Rational::new(1, 1_000_000_000_000)
        } else {
            let (_, e) = r.sig_digits_round_half_even(APPROX_DIGITS);
            Rational::int(10).pow(e as i32 - (APPROX_DIGITS as i32 - 1)) * Rational::new(1, 2)
        };
        loop {
            let (lo, hi) = (&r - &h, &r + &h);
            if !poly.eval(&lo).is_zero()
                && !poly.eval(&hi).is_zero()
                && count_half_open(&chain, &lo, &hi) == 1
            {
                return AlgebraicNumber { poly, lo, hi, approx };
            }
            h *= Rational::new(1, 2);
        }
    }

    pub fn defining_poly(&self) -> &UniPoly {
        &self.poly
    }

    /// The isolating interval `(lo, hi)`; the root is strictly inside and neither
    /// endpoint is a root.
    pub fn isolating_interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// 12-significant-digit decimal rendering.
    pub fn approx_str(&self) -> &str {
        &self.approx
    }

    pub fn approx_f64(&self) -> f64 {
        ((&self.lo + &self.hi) * Rational::new(1, 2)).to_f64()
    }

    fn shrink_once(&mut self) {
        let chain = sturm_chain(&self.poly);
        let (a, b) = refine_once(&self.poly, &chain, &self.lo, &self.hi);
        self.lo = a;
        self.hi = b;
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        if self.poly.eval(r).is_zero() {
            return Ordering::Equal;
        }
        let chain = sturm_chain(&self.poly);
        let (mut a, mut b) = (self.lo.clone(), self.hi.clone());
        loop {
            let (na, nb) = refine_once(&self.poly, &chain, &a, &b);
            a = na;
            b = nb;
            if r <= &a {
                return Ordering::Greater;
            }
            if r >= &b {
                return Ordering::Less;
            }
        }
    }

    /// Exact comparison against another algebraic number.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        let olo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let ohi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        if olo < ohi {
            // Equal numbers share a root of the gcd inside the overlap; the overlap
            // endpoints are non-roots of both defining polynomials.
            let g = self.poly.gcd(&other.poly);
            if g.degree().is_some_and(|d| d >= 1)
                && count_half_open(&sturm_chain(&g), olo, ohi) >= 1
            {
                return Ordering::Equal;
            }
        }
        let (mut x, mut y) = (self.clone(), other.clone());
        loop {
            if x.hi <= y.lo {
                return Ordering::Less;
            }
            if y.hi <= x.lo {
                return Ordering::Greater;
            }
            x.shrink_once();
            y.shrink_once();
        }
    }

    /// Exact sign of `q` evaluated at this number.
    pub fn sign_of_poly(&self, q: &UniPoly) -> i32 {
        if q.is_zero() {
            return 0;
        }
        if q.degree() == Some(0) {
            return q.coeff(0).signum();
        }
        let g = self.poly.gcd(q);
        if g.degree().is_some_and(|d| d >= 1)
            && count_half_open(&sturm_chain(&g), &self.lo, &self.hi) >= 1
        {
            return 0;
        }
        // Not a root of q: shrink until q is sign-constant on the box.
        let qsf = q.square_free_part();
        let qchain = sturm_chain(&qsf);
        let chain = sturm_chain(&self.poly);
        let (mut a, mut b) = (self.lo.clone(), self.hi.clone());
        loop {
            if !qsf.eval(&a).is_zero()
                && !qsf.eval(&b).is_zero()
                && count_half_open(&qchain, &a, &b) == 0
            {
                return q.eval(&((&a + &b) * Rational::new(1, 2))).signum();
            }
            let (na, nb) = refine_once(&self.poly, &chain, &a, &b);
            a = na;
            b = nb;
        }
    }
}

fn canonical_defining_poly(p: &UniPoly) -> Result<UniPoly, Error> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(Error::InvalidInput(
            "defining polynomial must have positive degree".to_string(),
        ));
    }
    let (ints, _) = p.square_free_part().primitive_integer_coeffs();
    Ok(UniPoly::new(
        ints.into_iter()
            .map(|c| Rational::from_big(c, BigInt::from(1)))
            .collect(),
    ))
}

fn validate_isolation(poly: &UniPoly, lo: &Rational, hi: &Rational) -> Result<(), Error> {
    if lo >= hi {
        return Err(Error::InvalidInput(format!(
            "isolating interval ({lo}, {hi}) is empty"
        )));
    }
    if poly.eval(lo).is_zero() || poly.eval(hi).is_zero() {
        return Err(Error::InvalidInput(format!(
            "isolating interval endpoint is a root of {poly}"
        )));
    }
    let n = count_half_open(&sturm_chain(poly), lo, hi);
    if n != 1 {
        return Err(Error::InvalidInput(format!(
            "interval ({lo}, {hi}) contains {n} roots of {poly}, need exactly one"
        )));
    }
    Ok(())
}

/// One bisection step that never lands on a root: returns the half of `(a, b)`
/// holding the single chain root, with non-root endpoints.
fn refine_once(
    poly: &UniPoly,
    chain: &[UniPoly],
    a: &Rational,
    b: &Rational,
) -> (Rational, Rational) {
    let m = non_root_split_point(poly, a, b);
    if count_half_open(chain, a, &m) == 1 {
        (a.clone(), m)
    } else {
        (m, b.clone())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.approx)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (root of {})", self.approx, self.poly)
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}
impl Eq for AlgebraicNumber {}
impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRepr {
    poly: UniPoly,
    interval: (Rational, Rational),
    approx: String,
}

impl From<AlgebraicNumber> for AlgebraicRepr {
    fn from(a: AlgebraicNumber) -> Self {
        AlgebraicRepr { poly: a.poly, interval: (a.lo, a.hi), approx: a.approx }
    }
}

impl TryFrom<AlgebraicRepr> for AlgebraicNumber {
    type Error = String;

    fn try_from(repr: AlgebraicRepr) -> Result<Self, String> {
        let poly = canonical_defining_poly(&repr.poly).map_err(|e| e.to_string())?;
        let (lo, hi) = repr.interval;
        validate_isolation(&poly, &lo, &hi).map_err(|e| e.to_string())?;
        Ok(AlgebraicNumber { poly, lo, hi, approx: repr.approx })
    }
}

/// A real number that is either rational or a located algebraic irrational.
#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rat(Rational),
    Alg(AlgebraicNumber),
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Rat(Rational::zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactValue::Rat(r) => Some(r),
            ExactValue::Alg(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rat(r) => r.to_f64(),
            ExactValue::Alg(a) => a.approx_f64(),
        }
    }

    /// 12-significant-digit decimal rendering.
    pub fn decimal_string(&self) -> String {
        match self {
            ExactValue::Rat(r) => r.to_decimal_string(APPROX_DIGITS),
            ExactValue::Alg(a) => a.approx_str().to_string(),
        }
    }

    /// Exact form for human output: the fraction itself, or the defining data.
    pub fn exact_form(&self) -> String {
        match self {
            ExactValue::Rat(r) => r.to_string(),
            ExactValue::Alg(a) => format!("root of {} near {}", a.defining_poly(), a.approx_str()),
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self {
            ExactValue::Rat(s) => s.cmp(r),
            ExactValue::Alg(a) => a.cmp_rational(r),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rational(&Rational::zero()) == Ordering::Greater
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Rat(r)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rat(r) => fmt::Display::fmt(r, f),
            ExactValue::Alg(a) => fmt::Display::fmt(a, f),
        }
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rat(r) => write!(f, "{r}"),
            ExactValue::Alg(a) => write!(f, "{a:?}"),
        }
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ExactValue {}
impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactValue::Rat(a), ExactValue::Rat(b)) => a.cmp(b),
            (ExactValue::Rat(a), ExactValue::Alg(b)) => b.cmp_rational(a).reverse(),
            (ExactValue::Alg(a), ExactValue::Rat(b)) => a.cmp_rational(b),
            (ExactValue::Alg(a), ExactValue::Alg(b)) => a.compare(b),
        }
    }
}

/// All distinct real roots of `p`, exactly, in increasing order. Rational roots
/// come back as rationals; the rest carry their defining polynomial.
pub fn exact_real_roots(p: &UniPoly) -> Result<Vec<ExactValue>, Error> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial has no root set".to_string(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sf = p.square_free_part();
    let (rats, cofactor) = extract_rational_roots(&sf);
    let mut out: Vec<ExactValue> = rats.into_iter().map(ExactValue::Rat).collect();
    if cofactor.degree().is_some_and(|d| d >= 1) {
        for iv in isolate_real_roots(&cofactor)? {
            if iv.is_point() {
                out.push(ExactValue::Rat(iv.lo));
            } else {
                out.push(ExactValue::Alg(AlgebraicNumber::new(
                    cofactor.clone(),
                    iv.lo,
                    iv.hi,
                )?));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Smallest strictly positive real root of `p`.
pub fn smallest_positive_root(p: &UniPoly) -> Result<ExactValue, Error> {
    exact_real_roots(p)?
        .into_iter()
        .find(ExactValue::is_positive)
        .ok_or_else(|| Error::InvalidInput(format!("{p} has no positive real root")))
}

/// Smallest strictly positive root of `a x^2 + b x + c`, exactly: rational when the
/// discriminant is a perfect square, an algebraic number otherwise.
pub fn solve_quadratic_positive_root(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<ExactValue, Error> {
    if a.is_zero() {
        return Err(Error::InvalidInput(
            "leading coefficient of the quadratic is zero".to_string(),
        ));
    }
    let disc = b * b - Rational::int(4) * a * c;
    if disc.is_negative() {
        return Err(Error::InvalidInput(
            "quadratic has no real roots".to_string(),
        ));
    }
    if let Some(s) = sqrt_exact(&disc) {
        let two_a = Rational::int(2) * a;
        let mut roots = [(-b - &s) / &two_a, (-b + &s) / &two_a];
        roots.sort();
        return roots
            .into_iter()
            .find(Rational::is_positive)
            .map(ExactValue::Rat)
            .ok_or_else(|| {
                Error::InvalidInput("quadratic has no positive real root".to_string())
            });
    }
    smallest_positive_root(&UniPoly::new(vec![c.clone(), b.clone(), a.clone()]))
}

/// Exact square root of a non-negative rational, when it is itself rational.
fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::from_big(sn, sd))
    } else {
        None
    }
}

/// Rational roots of a primitive integer polynomial via divisor enumeration, or
/// `None` when the constant or leading coefficient exceeds the enumeration limit.
fn rational_roots_int(ints: &[BigInt]) -> Option<Vec<Rational>> {
    let mut p = UniPoly::new(
        ints.iter()
            .map(|c| Rational::from_big(c.clone(), BigInt::from(1)))
            .collect(),
    );
    let mut roots = Vec::new();
    while !p.is_zero() && p.coeff(0).is_zero() {
        roots.push(Rational::zero());
        p = p.div_exact(&UniPoly::x()).expect("x divides");
    }
    if p.degree().is_none_or(|d| d == 0) {
        roots.sort();
        return Some(roots);
    }
    let c0 = p.coeff(0).numer().abs().to_u64().filter(|&v| v <= ROOT_ENUM_LIMIT)?;
    let lc = p
        .leading_coeff()
        .unwrap()
        .numer()
        .abs()
        .to_u64()
        .filter(|&v| v <= ROOT_ENUM_LIMIT)?;
    for dn in divisors(c0) {
        for dd in divisors(lc) {
            if dn.gcd(&dd) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(sign * dn as i64, dd as i64);
                if p.eval(&cand).is_zero() {
                    p = p
                        .div_exact(&UniPoly::new(vec![-&cand, Rational::one()]))
                        .expect("root divides");
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    debug_assert!(n >= 1);
    let mut out = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

/// Splits a square-free polynomial into its rational roots and the root-free
/// cofactor. When enumeration is infeasible the cofactor is the whole input.
fn extract_rational_roots(sf: &UniPoly) -> (Vec<Rational>, UniPoly) {
    let (ints, _) = sf.primitive_integer_coeffs();
    match rational_roots_int(&ints) {
        None => (Vec::new(), sf.clone()),
        Some(roots) => {
            let mut cofactor = sf.clone();
            for r in &roots {
                cofactor = cofactor
                    .div_exact(&UniPoly::new(vec![-r, Rational::one()]))
                    .expect("rational root divides");
            }
            (roots, cofactor)
        }
    }
}

/// A rational strictly between two exact values (`a < b` required).
pub(crate) fn rational_between(a: &ExactValue, b: &ExactValue) -> Rational {
    debug_assert!(a < b);
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let ub = match &a {
            ExactValue::Rat(r) => r.clone(),
            ExactValue::Alg(x) => x.isolating_interval().1.clone(),
        };
        let lb = match &b {
            ExactValue::Rat(r) => r.clone(),
            ExactValue::Alg(x) => x.isolating_interval().0.clone(),
        };
        if ub < lb {
            return (ub + lb) * Rational::new(1, 2);
        }
        if let ExactValue::Alg(x) = &mut a {
            x.shrink_once();
        }
        if let ExactValue::Alg(x) = &mut b {
            x.shrink_once();
        }
    }
}

/// A rational strictly above the value.
pub(crate) fn rational_above(v: &ExactValue) -> Rational {
    match v {
        ExactValue::Rat(r) => r + Rational::one(),
        ExactValue::Alg(a) => a.isolating_interval().1 + Rational::one(),
    }
}

/// A rational strictly below the value.
pub(crate) fn rational_below(v: &ExactValue) -> Rational {
    match v {
        ExactValue::Rat(r) => r - Rational::one(),
        ExactValue::Alg(a) => a.isolating_interval().0 - Rational::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sqrt2() -> AlgebraicNumber {
        AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), r("1"), r("2")).unwrap()
    }

    #[test]
    fn construction_validates_the_interval() {
        let p = UniPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert!(AlgebraicNumber::new(p.clone(), r("1"), r("2")).is_ok());
        // Two roots inside.
        assert!(AlgebraicNumber::new(p.clone(), r("-2"), r("2")).is_err());
        // No root inside.
        assert!(AlgebraicNumber::new(p.clone(), r("2"), r("3")).is_err());
        // Root at an endpoint.
        let q = UniPoly::from_ints(&[3, -4, 1]); // (x-1)(x-3)
        assert!(AlgebraicNumber::new(q, r("1"), r("2")).is_err());
        // Constant polynomial.
        assert!(AlgebraicNumber::new(UniPoly::one(), r("0"), r("1")).is_err());
    }

    #[test]
    fn approx_is_twelve_significant_digits() {
        let a = sqrt2();
        assert_eq!(a.approx_str(), "1.41421356237");
        let (lo, hi) = a.isolating_interval();
        assert!(lo < hi);
        assert!(!a.defining_poly().eval(lo).is_zero());
        // The printed decimal sits inside the stored interval.
        let printed = r("141421356237/100000000000");
        assert!(lo < &printed && &printed < hi);
    }

    #[test]
    fn comparisons_against_rationals_are_exact() {
        let a = sqrt2();
        assert_eq!(a.cmp_rational(&r("3/2")), Ordering::Less);
        assert_eq!(a.cmp_rational(&r("1")), Ordering::Greater);
        // 1.41421356237 < sqrt(2) < 1.41421356238
        assert_eq!(a.cmp_rational(&r("141421356237/100000000000")), Ordering::Greater);
        assert_eq!(a.cmp_rational(&r("141421356238/100000000000")), Ordering::Less);
    }

    #[test]
    fn equality_across_different_defining_polynomials() {
        let a = sqrt2();
        // (x^2 - 2)(x - 5), isolated near 1.4
        let p = UniPoly::from_ints(&[-2, 0, 1]) * UniPoly::from_ints(&[-5, 1]);
        let b = AlgebraicNumber::new(p, r("13/10"), r("3/2")).unwrap();
        assert_eq!(a, b);
        let c = AlgebraicNumber::new(UniPoly::from_ints(&[-3, 0, 1]), r("1"), r("2")).unwrap();
        assert!(a < c); // sqrt(2) < sqrt(3)
    }

    #[test]
    fn sign_of_polynomial_at_the_root() {
        let a = sqrt2();
        assert_eq!(a.sign_of_poly(&UniPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of_poly(&UniPoly::from_ints(&[-2, 1])), -1); // x - 2 < 0
        assert_eq!(a.sign_of_poly(&UniPoly::from_ints(&[-1, 1])), 1); // x - 1 > 0
        // Multiple of the defining polynomial also vanishes.
        let m = UniPoly::from_ints(&[-2, 0, 1]) * UniPoly::from_ints(&[7, 3]);
        assert_eq!(a.sign_of_poly(&m), 0);
    }

    #[test]
    fn quadratic_solver_returns_exact_forms() {
        // 9x^2 - 1: perfect-square discriminant, roots +/- 1/3.
        let v = solve_quadratic_positive_root(&r("9"), &r("0"), &r("-1")).unwrap();
        assert_eq!(v, ExactValue::Rat(r("1/3")));
        // (x - 2)^2.
        let v = solve_quadratic_positive_root(&r("1"), &r("-4"), &r("4")).unwrap();
        assert_eq!(v, ExactValue::Rat(r("2")));
        // No real roots.
        assert!(solve_quadratic_positive_root(&r("1"), &r("0"), &r("1")).is_err());
        // Real but not positive.
        assert!(solve_quadratic_positive_root(&r("1"), &r("2"), &r("1")).is_err());
        // Degenerate leading coefficient.
        assert!(solve_quadratic_positive_root(&r("0"), &r("1"), &r("-1")).is_err());
    }

    #[test]
    fn quadratic_solver_irrational_cases_match_frozen_decimals() {
        // -44x^2 - 16x + 1: smallest positive root (3 sqrt(3) - 4)/22.
        let v = solve_quadratic_positive_root(&r("-44"), &r("-16"), &r("1")).unwrap();
        assert_eq!(v.decimal_string(), "0.0543705646685");
        assert!(v > ExactValue::Rat(r("1/20")) && v < ExactValue::Rat(r("1/16")));
        // -44x^2 - 28x + 1: smallest positive root (2 sqrt(15) - 7)/22.
        let v = solve_quadratic_positive_root(&r("-44"), &r("-28"), &r("1")).unwrap();
        assert_eq!(v.decimal_string(), "0.0339075769279");
        assert!(v < ExactValue::Rat(r("1/28")));
    }

    #[test]
    fn real_root_listing_mixes_rational_and_algebraic() {
        // 3(x - 1/3)(x^2 - 2) = 3x^3 - x^2 - 6x + 2
        let p = UniPoly::from_ints(&[2, -6, -1, 3]);
        let roots = exact_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].decimal_string(), "-1.41421356237");
        assert_eq!(roots[1], ExactValue::Rat(r("1/3")));
        assert_eq!(roots[2].decimal_string(), "1.41421356237");
        assert!(roots[0].as_rational().is_none());
    }

    #[test]
    fn smallest_positive_root_of_a_cubic() {
        let p = UniPoly::from_ints(&[-65, 1950, 7956, 4456]);
        let v = smallest_positive_root(&p).unwrap();
        assert_eq!(v.decimal_string(), "0.0296796045954");
        assert!((v.to_f64() - 0.0296796045954).abs() < 1e-12);
    }

    #[test]
    fn betweenness_helpers_produce_strict_separators() {
        let s2 = ExactValue::Alg(sqrt2());
        let s3 = ExactValue::Alg(
            AlgebraicNumber::new(UniPoly::from_ints(&[-3, 0, 1]), r("1"), r("2")).unwrap(),
        );
        let one = ExactValue::Rat(r("1"));
        let m = rational_between(&one, &s2);
        assert!(one < ExactValue::Rat(m.clone()) && ExactValue::Rat(m) < s2);
        let m = rational_between(&s2, &s3);
        assert!(s2 < ExactValue::Rat(m.clone()) && ExactValue::Rat(m) < s3);
        assert!(ExactValue::Rat(rational_above(&s3)) > s3);
        assert!(ExactValue::Rat(rational_below(&s2)) < s2);
    }

    #[test]
    fn serde_shapes_and_round_trips() {
        let v = ExactValue::Rat(r("-3/7"));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"num":"-3","den":"7"}"#);
        assert_eq!(serde_json::from_str::<ExactValue>(&json).unwrap(), v);

        let a = ExactValue::Alg(sqrt2());
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains(r#""poly":"#) && json.contains(r#""approx":"1.41421356237""#));
        let back: ExactValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        // Stable bytes across a parse/serialize cycle.
        assert_eq!(serde_json::to_string(&back).unwrap(), json);

        // A tampered interval with two roots inside is rejected.
        let mut doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        doc["interval"][0] = serde_json::json!({"num": "-2", "den": "1"});
        assert!(serde_json::from_value::<ExactValue>(doc).is_err());
    }

    #[test]
    fn zero_as_an_algebraic_root_still_renders() {
        // x(x^2 - 2) isolated around 0.
        let p = UniPoly::from_ints(&[0, -2, 0, 1]);
        let a = AlgebraicNumber::new(p, r("-1"), r("1")).unwrap();
        assert_eq!(a.approx_str(), "0");
        assert_eq!(a.cmp_rational(&r("0")), Ordering::Equal);
        assert_eq!(a.cmp_rational(&r("1/1000")), Ordering::Less);
    }
}
