//! Spherical moment identities: expressing x_n^{2j} on the unit sphere as a
//! Gamma-ratio constant times an integral of |(x, xi)|^q against a polynomial
//! in xi_n^2.
//!
//! The derivation differentiates the classical identity
//! |x|_2^{2k} = A_k INT_{S_n} |(x, xi)|^{2k} dxi, with
//! A_k = Gamma((n+2k)/2) / (2 pi^((n-1)/2) Gamma((2k+1)/2)), an even number of
//! times with respect to x_n: the left side becomes a polynomial in x_n^2 on
//! the sphere, the right side picks up a falling-factorial coefficient and a
//! xi_n^{2j} factor. Triangular back-substitution then isolates each monomial.
//! Odd-order intermediate derivatives are kept as raw (x_n, r^2) term maps and
//! restricted to the sphere only at the very end, because restricting early
//! drops the cross terms the next differentiation needs.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::{GammaRatioConstant, Rational, UniPoly};
use crate::{Error, Result};

/// Highest derivative order the engine will take; bounds every public entry
/// point of this module.
pub const MAX_DERIVATIVE_ORDER: u32 = 8;

/// The m-th partial derivative of (x_1^2 + ... + x_n^2)^k with respect to x_n,
/// restricted to the unit sphere and written in v = x_n^2.
///
/// For odd m the raw derivative is x_n times an even polynomial; this type
/// stores that even cofactor, so `restricted_poly` always has degree <= m/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereDerivative {
    pub m: u32,
    pub k: Rational,
    pub restricted_poly: UniPoly,
}

/// One certified row: x_n^{2j} = prefactor * INT |(x, xi)|^q polynomial(xi_n^2) dxi
/// for every x on the unit sphere, with power = 2j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRow {
    pub power: u32,
    pub prefactor: GammaRatioConstant,
    pub polynomial: UniPoly,
}

/// The full triangular table of rows for j = 0 .. max_power/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentIdentity {
    pub n: u32,
    pub q: Rational,
    pub entries: Vec<MomentRow>,
}

impl MomentIdentity {
    pub fn row_for_power(&self, power: u32) -> Option<&MomentRow> {
        self.entries.iter().find(|r| r.power == power)
    }
}

/// Exact m-th derivative of (r^2)^k along x_n, restricted to the unit sphere.
///
/// Internally each intermediate derivative is a map (a, b) -> c standing for
/// the term c * x_n^a * (r^2)^(k-b); differentiation splits every term in two
/// and the sphere restriction r^2 = 1 happens only after all m steps.
pub fn sphere_power_derivative(k: &Rational, m: u32) -> Result<SphereDerivative> {
    if m > MAX_DERIVATIVE_ORDER {
        return Err(Error::Unsupported(format!(
            "derivative order {m} exceeds the supported maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    terms.insert((0, 0), Rational::one());
    for _ in 0..m {
        let mut next: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((a, b), c) in &terms {
            if *a >= 1 {
                let add = Rational::int(*a as i64) * c;
                *next.entry((a - 1, *b)).or_insert_with(Rational::zero) += add;
            }
            let factor = Rational::int(2) * (k - Rational::int(*b as i64));
            if !factor.is_zero() {
                *next.entry((a + 1, b + 1)).or_insert_with(Rational::zero) += factor * c;
            }
        }
        terms = next;
    }
    let mut coeffs = vec![Rational::zero(); (m / 2 + 1) as usize];
    for ((a, _), c) in terms {
        debug_assert_eq!(a % 2, m % 2, "term parity must match the derivative order");
        let slot = if m.is_multiple_of(2) { a / 2 } else { (a - 1) / 2 };
        coeffs[slot as usize] += c;
    }
    Ok(SphereDerivative { m, k: k.clone(), restricted_poly: UniPoly::new(coeffs) })
}

/// Falling factorial (2k)(2k-1)...(2k-m+1): the coefficient produced by
/// differentiating |t|^{2k} an even number m of times.
///
/// Odd m is rejected (those derivatives are odd functions, used only as
/// intermediates), as is the degenerate case where 2k-m is an even integer
/// <= 0, where |t|^{2k-m} stops being locally integrable-against-polynomials.
pub fn abs_power_derivative_coefficient(k: &Rational, m: u32) -> Result<Rational> {
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "absolute-power derivative order must be even, got {m}"
        )));
    }
    let residual = Rational::int(2) * k - Rational::int(m as i64);
    if residual.is_integer() && residual.numer().is_even() && !residual.is_positive() {
        return Err(Error::InvalidInput(format!(
            "2k - m = {residual} is a non-positive even integer; the derivative degenerates"
        )));
    }
    let mut acc = Rational::one();
    for step in 0..m {
        acc *= Rational::int(2) * k - Rational::int(step as i64);
    }
    Ok(acc)
}

/// The sphere-measure constant A_k as a symbolic Gamma-ratio record.
fn sphere_constant(n: u32, k: &Rational) -> GammaRatioConstant {
    GammaRatioConstant {
        gamma_num: (Rational::int(n as i64) + Rational::int(2) * k) * Rational::new(1, 2),
        gamma_den: (Rational::int(2) * k + Rational::one()) * Rational::new(1, 2),
        pi_power: Rational::new(-(n as i64 - 1), 2),
        scalar: Rational::new(1, 2),
    }
}

fn pochhammer(x: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for t in 0..j {
        acc *= x + Rational::int(t as i64);
    }
    acc
}

fn is_even_integer(q: &Rational) -> bool {
    q.is_integer() && q.numer().is_even()
}

/// Derives the moment identity table for dimension `n`, exponent `q`, covering
/// monomials x_n^{2j} for 2j <= max_power. Results are cached per argument
/// triple; derivation is deterministic, so concurrent duplicate work is benign.
pub fn derive_moment_identity(n: u32, q: &Rational, max_power: u32) -> Result<MomentIdentity> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "ambient dimension must be at least 2, got {n}"
        )));
    }
    if !q.is_positive() {
        return Err(Error::InvalidInput(format!("exponent must be positive, got {q}")));
    }
    if is_even_integer(q) {
        return Err(Error::InvalidInput(format!(
            "exponent {q} is an even integer; the spherical density is not unique there"
        )));
    }
    if !max_power.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "max power must be even, got {max_power}"
        )));
    }
    if max_power > MAX_DERIVATIVE_ORDER {
        return Err(Error::Unsupported(format!(
            "max power {max_power} exceeds the supported maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }

    let key = (n, q.to_string(), max_power);
    let cache = moment_cache();
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let derived = derive_uncached(n, q, max_power)?;
    cache.lock().unwrap().entry(key).or_insert_with(|| derived.clone());
    Ok(derived)
}

type MomentCache = Mutex<BTreeMap<(u32, String, u32), MomentIdentity>>;

fn moment_cache() -> &'static MomentCache {
    static CACHE: OnceLock<MomentCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn derive_uncached(n: u32, q: &Rational, max_power: u32) -> Result<MomentIdentity> {
    // Every row shares the j=0 prefactor A_{q/2}: differentiating the identity
    // for exponent q+2j introduces A_{(q+2j)/2} and a falling factorial, and
    // the ratio to A_{q/2} is the rational Pochhammer quotient rho_j below.
    let prefactor = {
        let raw = sphere_constant(n, &(q * Rational::new(1, 2)));
        raw.reduce().unwrap_or(raw)
    };
    let half = max_power / 2;
    let mut polys: Vec<UniPoly> = vec![UniPoly::one()];
    for j in 1..=half {
        let kj = (q + Rational::int(2 * j as i64)) * Rational::new(1, 2);
        let sd = sphere_power_derivative(&kj, 2 * j)?;
        let ff = abs_power_derivative_coefficient(&kj, 2 * j)?;
        let rho = pochhammer(&((q + Rational::one()) * Rational::new(1, 2)), j)
            / (pochhammer(&((q + Rational::int(n as i64)) * Rational::new(1, 2)), j) * ff);
        let mut num = UniPoly::monomial(rho.recip(), j as usize);
        for (i, p) in polys.iter().enumerate() {
            let c = sd.restricted_poly.coeff(i);
            if !c.is_zero() {
                num = &num - &p.scale(&c);
            }
        }
        let cjj = sd.restricted_poly.coeff(j as usize);
        if cjj.is_zero() {
            return Err(Error::Internal(format!(
                "sphere derivative of order {} lost its leading term",
                2 * j
            )));
        }
        let pj = num.scale(&cjj.recip());
        if pj.degree() != Some(j as usize) {
            return Err(Error::Internal(format!(
                "moment polynomial for power {} has degree {:?}, expected {}",
                2 * j,
                pj.degree(),
                j
            )));
        }
        polys.push(pj);
    }
    let entries = polys
        .into_iter()
        .enumerate()
        .map(|(j, polynomial)| MomentRow {
            power: 2 * j as u32,
            prefactor: prefactor.clone(),
            polynomial,
        })
        .collect();
    Ok(MomentIdentity { n, q: q.clone(), entries })
}
