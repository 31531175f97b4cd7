//! Bivariate polynomials: a main variable whose coefficients are polynomials in
//! `lambda`. Index `k` of the coefficient vector is the main-variable power.
//!
//! The candidate-generation step of the window scans needs gcd, square-free part,
//! and resultants taken in the main variable while the `lambda` coefficients stay
//! exact, so those operations work over the polynomial ring directly: primitive
//! pseudo-remainder sequences for gcd, Sylvester matrix plus Bareiss fraction-free
//! elimination for resultants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<TermRepr>", into = "Vec<TermRepr>")]
pub struct BivariatePoly(Vec<UniPoly>);

impl BivariatePoly {
    pub fn new(coeffs: Vec<UniPoly>) -> Self {
        let mut p = BivariatePoly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(UniPoly::is_zero) {
            self.0.pop();
        }
    }

    pub fn zero() -> Self {
        BivariatePoly(Vec::new())
    }

    pub fn one() -> Self {
        BivariatePoly(vec![UniPoly::one()])
    }

    /// A polynomial in `lambda` only, degree zero in the main variable.
    pub fn from_lambda(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    /// A polynomial in the main variable with rational coefficients.
    pub fn from_main(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in the main variable.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Coefficient of the `k`-th main-variable power, as a polynomial in `lambda`.
    pub fn coeff(&self, k: usize) -> UniPoly {
        self.0.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.0
    }

    pub fn leading_coeff(&self) -> Option<&UniPoly> {
        self.0.last()
    }

    /// Substitutes a rational for the main variable, leaving a `lambda` polynomial.
    pub fn eval_main(&self, t: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.0.iter().rev() {
            acc = &acc.scale(t) + c;
        }
        acc
    }

    /// Substitutes a rational for `lambda`, leaving a main-variable polynomial.
    pub fn eval_lambda(&self, lambda: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| c.eval(lambda)).collect())
    }

    pub fn eval(&self, t: &Rational, lambda: &Rational) -> Rational {
        self.eval_main(t).eval(lambda)
    }

    pub fn derivative_main(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Rational::int(i as i64 + 1)))
                .collect(),
        )
    }

    /// Multiplies by the main variable to the `k`-th power.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UniPoly::zero(); k];
        coeffs.extend(self.0.iter().cloned());
        BivariatePoly(coeffs)
    }

    /// Multiplies every coefficient by a `lambda` polynomial.
    pub fn mul_lambda(&self, p: &UniPoly) -> Self {
        Self::new(self.0.iter().map(|c| c * p).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Monic gcd of the `lambda` coefficients (zero polynomial for the zero input).
    pub fn content(&self) -> UniPoly {
        self.0
            .iter()
            .fold(UniPoly::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content; scalar factors in `lambda` remain.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(
            self.0
                .iter()
                .map(|p| p.div_exact(&c).expect("content divides"))
                .collect(),
        )
    }

    /// Primitive part scaled so the leading coefficient's top `lambda` coefficient
    /// is positive; a canonical form for comparing gcd outputs.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let pp = self.primitive_part();
        let top = pp
            .leading_coeff()
            .and_then(UniPoly::leading_coeff)
            .expect("nonzero")
            .clone();
        let s = if top.is_negative() {
            -Rational::one() / top.abs()
        } else {
            Rational::one() / top
        };
        Self::new(pp.0.iter().map(|c| c.scale(&s)).collect())
    }

    /// Exact division in the main variable; coefficients must divide exactly in
    /// the `lambda` ring at every step, otherwise the division is not exact.
    pub fn div_exact_main(&self, divisor: &Self) -> Result<Self, Error> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Internal("division by the zero polynomial".to_string()))?;
        let dlc = divisor.leading_coeff().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![UniPoly::zero(); self.0.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let q = rem.leading_coeff().unwrap().div_exact(dlc)?;
            let k = dr - dd;
            rem = &rem - &divisor.mul_lambda(&q).shift(k);
            if rem.degree() == Some(dr) {
                return Err(Error::Internal(
                    "exact bivariate division failed to reduce the degree".to_string(),
                ));
            }
            quot[k] = q;
        }
        if !rem.is_zero() {
            return Err(Error::Internal(
                "exact bivariate division left a remainder".to_string(),
            ));
        }
        Ok(Self::new(quot))
    }

    /// Gcd in the main variable via a primitive pseudo-remainder sequence,
    /// returned in normalized form (content in `lambda` stripped).
    pub fn gcd_main(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (mut f, mut g) = (self.primitive_part(), other.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            if g.is_zero() {
                return f.normalized();
            }
            let r = pseudo_rem(&f, &g);
            f = g;
            g = if r.is_zero() { Self::zero() } else { r.primitive_part() };
        }
    }

    /// Square-free part in the main variable (multiple factors reduced to single).
    pub fn square_free_part_main(&self) -> Result<Self, Error> {
        if self.degree().is_none_or(|d| d == 0) {
            return Ok(self.normalized());
        }
        let pp = self.primitive_part();
        let g = pp.gcd_main(&pp.derivative_main());
        if g.degree() == Some(0) {
            return Ok(pp);
        }
        pp.div_exact_main(&g)
    }

    /// Resultant with respect to the main variable: the Sylvester determinant,
    /// a polynomial in `lambda`. Zero iff the inputs share a main-variable factor
    /// (or one of them is zero).
    pub fn resultant_main(&self, other: &Self) -> Result<UniPoly, Error> {
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero());
        }
        let m = self.degree().unwrap();
        let n = other.degree().unwrap();
        if m == 0 && n == 0 {
            return Ok(UniPoly::one());
        }
        if m == 0 {
            return Ok(self.coeff(0).pow(n as u32));
        }
        if n == 0 {
            return Ok(other.coeff(0).pow(m as u32));
        }
        let size = m + n;
        let mut mat = vec![vec![UniPoly::zero(); size]; size];
        for (i, row) in mat.iter_mut().enumerate().take(n) {
            for j in 0..=m {
                row[i + j] = self.coeff(m - j);
            }
        }
        for (i, row) in mat.iter_mut().skip(n).enumerate() {
            for j in 0..=n {
                row[i + j] = other.coeff(n - j);
            }
        }
        bareiss_det(mat)
    }

    pub fn display_with(&self, main: &str, lambda: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var_part = match k {
                0 => String::new(),
                1 => main.to_string(),
                _ => format!("{main}^{k}"),
            };
            let coeff_str = c.display_with(lambda);
            let multi_term = c.coeffs().iter().filter(|r| !r.is_zero()).count() > 1;
            let negative = c.leading_coeff().is_some_and(Rational::is_negative);
            let term = if k == 0 {
                if (multi_term || negative) && !parts.is_empty() {
                    format!("({coeff_str})")
                } else {
                    coeff_str
                }
            } else if c == &UniPoly::one() {
                var_part
            } else if c.degree() == Some(0) && c.coeff(0).is_integer() && c.coeff(0).is_positive()
            {
                format!("{coeff_str}*{var_part}")
            } else {
                format!("({coeff_str})*{var_part}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Classical pseudo-remainder in the main variable; the inputs need not be
/// primitive, and the result is only meaningful up to `lambda` content.
fn pseudo_rem(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading_coeff().unwrap().clone();
        r = &r.mul_lambda(&lb) - &b.mul_lambda(&lr).shift(dr - db);
        debug_assert!(r.degree().is_none_or(|d| d < dr));
    }
    r
}

/// Fraction-free determinant over the `lambda` polynomial ring. Every division
/// is exact by the Bareiss identity.
fn bareiss_det(mut mat: Vec<Vec<UniPoly>>) -> Result<UniPoly, Error> {
    let size = mat.len();
    if size == 0 {
        return Ok(UniPoly::one());
    }
    let mut sign = 1i32;
    let mut prev = UniPoly::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&l| !mat[l][k].is_zero()) {
                Some(l) => {
                    mat.swap(k, l);
                    sign = -sign;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("u", "lambda"))
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One serialized term: main-variable power, `lambda` power, coefficient.
#[derive(Serialize, Deserialize)]
struct TermRepr {
    u: usize,
    lambda: usize,
    coeff: Rational,
}

impl From<BivariatePoly> for Vec<TermRepr> {
    fn from(p: BivariatePoly) -> Self {
        let mut out = Vec::new();
        for (k, c) in p.0.iter().enumerate() {
            for (j, r) in c.coeffs().iter().enumerate() {
                if !r.is_zero() {
                    out.push(TermRepr { u: k, lambda: j, coeff: r.clone() });
                }
            }
        }
        out
    }
}

impl From<Vec<TermRepr>> for BivariatePoly {
    fn from(terms: Vec<TermRepr>) -> Self {
        let mut coeffs: Vec<Vec<Rational>> = Vec::new();
        for t in terms {
            if coeffs.len() <= t.u {
                coeffs.resize(t.u + 1, Vec::new());
            }
            let row = &mut coeffs[t.u];
            if row.len() <= t.lambda {
                row.resize(t.lambda + 1, Rational::zero());
            }
            row[t.lambda] = &row[t.lambda] + &t.coeff;
        }
        BivariatePoly::new(coeffs.into_iter().map(UniPoly::new).collect())
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let len = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        BivariatePoly::new(out)
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let len = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        BivariatePoly::new(out)
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BivariatePoly::new(out)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly::new(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BivariatePoly {
            type Output = BivariatePoly;
            fn $method(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BivariatePoly> for BivariatePoly {
            type Output = BivariatePoly;
            fn $method(self, rhs: &BivariatePoly) -> BivariatePoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<BivariatePoly> for &BivariatePoly {
            type Output = BivariatePoly;
            fn $method(self, rhs: BivariatePoly) -> BivariatePoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
