//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficient `i` multiplies `x^i`. The coefficient vector never has trailing
//! zeros, so the zero polynomial is the empty vector and `degree()` is `None`
//! exactly for zero. Serialization is the plain coefficient array.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    /// Builds a polynomial from coefficients in degree order, trimming trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly(coeffs);
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn x() -> Self {
        UniPoly::monomial(Rational::one(), 1)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::int(i as i64) * c)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dlc = divisor
            .leading_coeff()
            .expect("division by the zero polynomial")
            .clone();
        let dd = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let k = rd - dd;
            let c = rem.leading_coeff().unwrap() / &dlc;
            for (j, b) in divisor.0.iter().enumerate() {
                let t = &c * b;
                rem.0[k + j] -= t;
            }
            rem.trim();
            quot[k] = c;
        }
        (UniPoly::new(quot), rem)
    }

    /// Division that must leave no remainder; a nonzero remainder means the caller's
    /// algebra is broken, so it surfaces as an internal error.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly, Error> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!(
                "exact polynomial division left remainder {r}"
            )))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }

    /// `self / gcd(self, self')`: same roots, all simple. Monic. Panics on zero.
    pub fn square_free_part(&self) -> UniPoly {
        assert!(!self.is_zero(), "square-free part of the zero polynomial");
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
            .expect("gcd must divide the polynomial")
            .monic()
    }

    /// Writes `self = content * q` with `q` primitive over the integers (coprime
    /// coefficients, positive leading coefficient). Returns `(coeffs of q, content)`;
    /// the zero polynomial yields `([], 0)`.
    pub fn primitive_integer_coeffs(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::zero());
        }
        let mut lcm = BigInt::from(1);
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::from(0);
        for c in &ints {
            gcd = gcd.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            gcd = -gcd;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &gcd).collect();
        (prim, Rational::from_big(gcd, lcm))
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let var_part = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            if d == 0 {
                out.push_str(&mag.to_string());
            } else if mag == Rational::one() {
                out.push_str(&var_part);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}*{var_part}"));
            } else {
                out.push_str(&format!("({mag})*{var_part}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<Rational>> for UniPoly {
    fn from(coeffs: Vec<Rational>) -> Self {
        UniPoly::new(coeffs)
    }
}

impl From<UniPoly> for Vec<Rational> {
    fn from(p: UniPoly) -> Self {
        p.0
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
