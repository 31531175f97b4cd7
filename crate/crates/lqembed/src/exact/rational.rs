//! Arbitrary-precision rational numbers.
//!
//! Thin wrapper around [`num_rational::BigRational`] that fixes the invariants the
//! rest of the crate relies on: values are always fully reduced, the denominator is
//! always positive, parsing accepts only exact fraction syntax (`"3"`, `"-1/20"`),
//! and serialization uses decimal strings so arbitrarily large integers survive
//! JSON round-trips byte-for-byte.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// An exact rational number with arbitrary-precision numerator and denominator.
///
/// Always stored in reduced form with a positive denominator.
///
/// ```
/// use lqembed::exact::Rational;
/// let r = Rational::new(4, -6);
/// assert_eq!(r.to_string(), "-2/3");
/// assert_eq!(&r * &Rational::new(3, 2), Rational::int(-1));
/// ```
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr", into = "RationalRepr")]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds the integer `n`.
    pub fn int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den` from big integers. Panics if `den` is zero.
    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::from_integer(BigInt::from(1)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Reciprocal. Panics if `self` is zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power. Panics if `self` is zero and `exp < 0`.
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "zero to a negative power");
        }
        Rational(Pow::pow(&self.0, exp))
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Nearest `f64`, correct even when numerator and denominator separately
    /// overflow the double range (both are shifted down together first).
    pub fn to_f64(&self) -> f64 {
        let num = self.numer();
        let den = self.denom();
        let shift = (num.bits().max(den.bits()) as i64) - 900;
        if shift > 0 {
            let n = num >> (shift as u64);
            let d = den >> (shift as u64);
            n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
        } else {
            num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
        }
    }

    /// Decimal rendering with `sig` significant digits, rounding round-half-even
    /// in exact integer arithmetic. Plain notation for 1e-4 <= |v| < 1e16,
    /// scientific otherwise; trailing zeros in a fractional part are trimmed.
    ///
    /// ```
    /// use lqembed::exact::Rational;
    /// assert_eq!(Rational::new(1, 3).to_decimal_string(12), "0.333333333333");
    /// assert_eq!(Rational::new(1, 8).to_decimal_string(12), "0.125");
    /// assert_eq!(Rational::new(5, 4).to_decimal_string(2), "1.2");
    /// ```
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let (digits, exp10) = self.sig_digits_round_half_even(sig);
        format_sig_digits(self.is_negative(), &digits, exp10)
    }

    /// First `sig` significant decimal digits of |self| (round-half-even) and the
    /// power-of-ten exponent `e` with 10^e <= |self| < 10^(e+1) after rounding.
    /// The digit string has exactly `sig` characters. Panics on zero.
    pub(crate) fn sig_digits_round_half_even(&self, sig: usize) -> (String, i64) {
        assert!(!self.is_zero());
        let p = self.numer().abs();
        let q = self.denom().clone();
        // e = floor(log10(p/q)), computed exactly from digit counts plus one compare.
        let dp = p.to_string().len() as i64;
        let dq = q.to_string().len() as i64;
        let mut e = dp - dq;
        let ten = BigInt::from(10);
        let below = if e >= 0 {
            p < &q * ten.clone().pow(e as u32)
        } else {
            &p * ten.clone().pow((-e) as u32) < q
        };
        if below {
            e -= 1;
        }
        // Round p/q * 10^(sig-1-e) to an integer with exactly `sig` digits.
        let shift = (sig as i64) - 1 - e;
        let (num, den) = if shift >= 0 {
            (&p * ten.clone().pow(shift as u32), q)
        } else {
            (p, &q * ten.clone().pow((-shift) as u32))
        };
        let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
        let mut i = quot;
        let twice = &rem * BigInt::from(2);
        let round_up = match twice.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => num_integer::Integer::is_odd(&i),
        };
        if round_up {
            i += 1;
        }
        let mut digits = i.to_string();
        if digits.len() > sig {
            // Rounding carried past the leading digit (e.g. 0.999... -> 1.00...).
            debug_assert!(digits.len() == sig + 1 && digits.ends_with('0'));
            digits.truncate(sig);
            e += 1;
        }
        (digits, e)
    }
}

fn format_sig_digits(negative: bool, digits: &str, e: i64) -> String {
    let sign = if negative { "-" } else { "" };
    let sig = digits.len() as i64;
    let body = if (-4..16).contains(&e) {
        if e >= sig - 1 {
            // All digits land left of the decimal point.
            let zeros = "0".repeat((e - (sig - 1)) as usize);
            format!("{digits}{zeros}")
        } else if e >= 0 {
            let (int_part, frac_part) = digits.split_at((e + 1) as usize);
            let frac = frac_part.trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            let frac_full = format!("{zeros}{digits}");
            let frac = frac_full.trim_end_matches('0');
            format!("0.{frac}")
        }
    } else {
        let (head, tail) = digits.split_at(1);
        let frac = tail.trim_end_matches('0');
        if frac.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{frac}e{e}")
        }
    };
    format!("{sign}{body}")
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

// Debug delegates to Display; exact values read better as `3/7` than as nested
// struct dumps in assertion failures.
impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with optional leading sign. Decimal literals are
    /// rejected: thresholds must stay exact.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.contains('.') {
            return Err(Error::InvalidInput(format!(
                "'{s}' is a decimal literal; write an exact fraction such as 1/20"
            )));
        }
        let parse_int = |part: &str| -> Result<BigInt, Error> {
            BigInt::from_str(part)
                .map_err(|_| Error::InvalidInput(format!("'{s}' is not a rational number")))
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let num = parse_int(num.trim())?;
                let den = parse_int(den.trim())?;
                if den.is_zero() {
                    return Err(Error::InvalidInput(format!("'{s}' has a zero denominator")));
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl From<Rational> for RationalRepr {
    fn from(r: Rational) -> Self {
        RationalRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<RationalRepr> for Rational {
    type Error = String;

    fn try_from(repr: RationalRepr) -> Result<Self, String> {
        let num = BigInt::from_str(&repr.num).map_err(|_| format!("bad numerator '{}'", repr.num))?;
        let den = BigInt::from_str(&repr.den).map_err(|_| format!("bad denominator '{}'", repr.den))?;
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}
impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}
impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! forward_assign {
    ($trait:ident, $method:ident, $op:ident, $op_method:ident) => {
        impl $trait for Rational {
            fn $method(&mut self, rhs: Rational) {
                self.0 = $op::$op_method(&self.0, &rhs.0);
            }
        }
        impl $trait<&Rational> for Rational {
            fn $method(&mut self, rhs: &Rational) {
                self.0 = $op::$op_method(&self.0, &rhs.0);
            }
        }
    };
}

forward_assign!(AddAssign, add_assign, Add, add);
forward_assign!(SubAssign, sub_assign, Sub, sub);
forward_assign!(MulAssign, mul_assign, Mul, mul);

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
