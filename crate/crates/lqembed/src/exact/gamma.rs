//! Gamma-function values, exact where possible.
//!
//! Moment constants have the shape `scalar * gamma(a)/gamma(b) * pi^p`. The ratio
//! part collapses to an exact rational whenever `a - b` is an integer, by repeated
//! use of gamma(x+1) = x*gamma(x); that reduction is what makes the certificates
//! rational. Floating-point gamma is only used by the numerical harness.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::Error;

/// gamma(x) for x > 0 as `f64`, accurate to ~1e-13 relative error.
pub fn gamma_float(x: f64) -> Result<f64, Error> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "gamma_float requires a positive argument, got {x}"
        )));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// A constant of the form `scalar * gamma(gamma_num)/gamma(gamma_den) * pi^pi_power`,
/// all four parts exact rationals.
///
/// ```
/// use lqembed::exact::{GammaRatioConstant, Rational};
/// // gamma(15/4)/gamma(11/4) = 11/4
/// let c = GammaRatioConstant {
///     gamma_num: Rational::new(15, 4),
///     gamma_den: Rational::new(11, 4),
///     pi_power: Rational::zero(),
///     scalar: Rational::one(),
/// };
/// assert_eq!(c.to_rational().unwrap(), Rational::new(11, 4));
/// ```
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GammaRatioConstant {
    pub gamma_num: Rational,
    pub gamma_den: Rational,
    pub pi_power: Rational,
    pub scalar: Rational,
}

impl GammaRatioConstant {
    /// A plain rational, with the gamma ratio and pi power trivial.
    pub fn rational(scalar: Rational) -> Self {
        GammaRatioConstant {
            gamma_num: Rational::one(),
            gamma_den: Rational::one(),
            pi_power: Rational::zero(),
            scalar,
        }
    }

    /// gamma(a)/gamma(b) with no scalar or pi factor.
    pub fn ratio(gamma_num: Rational, gamma_den: Rational) -> Self {
        GammaRatioConstant {
            gamma_num,
            gamma_den,
            pi_power: Rational::zero(),
            scalar: Rational::one(),
        }
    }

    /// Whether the gamma ratio has been folded away.
    pub fn is_reduced(&self) -> bool {
        self.gamma_num == self.gamma_den
    }

    /// Folds the gamma ratio into the scalar via gamma(x+1) = x*gamma(x).
    ///
    /// Fails with [`Error::Unreducible`] when the two arguments do not differ by an
    /// integer, and with [`Error::InvalidInput`] when either argument is not
    /// positive. The pi power is untouched.
    pub fn reduce(&self) -> Result<GammaRatioConstant, Error> {
        if !self.gamma_num.is_positive() || !self.gamma_den.is_positive() {
            return Err(Error::InvalidInput(format!(
                "gamma arguments must be positive: gamma({})/gamma({})",
                self.gamma_num, self.gamma_den
            )));
        }
        let diff = &self.gamma_num - &self.gamma_den;
        let steps = diff
            .to_i64()
            .ok_or_else(|| {
                Error::Unreducible(format!(
                    "gamma({})/gamma({}) does not reduce: arguments differ by {}",
                    self.gamma_num, self.gamma_den, diff
                ))
            })?;
        if steps.unsigned_abs() > 100_000 {
            return Err(Error::InvalidInput(format!(
                "gamma arguments are {steps} apart; refusing to unroll the recurrence"
            )));
        }
        let mut scalar = self.scalar.clone();
        if steps >= 0 {
            // gamma(b + m)/gamma(b) = b (b+1) ... (b+m-1)
            let mut x = self.gamma_den.clone();
            for _ in 0..steps {
                scalar *= &x;
                x += Rational::one();
            }
        } else {
            let mut x = self.gamma_num.clone();
            for _ in 0..(-steps) {
                scalar = scalar / &x;
                x += Rational::one();
            }
        }
        Ok(GammaRatioConstant {
            gamma_num: Rational::one(),
            gamma_den: Rational::one(),
            pi_power: self.pi_power.clone(),
            scalar,
        })
    }

    /// Reduces and returns the value as a plain rational. Fails if the pi power is
    /// nonzero or the gamma ratio does not reduce.
    pub fn to_rational(&self) -> Result<Rational, Error> {
        let reduced = self.reduce()?;
        if !reduced.pi_power.is_zero() {
            return Err(Error::Unreducible(format!(
                "{self} carries pi^{}, not a rational",
                reduced.pi_power
            )));
        }
        Ok(reduced.scalar)
    }

    /// Numeric value of the constant.
    pub fn value_f64(&self) -> Result<f64, Error> {
        let ratio = gamma_float(self.gamma_num.to_f64())? / gamma_float(self.gamma_den.to_f64())?;
        Ok(self.scalar.to_f64() * ratio * std::f64::consts::PI.powf(self.pi_power.to_f64()))
    }
}

impl fmt::Display for GammaRatioConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.scalar != Rational::one() || (self.is_reduced() && self.pi_power.is_zero()) {
            parts.push(self.scalar.to_string());
        }
        if !self.is_reduced() {
            parts.push(format!("gamma({})/gamma({})", self.gamma_num, self.gamma_den));
        }
        if !self.pi_power.is_zero() {
            if self.pi_power == Rational::one() {
                parts.push("pi".to_string());
            } else {
                parts.push(format!("pi^({})", self.pi_power));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}
