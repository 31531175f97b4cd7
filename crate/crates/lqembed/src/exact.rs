//! Exact arithmetic: rationals, gamma-ratio constants, polynomials in one and
//! two variables, Sturm-based real root isolation, and algebraic numbers.
//!
//! Everything downstream that claims a sign, an ordering, or a root count goes
//! through this module; floating point appears only in display helpers and the
//! numerical cross-checks.

pub mod algebraic;
pub mod bipoly;
pub mod gamma;
pub mod rational;
pub mod sturm;
pub mod unipoly;

pub use algebraic::{
    exact_real_roots, smallest_positive_root, solve_quadratic_positive_root, AlgebraicNumber,
    ExactValue,
};
pub use bipoly::BivariatePoly;
pub use gamma::{gamma_float, GammaRatioConstant};
pub use rational::Rational;
pub use sturm::{
    isolate_real_roots, isolate_roots, sturm_nonneg, RootInterval, SturmOutcome,
};
pub use unipoly::UniPoly;
