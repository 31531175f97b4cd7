//! Independent floating-point cross-checks of the symbolic layer: sphere
//! quadrature for the representation identity, Gram-matrix positive
//! semidefiniteness of exp(-N^q), and finite-difference convexity probes.
//!
//! Everything here is deterministic for a fixed seed; exact certificates stay
//! authoritative, and a required check failing is a defect in the symbolic
//! layer, never something to smooth over.

pub mod convexity_fd;
pub mod gram;
pub mod quadrature;
pub mod report;
pub mod representation;

pub use convexity_fd::finite_difference_convexity;
pub use gram::gram_psd_check;
pub use quadrature::{build_quadrature, QuadratureScheme, Resolution, SphereQuadrature};
pub use report::ValidationReport;
pub use representation::validate_representation;

/// Relative tolerance for representation checks with a kinked integrand
/// (q < 1: |t|^q has unbounded derivative at the great circle).
pub const REPR_TOL_KINKED: f64 = 1e-3;
/// Relative tolerance for representation checks with integer q.
pub const REPR_TOL_SMOOTH: f64 = 1e-5;
/// Gram minimum-eigenvalue tolerance, scaled by the largest matrix entry.
pub const GRAM_EIG_TOL: f64 = 1e-8;
/// Slack allowed on midpoint convexity, absorbing rounding in the comparison.
pub const CONVEXITY_SLACK: f64 = 1e-12;
/// Relative tolerance on the quadrature total weight against 4 pi.
pub const QUAD_WEIGHT_TOL: f64 = 1e-10;
/// Relative tolerance on polynomial sphere moments.
pub const QUAD_MOMENT_TOL: f64 = 1e-10;
/// Relative tolerance on the half-power moment (kinked integrand).
pub const QUAD_HALF_POWER_TOL: f64 = 1e-6;
