//! Numeric surface integration over the unit sphere with unnormalized measure
//! (total weight 4 pi at n=3, matching the convention the Gamma-ratio
//! constants are stated in).
//!
//! n=3 uses a product grid: Gauss-Legendre in the polar cosine, split into
//! [-1,0] and [0,1] panels so integrands kinked on the equator keep full
//! accuracy, times a uniform azimuthal grid (trapezoid = exact for
//! trigonometric polynomials). n>3 falls back to Monte Carlo with equal
//! surface-area weights; there is no scheme for n=2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::gamma_float;
use crate::{Error, Result};

/// Node counts: (theta, phi) for the n=3 product grid; mc_points for n>3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub theta: u32,
    pub phi: u32,
    pub mc_points: u32,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution { theta: 200, phi: 400, mc_points: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadratureScheme {
    /// theta Gauss-Legendre nodes in the polar cosine (split at the equator)
    /// times phi uniform azimuthal nodes.
    ProductAngle { theta: u32, phi: u32 },
    /// Normalized Gaussian directions with equal surface-area weights.
    MonteCarlo { points: u32, seed: u64 },
}

/// Nodes and weights on the unit sphere in R^n.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub n: u32,
    pub scheme: QuadratureScheme,
    /// Flattened coordinates, n per node.
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub total_weight: f64,
}

impl SphereQuadrature {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points
            .chunks_exact(self.n as usize)
            .zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes().map(|(p, w)| w * f(p)).sum()
    }
}

/// Builds the scheme for dimension n; the seed only matters for Monte Carlo.
pub fn build_quadrature(n: u32, res: Resolution, seed: u64) -> Result<SphereQuadrature> {
    match n {
        0 | 1 => Err(Error::InvalidInput(format!(
            "no sphere to integrate over in dimension {n}"
        ))),
        2 => Err(Error::Unsupported(
            "no quadrature scheme for n=2; numeric validation is skipped there".to_string(),
        )),
        3 => product_grid(res.theta, res.phi),
        _ => monte_carlo(n, res.mc_points, seed),
    }
}

fn product_grid(theta: u32, phi: u32) -> Result<SphereQuadrature> {
    if theta < 8 || phi < 8 {
        return Err(Error::InvalidInput(format!(
            "grid needs at least 8 nodes per axis, got {theta}x{phi}"
        )));
    }
    if !theta.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "polar node count must be even to split at the equator, got {theta}"
        )));
    }
    let half = (theta / 2) as usize;
    let (xs, ws) = legendre_nodes(half);
    let phi_weight = 2.0 * std::f64::consts::PI / phi as f64;

    let mut points = Vec::with_capacity(3 * theta as usize * phi as usize);
    let mut weights = Vec::with_capacity(theta as usize * phi as usize);
    let mut total = 0.0;
    for (a, b) in [(-1.0f64, 0.0f64), (0.0, 1.0)] {
        let mid = 0.5 * (a + b);
        let rad = 0.5 * (b - a);
        for (x, w) in xs.iter().zip(ws.iter()) {
            let z: f64 = mid + rad * x;
            let wz = w * rad;
            let r = (1.0 - z * z).max(0.0).sqrt();
            for k in 0..phi {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / phi as f64;
                points.extend_from_slice(&[r * ang.cos(), r * ang.sin(), z]);
                let weight = wz * phi_weight;
                weights.push(weight);
                total += weight;
            }
        }
    }
    Ok(SphereQuadrature {
        n: 3,
        scheme: QuadratureScheme::ProductAngle { theta, phi },
        points,
        weights,
        total_weight: total,
    })
}

/// Gauss-Legendre nodes and weights on (-1, 1), by Newton iteration from the
/// Chebyshev initial guess.
fn legendre_nodes(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(k);
    let mut ws = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Recurrence for P_k and P_{k-1} at x.
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=k {
                let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = pj;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        xs.push(x);
        ws.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (xs, ws)
}

fn monte_carlo(n: u32, points: u32, seed: u64) -> Result<SphereQuadrature> {
    if points < 8 {
        return Err(Error::InvalidInput(format!(
            "Monte Carlo needs at least 8 points, got {points}"
        )));
    }
    let area = sphere_area(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(points as usize * n as usize);
    for _ in 0..points {
        coords.extend_from_slice(&random_unit_vector(&mut rng, n as usize));
    }
    let w = area / points as f64;
    Ok(SphereQuadrature {
        n,
        scheme: QuadratureScheme::MonteCarlo { points, seed },
        points: coords,
        weights: vec![w; points as usize],
        total_weight: area,
    })
}

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
pub fn sphere_area(n: u32) -> Result<f64> {
    Ok(2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_float(n as f64 / 2.0)?)
}

/// One standard normal draw (Box-Muller).
pub(crate) fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u1: f64 = rng.gen();
        if u1 > 0.0 {
            let u2: f64 = rng.gen();
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

pub(crate) fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| standard_normal(rng)).collect()
}

pub(crate) fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}
