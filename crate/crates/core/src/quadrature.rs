//! Quadrature rules on the unit spheres `S^{N-1}`.
//!
//! * `S^0`: counting measure on `{-1, +1}`.
//! * `S^1`: composite trapezoid in the angle, spectrally accurate for
//!   periodic integrands.
//! * `S^2`, `S^3`, ...: Gauss–Legendre in each polar angle times trapezoid
//!   in the azimuth, using the area element
//!   `sin^{N-2}(t_1) sin^{N-3}(t_2) ... sin(t_{N-2}) dt_1 ... dt_{N-1}`.
//! * Monte Carlo with antithetic pairs `(x, -x)` as a fallback in high
//!   dimension.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::degree::sphere_area;
use crate::rng;
use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Counting,
    TrapezoidCircle,
    ProductGauss,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    dim: usize,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
    scheme: Scheme,
    est_error: f64,
}

impl SphereQuadrature {
    /// `S^0 = {-1, +1}` with unit weights.
    pub fn counting() -> Self {
        Self::finish(
            1,
            vec![vec![-1.0], vec![1.0]],
            vec![1.0, 1.0],
            Scheme::Counting,
        )
    }

    /// `m` equally spaced nodes on `S^1`.
    pub fn circle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::invalid("circle rule needs at least 3 nodes"));
        }
        let w = TAU / m as f64;
        let nodes = (0..m)
            .map(|k| {
                let t = k as f64 * w;
                vec![t.cos(), t.sin()]
            })
            .collect();
        Ok(Self::finish(2, nodes, vec![w; m], Scheme::TrapezoidCircle))
    }

    /// Product rule on `S^{dim-1}` (`dim >= 3`): `polar` Gauss nodes in each of
    /// the `dim - 2` polar angles, `azimuth` trapezoid nodes in the last.
    pub fn product_gauss(dim: usize, polar: usize, azimuth: usize) -> Result<Self> {
        if dim < 3 {
            return Err(Error::invalid("product rule needs dimension at least 3"));
        }
        if polar == 0 || azimuth < 3 {
            return Err(Error::invalid(
                "product rule needs polar >= 1 and azimuth >= 3 nodes",
            ));
        }
        let (gx, gw) = gauss_legendre(polar);
        // Map [-1, 1] onto [0, pi].
        let angles: Vec<f64> = gx.iter().map(|x| 0.5 * PI * (x + 1.0)).collect();
        let aw: Vec<f64> = gw.iter().map(|w| 0.5 * PI * w).collect();
        let levels = dim - 2;
        let total = polar.pow(levels as u32) * azimuth;
        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut idx = vec![0usize; levels];
        loop {
            let mut weight = TAU / azimuth as f64;
            let mut sin_prod = 1.0;
            let mut head = Vec::with_capacity(dim);
            for (level, &i) in idx.iter().enumerate() {
                let t = angles[i];
                head.push(sin_prod * t.cos());
                weight *= aw[i] * t.sin().powi((dim - 2 - level) as i32);
                sin_prod *= t.sin();
            }
            for k in 0..azimuth {
                let phi = k as f64 * TAU / azimuth as f64;
                let mut x = head.clone();
                x.push(sin_prod * phi.cos());
                x.push(sin_prod * phi.sin());
                nodes.push(x);
                weights.push(weight);
            }
            // Odometer over the polar indices.
            let mut level = levels;
            loop {
                if level == 0 {
                    return Ok(Self::finish(dim, nodes, weights, Scheme::ProductGauss));
                }
                level -= 1;
                idx[level] += 1;
                if idx[level] < polar {
                    break;
                }
                idx[level] = 0;
            }
        }
    }

    /// `2 * pairs` uniform nodes in antithetic pairs, each weighted `A / M`.
    pub fn monte_carlo(dim: usize, pairs: usize, seed: u64) -> Result<Self> {
        if dim == 0 || pairs == 0 {
            return Err(Error::invalid(
                "Monte Carlo rule needs dimension >= 1 and at least one pair",
            ));
        }
        let mut rng = rng::seeded(seed);
        let area = sphere_area(dim)?;
        let m = 2 * pairs;
        let mut nodes = Vec::with_capacity(m);
        for _ in 0..pairs {
            let x = rng::unit_vector(&mut rng, dim);
            let y: Vec<f64> = x.iter().map(|v| -v).collect();
            nodes.push(x);
            nodes.push(y);
        }
        Ok(Self::finish(
            dim,
            nodes,
            vec![area / m as f64; m],
            Scheme::MonteCarlo,
        ))
    }

    /// Default rule per dimension: counting, 256-node trapezoid, 64 x 128
    /// product Gauss on `S^2`, 32 x 32 x 64 on `S^3`, and 20000 antithetic
    /// pairs beyond.
    pub fn default_for(dim: usize) -> Result<Self> {
        match dim {
            0 => Err(Error::invalid("sphere dimension N must be at least 1")),
            1 => Ok(Self::counting()),
            2 => Self::circle(256),
            3 => Self::product_gauss(3, 64, 128),
            4 => Self::product_gauss(4, 32, 64),
            _ => Self::monte_carlo(dim, 20_000, 0),
        }
    }

    fn finish(dim: usize, nodes: Vec<Vec<f64>>, weights: Vec<f64>, scheme: Scheme) -> Self {
        let area = sphere_area(dim).expect("dim >= 1");
        let sum: f64 = weights.iter().sum();
        let est_error = (sum - area).abs() + 16.0 * f64::EPSILON * area;
        Self {
            dim,
            nodes,
            weights,
            scheme,
            est_error,
        }
    }

    /// Ambient dimension `N`; the rule lives on `S^{N-1}`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Error estimate of the rule on the constant integrand.
    pub fn est_error(&self) -> f64 {
        self.est_error
    }

    /// Weighted sum of `f` over the nodes, with an error estimate: the rule's
    /// own estimate scaled by `max |f|`, or `3 sigma / sqrt(M)` times the
    /// area for Monte Carlo.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> (f64, f64) {
        let values: Vec<f64> = self.nodes.iter().map(|x| f(x)).collect();
        let value: f64 = values.iter().zip(&self.weights).map(|(v, w)| v * w).sum();
        let err = match self.scheme {
            Scheme::MonteCarlo => {
                let m = values.len() as f64;
                let mean = values.iter().sum::<f64>() / m;
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (m - 1.0).max(1.0);
                3.0 * var.sqrt() / m.sqrt() * sphere_area(self.dim).unwrap_or(0.0)
            }
            _ => self.est_error * values.iter().fold(0.0f64, |a, v| a.max(v.abs())),
        };
        (value, err)
    }
}
