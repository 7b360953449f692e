//! Complex projective space `CP^n`: homogeneous points, the affine chart
//! atlas `{U_j}`, transition maps, the Hopf projection, a projective
//! distance, and a smooth embedding into real Euclidean space built from
//! bump functions.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::linalg::norm2;
use crate::{Error, Result};

/// Relative tie tolerance when picking the largest-modulus coordinate.
const PIVOT_TIE: f64 = 1e-12;

/// A point of `CP^n` held by its canonical representative: unit Euclidean
/// norm, with the first largest-modulus coordinate rotated onto the positive
/// real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    homog: Vec<C64>,
}

impl ProjectivePoint {
    pub fn new(homog: Vec<C64>) -> Result<Self> {
        if homog.is_empty() {
            return Err(Error::invalid(
                "a projective point needs at least one coordinate",
            ));
        }
        if homog.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("homogeneous coordinates must be finite"));
        }
        let norm = norm2(&homog);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("the zero vector has no projective class"));
        }
        Ok(Self {
            homog: normalize(homog, norm),
        })
    }

    /// Coordinate point `(0 : ... : 1 : ... : 0)` with the 1 in slot `k`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(alloc::format!(
                "basis index {k} exceeds n = {n}"
            )));
        }
        let mut v = alloc::vec![C64::new(0.0, 0.0); n + 1];
        v[k] = C64::new(1.0, 0.0);
        Ok(Self { homog: v })
    }

    /// Dimension `n` of the ambient `CP^n`.
    pub fn dim(&self) -> usize {
        self.homog.len() - 1
    }

    pub fn homog(&self) -> &[C64] {
        &self.homog
    }

    /// Chart in which this point sits most comfortably (largest coordinate).
    pub fn pivot_chart(&self) -> ChartId {
        ChartId(pivot_index(&self.homog))
    }
}

fn pivot_index(v: &[C64]) -> usize {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter()
        .position(|z| z.norm() >= max * (1.0 - PIVOT_TIE))
        .unwrap_or(0)
}

fn normalize(mut v: Vec<C64>, norm: f64) -> Vec<C64> {
    // Leave vectors that are already unit length within rounding untouched so
    // normalizing is idempotent bit for bit.
    if (norm - 1.0).abs() > 2.0 * v.len() as f64 * f64::EPSILON {
        for z in &mut v {
            *z /= norm;
        }
    }
    let k = pivot_index(&v);
    let p = v[k];
    if p.im != 0.0 || p.re < 0.0 {
        let phase = p.conj() / p.norm();
        for z in &mut v {
            *z *= phase;
        }
        v[k] = C64::new(p.norm(), 0.0);
    }
    v
}

/// Index `j` of the affine chart `U_j = {z_j != 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartId(usize);

impl ChartId {
    pub fn new(j: usize, n: usize) -> Result<Self> {
        if j > n {
            return Err(Error::invalid(alloc::format!(
                "chart index {j} exceeds n = {n}"
            )));
        }
        Ok(Self(j))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Coordinates `w_k = z_k / z_j` (`k != j`, increasing `k`) in chart `U_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineCoords {
    chart: ChartId,
    w: Vec<C64>,
}

impl AffineCoords {
    pub fn new(chart: ChartId, w: Vec<C64>) -> Result<Self> {
        if chart.0 > w.len() {
            return Err(Error::invalid(alloc::format!(
                "chart {} does not exist in dimension {}",
                chart.0,
                w.len()
            )));
        }
        if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("affine coordinates must be finite"));
        }
        Ok(Self { chart, w })
    }

    pub fn origin(chart: ChartId, n: usize) -> Result<Self> {
        Self::new(chart, alloc::vec![C64::new(0.0, 0.0); n])
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn coords(&self) -> &[C64] {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// Homogeneous lift with `z_j = 1`.
    pub fn lift(&self) -> Vec<C64> {
        let j = self.chart.0;
        let mut z = Vec::with_capacity(self.w.len() + 1);
        z.extend_from_slice(&self.w[..j]);
        z.push(C64::new(1.0, 0.0));
        z.extend_from_slice(&self.w[j..]);
        z
    }

    /// Position of homogeneous index `k` (`k != chart`) inside `coords()`.
    pub fn slot(&self, k: usize) -> usize {
        slot(self.chart.0, k)
    }
}

#[inline]
pub(crate) fn slot(chart: usize, k: usize) -> usize {
    debug_assert_ne!(chart, k);
    if k < chart {
        k
    } else {
        k - 1
    }
}

/// `phi_j(p) = (z_0/z_j, ..., z_n/z_j)` with the unit slot dropped.
pub fn to_chart(p: &ProjectivePoint, j: ChartId, tol_chart: f64) -> Result<AffineCoords> {
    let n = p.dim();
    if j.0 > n {
        return Err(Error::invalid(alloc::format!(
            "chart index {} exceeds n = {n}",
            j.0
        )));
    }
    let zj = p.homog[j.0];
    // p is stored with unit norm.
    if zj.norm() <= tol_chart {
        return Err(Error::ChartDomain {
            chart: j.0,
            modulus: zj.norm(),
        });
    }
    let w = p
        .homog
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j.0)
        .map(|(_, z)| z / zj)
        .collect();
    Ok(AffineCoords { chart: j, w })
}

/// Inverse of [`to_chart`].
pub fn from_chart(w: &AffineCoords) -> ProjectivePoint {
    ProjectivePoint::new(w.lift()).expect("a chart lift has a unit coordinate")
}

/// `psi_ij = phi_j o phi_i^{-1}` applied to `w` in chart `i = w.chart()`:
/// divide through by the coordinate in the `j` slot and put its reciprocal
/// in the `i` slot.
pub fn transition(w: &AffineCoords, j: ChartId, tol_chart: f64) -> Result<AffineCoords> {
    let i = w.chart.0;
    let n = w.w.len();
    if j.0 > n {
        return Err(Error::invalid(alloc::format!(
            "chart index {} exceeds n = {n}",
            j.0
        )));
    }
    if i == j.0 {
        return Ok(w.clone());
    }
    let c = w.w[slot(i, j.0)];
    let scale = (1.0 + w.w.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
    if c.norm() <= tol_chart * scale {
        return Err(Error::ChartDomain {
            chart: j.0,
            modulus: c.norm() / scale,
        });
    }
    let inv = c.inv();
    let out = (0..=n)
        .filter(|&k| k != j.0)
        .map(|k| if k == i { inv } else { w.w[slot(i, k)] * inv })
        .collect();
    Ok(AffineCoords { chart: j, w: out })
}

/// `C^{n+1} \ {0} -> S^{2n+1} -> CP^n`.
pub fn hopf_project(v: &[C64]) -> Result<(Vec<C64>, ProjectivePoint)> {
    let norm = norm2(v);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::invalid("Hopf projection of the zero vector"));
    }
    let sphere: Vec<C64> = v.iter().map(|z| z / norm).collect();
    let class = ProjectivePoint::new(v.to_vec())?;
    Ok((sphere, class))
}

/// Geodesic Fubini–Study distance `arccos |<p, q>|`, in `[0, pi/2]`.
///
/// Evaluated as `atan2(|q - <p,q> p|, |<p,q>|)`, which keeps full accuracy
/// near zero where `arccos` loses half the digits.
pub fn proj_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::invalid(alloc::format!(
            "dimension mismatch: CP^{} vs CP^{}",
            p.dim(),
            q.dim()
        )));
    }
    let inner: C64 = p
        .homog
        .iter()
        .zip(&q.homog)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let perp: f64 = q
        .homog
        .iter()
        .zip(&p.homog)
        .map(|(b, a)| (b - inner * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(perp.atan2(inner.norm()))
}

/// `B(x) = exp(-(x^2 + 1) / (x^2 - 1)^2)` on `|x| < 1`, zero elsewhere.
pub fn bump(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 0.0;
    }
    let x2 = x * x;
    let d = x2 - 1.0;
    (-(x2 + 1.0) / (d * d)).exp()
}

/// Smooth step built from [`bump`]: 0 for `x <= 0`, 1 for `x >= 1`.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let up = bump(x - 1.0);
        up / (up + bump(x))
    }
}

/// Partition value `lambda_j(p)`.
///
/// With `s_j = |z_j|^2 / |z|^2`, `lambda_j = 1` on `K_j = {s_j >= 0.6/(n+1)}`
/// and vanishes for `s_j <= 0.2/(n+1)`. The pivot coordinate always has
/// `s_j >= 1/(n+1)`, so the `K_j` cover `CP^n`.
pub fn partition_value(p: &ProjectivePoint, j: ChartId) -> f64 {
    let n1 = p.homog.len() as f64;
    let s = p.homog[j.0].norm_sqr();
    let lo = 0.2 / n1;
    let hi = 0.6 / n1;
    smooth_step((s - lo) / (hi - lo))
}

/// Length of the embedding vector, `(n + 1)(2n + 1)`.
pub fn embedding_dim(n: usize) -> usize {
    (n + 1) * (2 * n + 1)
}

/// `gamma(p) = (sigma_0(p), ..., sigma_n(p), lambda_0(p), ..., lambda_n(p))`
/// with `sigma_j = lambda_j * phi_j` realified as `(re, im)` per coordinate
/// and zero outside the support of `lambda_j`.
pub fn embed(p: &ProjectivePoint) -> Vec<f64> {
    let n = p.dim();
    let mut out = Vec::with_capacity(embedding_dim(n));
    let lambdas: Vec<f64> = (0..=n).map(|j| partition_value(p, ChartId(j))).collect();
    for (j, &lam) in lambdas.iter().enumerate() {
        if lam == 0.0 {
            out.extend(core::iter::repeat_n(0.0, 2 * n));
            continue;
        }
        let zj = p.homog[j];
        for (k, z) in p.homog.iter().enumerate() {
            if k == j {
                continue;
            }
            let w = z / zj;
            out.push(lam * w.re);
            out.push(lam * w.im);
        }
    }
    out.extend(lambdas);
    out
}
