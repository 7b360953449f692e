//! Tangent fields on the unit sphere `S^2` in `R^3` and their tubular
//! extension.
//!
//! The shell `W_eps = {1 - eps <= |q| <= 1 + eps}` is a tubular
//! neighbourhood of `S^2` with nearest-point projection `q / |q|`. A tangent
//! field `v` extends to `w(q) = (q - pi(q)) + v(pi(q))`, which points out of
//! the shell on both boundary spheres and vanishes only at zeros of `v`.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::fields::chart_values;
use crate::matrix::ComplexMatrix;
use crate::projective::{AffineCoords, ChartId};
use crate::{Error, Result};

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn normalize(a: &Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// Tube radius around the unit sphere; must stay below its reach, 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubularConfig {
    epsilon: f64,
}

impl TubularConfig {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid(alloc::format!(
                "tube radius {epsilon} must lie in (0, 1)"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Distance from `q` to the sphere.
    pub fn distance(&self, q: &Vec3) -> f64 {
        (norm(q) - 1.0).abs()
    }

    fn check(&self, q: &Vec3) -> Result<()> {
        let d = self.distance(q);
        if d > self.epsilon * (1.0 + 1e-12) || !d.is_finite() {
            return Err(Error::OutsideTube {
                distance: d,
                epsilon: self.epsilon,
            });
        }
        Ok(())
    }

    /// `h(q) = (q - pi(q)) / eps`, the outward unit normal on the boundary of the tube.
    pub fn boundary_normal(&self, q: &Vec3) -> Result<Vec3> {
        self.check(q)?;
        Ok(scale(&sub(q, &nearest_point(q)), 1.0 / self.epsilon))
    }
}

/// Nearest point on the unit sphere.
pub fn nearest_point(q: &Vec3) -> Vec3 {
    normalize(q)
}

/// `w(q) = (q - pi(q)) + v(pi(q))` on the closed shell.
pub fn tubular_extend(cfg: &TubularConfig, v: impl Fn(&Vec3) -> Vec3, q: &Vec3) -> Result<Vec3> {
    cfg.check(q)?;
    let p = nearest_point(q);
    Ok(add(&sub(q, &p), &v(&p)))
}

/// `e_3 - (e_3 . p) p`: flows from the south pole to the north pole, with a
/// zero of index +1 at each pole.
pub fn north_south_field(p: &Vec3) -> Vec3 {
    [-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]]
}

/// Inverse stereographic parametrization from the north pole:
/// `w = x + iy -> (2x, 2y, |w|^2 - 1) / (|w|^2 + 1)`, with its real Jacobian
/// columns `d/dx`, `d/dy`.
fn stereo(x: f64, y: f64) -> (Vec3, [Vec3; 2]) {
    let r2 = x * x + y * y;
    let d = 1.0 + r2;
    let d2 = d * d;
    let p = [2.0 * x / d, 2.0 * y / d, (r2 - 1.0) / d];
    let dx = [2.0 / d - 4.0 * x * x / d2, -4.0 * x * y / d2, 4.0 * x / d2];
    let dy = [-4.0 * x * y / d2, 2.0 / d - 4.0 * y * y / d2, 4.0 * y / d2];
    (p, [dx, dy])
}

/// The field of a 2x2 matrix on `CP^1`, carried to `S^2`.
///
/// Chart `U_0` is identified with `S^2` minus the north pole by inverse
/// stereographic projection of `w = z_1 / z_0`; chart `U_1` with `u = 1/w`
/// covers the rest. The chart field is pushed forward by the real Jacobian of
/// the parametrization, so the result is the same in either chart.
pub fn cp1_field_on_sphere(m: &ComplexMatrix, p: &Vec3) -> Result<Vec3> {
    if m.order() != 2 {
        return Err(Error::invalid("CP^1 fields come from 2x2 matrices"));
    }
    let p = normalize(p);
    if p[2] <= 0.0 {
        let w = C64::new(p[0], p[1]) / (1.0 - p[2]);
        let coords = AffineCoords::new(ChartId::new(0, 1)?, alloc::vec![w])?;
        let f = chart_values(m, &coords)[0];
        let (_, [dx, dy]) = stereo(w.re, w.im);
        Ok(add(&scale(&dx, f.re), &scale(&dy, f.im)))
    } else {
        let u = C64::new(p[0], -p[1]) / (1.0 + p[2]);
        let coords = AffineCoords::new(ChartId::new(1, 1)?, alloc::vec![u])?;
        let f = chart_values(m, &coords)[0];
        // Chart 1 parametrization is (a, b) -> R P(a, -b), R = diag(1, 1, -1).
        let (_, [dx, dy]) = stereo(u.re, -u.im);
        let col_a = [dx[0], dx[1], -dx[2]];
        let col_b = [-dy[0], -dy[1], dy[2]];
        Ok(add(&scale(&col_a, f.re), &scale(&col_b, f.im)))
    }
}

/// Point of `S^2` corresponding to the chart-0 coordinate `w` of `CP^1`.
pub fn cp1_to_sphere(w: C64) -> Vec3 {
    stereo(w.re, w.im).0
}

/// Orthonormal tangent frame `(e1, e2)` at `p` with `e1 x e2 = p`.
pub fn tangent_frame(p: &Vec3) -> (Vec3, Vec3) {
    let seed = if p[0].abs() < 0.6 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize(&sub(&seed, &scale(p, dot(&seed, p))));
    let e2 = cross(p, &e1);
    (e1, e2)
}

/// Point reached from `p` along the great circle with initial velocity `t` (unit tangent).
pub fn geodesic(p: &Vec3, t: &Vec3, s: f64) -> Vec3 {
    add(&scale(p, s.cos()), &scale(t, s.sin()))
}

/// Central-difference derivative of a tangent field in the oriented frame at
/// `p`: entry `(i, j)` is `e_i . dv(e_j)`.
pub fn tangent_jacobian(v: &impl Fn(&Vec3) -> Vec3, p: &Vec3, h: f64) -> [[f64; 2]; 2] {
    let (e1, e2) = tangent_frame(p);
    let frame = [e1, e2];
    let mut jac = [[0.0; 2]; 2];
    for (j, ej) in frame.iter().enumerate() {
        let d = scale(
            &sub(&v(&geodesic(p, ej, h)), &v(&geodesic(p, ej, -h))),
            0.5 / h,
        );
        for (i, ei) in frame.iter().enumerate() {
            jac[i][j] = dot(ei, &d);
        }
    }
    jac
}

/// An isolated zero of a tangent field on `S^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereZero {
    pub point: Vec3,
    /// Determinant of the tangent Jacobian in an oriented frame.
    pub jac_det: f64,
    /// Sign of `jac_det`, or 0 when the zero is degenerate.
    pub index: i32,
}

const SCAN_THETA: usize = 48;
const SCAN_PHI: usize = 96;
const FD_STEP: f64 = 1e-5;
/// Polished zeros closer than this are one zero; well below the grid spacing.
const MERGE_RADIUS: f64 = 1e-3;

/// Locates the zeros of a tangent field by a latitude–longitude scan for
/// local minima of `|v|`, followed by Newton iteration on the sphere.
pub fn scan_zeros(v: &impl Fn(&Vec3) -> Vec3) -> Vec<SphereZero> {
    use core::f64::consts::PI;
    let point = |i: usize, k: usize| {
        let th = (i as f64 + 0.5) * PI / SCAN_THETA as f64;
        let ph = k as f64 * 2.0 * PI / SCAN_PHI as f64;
        [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
    };
    let mut mags = alloc::vec![0.0; SCAN_THETA * SCAN_PHI];
    for i in 0..SCAN_THETA {
        for k in 0..SCAN_PHI {
            mags[i * SCAN_PHI + k] = norm(&v(&point(i, k)));
        }
    }
    let vmax = mags.iter().cloned().fold(0.0, f64::max);
    let mut zeros: Vec<SphereZero> = Vec::new();
    for i in 0..SCAN_THETA {
        for k in 0..SCAN_PHI {
            let m = mags[i * SCAN_PHI + k];
            let mut is_min = true;
            for di in [-1i64, 0, 1] {
                for dk in [-1i64, 0, 1] {
                    if di == 0 && dk == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= SCAN_THETA as i64 {
                        continue;
                    }
                    let kk = (k as i64 + dk).rem_euclid(SCAN_PHI as i64) as usize;
                    if mags[ii as usize * SCAN_PHI + kk] < m {
                        is_min = false;
                    }
                }
            }
            if !is_min {
                continue;
            }
            let Some(p) = polish_zero(v, point(i, k), vmax) else {
                continue;
            };
            if zeros
                .iter()
                .any(|z| norm(&sub(&z.point, &p)) < MERGE_RADIUS)
            {
                continue;
            }
            let jac = tangent_jacobian(v, &p, FD_STEP);
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            // Measured against the field's size: a zero of higher order has a
            // uniformly small Jacobian.
            let index = if det.abs() <= 1e-8 * (vmax * vmax).max(f64::MIN_POSITIVE) {
                0
            } else if det > 0.0 {
                1
            } else {
                -1
            };
            zeros.push(SphereZero {
                point: p,
                jac_det: det,
                index,
            });
        }
    }
    zeros
}

fn polish_zero(v: &impl Fn(&Vec3) -> Vec3, start: Vec3, vmax: f64) -> Option<Vec3> {
    let mut p = start;
    for _ in 0..60 {
        let f = v(&p);
        if norm(&f) <= 1e-13 * vmax {
            return Some(p);
        }
        let (e1, e2) = tangent_frame(&p);
        let jac = tangent_jacobian(v, &p, FD_STEP);
        let rhs = [-dot(&e1, &f), -dot(&e2, &f)];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let d1 = (rhs[0] * jac[1][1] - jac[0][1] * rhs[1]) / det;
        let d2 = (jac[0][0] * rhs[1] - jac[1][0] * rhs[0]) / det;
        let step = (d1 * d1 + d2 * d2).sqrt();
        if step > 0.5 {
            return None;
        }
        p = normalize(&add(&p, &add(&scale(&e1, d1), &scale(&e2, d2))));
    }
    (norm(&v(&p)) <= 1e-10 * vmax).then_some(p)
}
