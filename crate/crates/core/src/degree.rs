//! Differential-form calculus on spheres and Brouwer degree by quadrature.
//!
//! The volume form of `S^{N-1}` is `omega = *tau` with
//! `tau = sum_i x_i dx_i`, i.e.
//! `omega = sum_i (-1)^{i-1} x_i dx_1 ^ ... ^ (omit dx_i) ^ ... ^ dx_N`.
//! Evaluated on tangent vectors `t_1, ..., t_{N-1}` at `x` it is the
//! determinant `det[x, t_1, ..., t_{N-1}]`. The degree of a smooth map
//! `G: S^{N-1} -> S^{N-1}` is `(1 / A(S^{N-1})) * integral of G^* omega`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::linalg;
use crate::quadrature::SphereQuadrature;
use crate::sphere::{self, SphereZero, TubularConfig, Vec3};
use crate::{Error, Result};

/// Step for the central-difference pushforwards in pullback evaluation.
pub const PULLBACK_STEP: f64 = 1e-5;

/// `*dx_i = sign * dx_1 ^ ... ^ (omit dx_i) ^ ... ^ dx_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgeDual {
    pub sign: i8,
    /// 1-based index of the omitted differential.
    pub omitted: usize,
}

/// Hodge dual of the coordinate 1-form `dx_i` on `R^N`; the sign is `(-1)^(i-1)`.
pub fn hodge_star_1form(dim: usize, i: usize) -> Result<HodgeDual> {
    if i == 0 || i > dim {
        return Err(Error::invalid(alloc::format!(
            "index {i} outside 1..={dim}"
        )));
    }
    let sign = if (i - 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(HodgeDual { sign, omitted: i })
}

/// `A(S^{N-1})` from the closed forms: with `N = 2a` or `2a + 1`,
/// `2 pi^a / (a-1)!` for even `N` and `2^(a+1) pi^a / (1*3*...*(N-2))` for odd `N`.
pub fn sphere_area(dim: usize) -> Result<f64> {
    if dim == 0 {
        return Err(Error::invalid("sphere dimension N must be at least 1"));
    }
    let a = (dim / 2) as i32;
    if dim.is_multiple_of(2) {
        let fact: f64 = (1..a).map(f64::from).product();
        Ok(2.0 * PI.powi(a) / fact)
    } else {
        let odd: f64 = (1..=dim.saturating_sub(2))
            .step_by(2)
            .map(|k| k as f64)
            .product();
        Ok(2.0f64.powi(a + 1) * PI.powi(a) / odd)
    }
}

/// `Vol(B^N) = A(S^{N-1}) / N`.
pub fn ball_volume(dim: usize) -> Result<f64> {
    Ok(sphere_area(dim)? / dim as f64)
}

/// Orthonormal tangent vectors at the unit vector `x`, by Gram–Schmidt of the
/// coordinate axes (skipping the axis most aligned with `x`).
pub fn tangent_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let skip = (0..n)
        .max_by(|&a, &b| {
            x[a].abs()
                .partial_cmp(&x[b].abs())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n.saturating_sub(1));
    for k in (0..n).filter(|&k| k != skip) {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for u in core::iter::once(x).chain(basis.iter().map(|b| b.as_slice())) {
            let d = linalg::dot_real(&v, u);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= d * ui;
            }
        }
        let nv = linalg::norm2_real(&v);
        v.iter_mut().for_each(|vi| *vi /= nv);
        basis.push(v);
    }
    basis
}

fn det_columns(cols: &[Vec<f64>]) -> f64 {
    let n = cols.len();
    let mut m = vec![0.0; n * n];
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[r * n + c] = *v;
        }
    }
    linalg::det(&m, n)
}

fn great_circle(x: &[f64], t: &[f64], s: f64) -> Vec<f64> {
    let (sn, cs) = s.sin_cos();
    x.iter().zip(t).map(|(a, b)| cs * a + sn * b).collect()
}

/// `omega_y(v_1, ..., v_{N-1})` from the coordinate expression
/// `sum_i (-1)^(i-1) y_i dx_1 ^ ... ^ (omit dx_i) ^ ... ^ dx_N`, each wedge
/// term being the minor of `[v_1 ... v_{N-1}]` with row `i` deleted.
pub fn omega_on(y: &[f64], vectors: &[Vec<f64>]) -> f64 {
    let n = y.len();
    debug_assert_eq!(vectors.len() + 1, n);
    let k = n - 1;
    let mut total = 0.0;
    for (i, yi) in y.iter().enumerate() {
        let star = hodge_star_1form(n, i + 1).expect("index in range");
        let minor = if k == 0 {
            1.0
        } else {
            let mut m = Vec::with_capacity(k * k);
            for r in (0..n).filter(|&r| r != i) {
                m.extend(vectors.iter().map(|v| v[r]));
            }
            linalg::det(&m, k)
        };
        total += star.sign as f64 * yi * minor;
    }
    total
}

/// Density of `G^* omega` at `x` relative to the oriented area element:
/// `omega_{G(x)}(dG t_1, ..., dG t_{N-1})` divided by the orientation
/// `det[x, t_1, ..., t_{N-1}] = +-1` of the frame. Pushforwards `dG t_k` are
/// central differences along great circles.
pub fn pullback_density(g: &impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> f64 {
    let basis = tangent_basis(x);
    let pushed: Vec<Vec<f64>> = basis
        .iter()
        .map(|t| {
            let fwd = g(&great_circle(x, t, h));
            let bwd = g(&great_circle(x, t, -h));
            fwd.iter()
                .zip(&bwd)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect()
        })
        .collect();
    omega_on(&g(x), &pushed) / frame_orientation(x, &basis)
}

fn frame_orientation(x: &[f64], basis: &[Vec<f64>]) -> f64 {
    let mut cols = Vec::with_capacity(x.len());
    cols.push(x.to_vec());
    cols.extend(basis.iter().cloned());
    det_columns(&cols)
}

/// Density of `omega` itself relative to the oriented area element; 1 up to
/// rounding on the unit sphere.
pub fn omega_density(x: &[f64]) -> f64 {
    let basis = tangent_basis(x);
    omega_on(x, &basis) / frame_orientation(x, &basis)
}

/// Weighted sum of an integrand over the rule's nodes.
pub fn integrate_form_on_sphere(q: &SphereQuadrature, f: impl Fn(&[f64]) -> f64) -> f64 {
    q.integrate(f).0
}

/// `integral of omega over S^{N-1}` together with the rule's error estimate.
pub fn omega_integral(q: &SphereQuadrature) -> (f64, f64) {
    q.integrate(omega_density)
}

/// Normalized degree integral of a sphere map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeEstimate {
    pub raw: f64,
    pub snapped: i64,
    pub gap: f64,
    pub nodes: usize,
}

impl DegreeEstimate {
    pub fn from_raw(raw: f64, nodes: usize) -> Self {
        let snapped = raw.round();
        Self {
            raw,
            snapped: snapped as i64,
            gap: (raw - snapped).abs(),
            nodes,
        }
    }

    /// The integer degree, or an error when the integral is not near one.
    pub fn resolve(self, snap_tol: f64) -> Result<i64> {
        if self.gap <= snap_tol && self.raw.is_finite() {
            Ok(self.snapped)
        } else {
            Err(Error::UnresolvedDegree {
                raw: self.raw,
                gap: self.gap,
            })
        }
    }
}

/// `mu = (1 / A(S^{N-1})) * integral of G^* omega`, unsnapped.
pub fn map_degree_raw(
    g: &impl Fn(&[f64]) -> Vec<f64>,
    q: &SphereQuadrature,
) -> Result<DegreeEstimate> {
    let area = sphere_area(q.dim())?;
    let (value, _) = q.integrate(|x| pullback_density(g, x, PULLBACK_STEP));
    Ok(DegreeEstimate::from_raw(value / area, q.len()))
}

/// Degree of `G`, failing with [`Error::UnresolvedDegree`] when the
/// integral is more than `snap_tol` from an integer.
pub fn map_degree(
    g: &impl Fn(&[f64]) -> Vec<f64>,
    q: &SphereQuadrature,
    snap_tol: f64,
) -> Result<DegreeEstimate> {
    let est = map_degree_raw(g, q)?;
    est.resolve(snap_tol)?;
    Ok(est)
}

/// Both sides of the index-sum identity for a tangent field on `S^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfLemmaCheck {
    /// Degree of `w / |w|` over both boundary spheres of the shell.
    pub lhs: i64,
    /// Sum of indices over the zeros of the field.
    pub rhs: i64,
    pub outer: DegreeEstimate,
    pub inner: DegreeEstimate,
    pub zeros: Vec<SphereZero>,
}

/// Computes the Gauss-map degree of the tubular extension over the boundary
/// of `W_eps` and the index sum of the field's zeros.
///
/// The outer sphere `|q| = 1 + eps` carries the orientation induced by
/// `x -> (1 + eps) x`; the inner sphere has its outward normal pointing
/// toward the origin, so its contribution enters with a minus sign.
pub fn hopf_lemma_check(
    field: &impl Fn(&Vec3) -> Vec3,
    cfg: &TubularConfig,
    q: &SphereQuadrature,
    snap_tol: f64,
) -> Result<HopfLemmaCheck> {
    if q.dim() != 3 {
        return Err(Error::invalid("the shell lives in R^3; use a rule on S^2"));
    }
    let zeros = sphere::scan_zeros(field);
    if zeros.iter().any(|z| z.index == 0) {
        return Err(Error::Unsupported("field has a degenerate zero".into()));
    }
    let rhs = zeros.iter().map(|z| z.index as i64).sum();
    let eps = cfg.epsilon();
    let gauss = |radius: f64| {
        move |x: &[f64]| -> Vec<f64> {
            let qpt = [radius * x[0], radius * x[1], radius * x[2]];
            let w = sphere::tubular_extend(cfg, field, &qpt).unwrap_or([f64::NAN; 3]);
            sphere::normalize(&w).to_vec()
        }
    };
    let outer = map_degree_raw(&gauss(1.0 + eps), q)?;
    let inner = map_degree_raw(&gauss(1.0 - eps), q)?;
    let lhs = DegreeEstimate::from_raw(outer.raw - inner.raw, q.len()).resolve(snap_tol)?;
    Ok(HopfLemmaCheck {
        lhs,
        rhs,
        outer,
        inner,
        zeros,
    })
}

/// Winding of `v / |v|` along the unit circle for a planar field `v` on the
/// closed disk.
pub fn disk_boundary_degree(
    v: impl Fn(&[f64; 2]) -> [f64; 2],
    q: &SphereQuadrature,
    snap_tol: f64,
) -> Result<DegreeEstimate> {
    if q.dim() != 2 {
        return Err(Error::invalid("disk boundary rule must live on S^1"));
    }
    let g = |x: &[f64]| {
        let f = v(&[x[0], x[1]]);
        let n = (f[0] * f[0] + f[1] * f[1]).sqrt();
        vec![f[0] / n, f[1] / n]
    };
    map_degree(&g, q, snap_tol)
}

/// `integral of omega` over the spherical cap of half-angle `half_angle`
/// around `axis`, through the parametrization
/// `x(t, p) = cos t a + sin t (cos p b_1 + sin p b_2)` with Gauss–Legendre in
/// `t` and trapezoid in `p`.
pub fn cap_integral(axis: &Vec3, half_angle: f64, polar: usize, azimuth: usize) -> f64 {
    let a = sphere::normalize(axis);
    let (b1, b2) = sphere::tangent_frame(&a);
    let (gx, gw) = crate::quadrature::gauss_legendre(polar);
    let dp = 2.0 * PI / azimuth as f64;
    let mut total = 0.0;
    for (x, w) in gx.iter().zip(&gw) {
        let t = 0.5 * half_angle * (x + 1.0);
        let wt = 0.5 * half_angle * w;
        let (st, ct) = t.sin_cos();
        for k in 0..azimuth {
            let (sp, cp) = (k as f64 * dp).sin_cos();
            let radial = [
                cp * b1[0] + sp * b2[0],
                cp * b1[1] + sp * b2[1],
                cp * b1[2] + sp * b2[2],
            ];
            let pt = [
                ct * a[0] + st * radial[0],
                ct * a[1] + st * radial[1],
                ct * a[2] + st * radial[2],
            ];
            let d_t = [
                -st * a[0] + ct * radial[0],
                -st * a[1] + ct * radial[1],
                -st * a[2] + ct * radial[2],
            ];
            let tang = [
                -sp * b1[0] + cp * b2[0],
                -sp * b1[1] + cp * b2[1],
                -sp * b1[2] + cp * b2[2],
            ];
            let d_p = [st * tang[0], st * tang[1], st * tang[2]];
            let vol = sphere::dot(&pt, &sphere::cross(&d_t, &d_p));
            total += wt * dp * vol;
        }
    }
    total
}
