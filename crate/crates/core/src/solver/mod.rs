//! Zeros of the matrix field on `CP^n`, i.e. eigenpairs.
//!
//! [`solve`] tracks `n + 1` paths of the homotopy
//! `A(t) = (1 - t) gamma L + t M` from the zeros of the exemplar
//! `L = diag(0, ..., n)` (the coordinate points), polishes the endpoints with
//! Newton's method in affine charts, merges duplicates, and certifies the
//! run when the indices of the distinct zeros add up to `n + 1`.
//!
//! Nondegenerate zeros of a holomorphic field always have index +1. A
//! degenerate zero on `CP^1` gets its index from the winding number of the
//! chart field around it; on higher-dimensional spaces its index is left
//! unknown and the run is not certified.

mod hedgehog;
mod poly;
mod track;

pub use hedgehog::{hedgehog_solve, RealEigenpair};
pub use poly::{poly_roots, PolyRoot, PolyRoots};
pub use track::{HomotopyPath, PathStatus};

use alloc::string::String;
use alloc::vec::Vec;
use core::time::Duration;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::degree::{self, DegreeEstimate};
use crate::fields::{chart_jacobian, chart_values, jacobian_det};
use crate::linalg::{norm2, Lu};
use crate::matrix::ComplexMatrix;
use crate::projective::{
    proj_distance, to_chart, transition, AffineCoords, ChartId, ProjectivePoint,
};
use crate::quadrature::SphereQuadrature;
use crate::rng;
use crate::{Error, Result, Tolerances};

/// Knobs for [`solve_with`]. Defaults follow the documented tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tol: Tolerances,
    /// Additional homotopy runs with a fresh random phase when a run comes up short.
    pub max_retries: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub newton_max_iter: usize,
    /// Trapezoid nodes for local winding numbers on `CP^1`.
    pub winding_nodes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            max_retries: 5,
            initial_step: 0.05,
            min_step: 1e-6,
            max_step: 0.1,
            newton_max_iter: 100,
            winding_nodes: 256,
        }
    }
}

/// Coordinates beyond this modulus trigger a switch to the pivot chart.
const REPIVOT: f64 = 10.0;

/// Newton stalls about `sqrt(eps)` away from a double zero, leaving a
/// Jacobian determinant near `1e-8`. A zero reached by several paths of one
/// run is treated as multiple when its determinant is below this (relative)
/// bound.
const MULTIPLE_DET: f64 = 1e-5;

/// A zero of the field: an eigen-direction with its eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    pub point: ProjectivePoint,
    pub chart: ChartId,
    pub coords: AffineCoords,
    pub lambda: C64,
    /// `|A z - lambda z| / (|A|_F |z|)`.
    pub residual: f64,
    /// Determinant of the holomorphic chart Jacobian at the zero.
    pub jac_det: C64,
    /// +1 for nondegenerate zeros, the local winding for degenerate zeros on
    /// `CP^1`, `None` when unknown.
    pub index: Option<i64>,
    pub degenerate: bool,
    pub path_id: usize,
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// SHA-256 of the matrix order and entries, hex encoded.
    pub matrix_hash: String,
    pub order: usize,
    pub zeros: Vec<ZeroRecord>,
    pub total_index: i64,
    pub certified: bool,
    pub continuum: bool,
    pub seed: u64,
    /// Filled in by callers that have a clock.
    pub wall_time: Option<Duration>,
    /// Homotopy runs performed.
    pub attempts: usize,
    pub paths: Vec<HomotopyPath>,
    pub notes: Vec<String>,
}

/// [`solve_with`] using the default configuration.
pub fn solve(m: &ComplexMatrix, seed: u64) -> SolveReport {
    solve_with(m, seed, &SolverConfig::default())
}

pub fn matrix_hash(m: &ComplexMatrix) -> String {
    use core::fmt::Write;
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update((m.order() as u64).to_le_bytes());
    for z in m.entries() {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Finds every zero of the field of `m` on `CP^n`.
pub fn solve_with(m: &ComplexMatrix, seed: u64, cfg: &SolverConfig) -> SolveReport {
    let order = m.order();
    let n = order - 1;
    let tol = &cfg.tol;
    let mut report = SolveReport {
        matrix_hash: matrix_hash(m),
        order,
        zeros: Vec::new(),
        total_index: 0,
        certified: false,
        continuum: false,
        seed,
        wall_time: None,
        attempts: 0,
        paths: Vec::new(),
        notes: Vec::new(),
    };

    let norm = m.frobenius_norm();
    let mu = m.trace() / order as f64;
    let deviation = m
        .entries()
        .iter()
        .enumerate()
        .map(|(k, z)| {
            if k / order == k % order {
                (z - mu).norm_sqr()
            } else {
                z.norm_sqr()
            }
        })
        .sum::<f64>()
        .sqrt();
    if order > 1 && deviation <= tol.tol_scalar * norm {
        report.continuum = true;
        report.notes.push(alloc::format!(
            "matrix is scalar (mu = {} {:+}i): every point of CP^{n} is a zero, so there is a continuum of zeros and no index count",
            mu.re, mu.im
        ));
        for k in 0..order {
            let point = ProjectivePoint::basis(n, k).expect("k <= n");
            let chart = ChartId::new(k, n).expect("k <= n");
            let coords = AffineCoords::origin(chart, n).expect("finite");
            let z = coords.lift();
            report.zeros.push(ZeroRecord {
                lambda: mu,
                residual: eigen_residual(m, &z, mu),
                jac_det: C64::new(0.0, 0.0),
                index: None,
                degenerate: true,
                path_id: k,
                point,
                chart,
                coords,
            });
        }
        return report;
    }

    if order == 1 {
        let chart = ChartId::new(0, 0).expect("chart 0");
        let coords = AffineCoords::origin(chart, 0).expect("empty");
        let lambda = m.get(0, 0);
        report.zeros.push(ZeroRecord {
            point: ProjectivePoint::basis(0, 0).expect("basis"),
            chart,
            coords,
            lambda,
            residual: 0.0,
            jac_det: C64::new(1.0, 0.0),
            index: Some(1),
            degenerate: false,
            path_id: 0,
        });
        report.total_index = 1;
        report.certified = true;
        return report;
    }

    let exemplar = ComplexMatrix::exemplar(order).expect("order >= 1");
    let mut rng = rng::seeded(seed);
    let mut path_id = 0;
    let mut union: Vec<ZeroRecord> = Vec::new();
    let scale = norm.powi(n as i32);
    for attempt in 0..=cfg.max_retries {
        report.attempts = attempt + 1;
        let gamma = rng::unit_phase(&mut rng);
        // Each run is judged on its own; zeros hit by several of its paths
        // are multiple.
        let mut run: Vec<(ZeroRecord, usize)> = Vec::new();
        for k in 0..order {
            let (mut path, end) = track::track_path(m, &exemplar, gamma, k, cfg);
            path.path_id = path_id;
            path.attempt = attempt;
            match newton_polish_with(m, &end, cfg) {
                Some(mut rec) => {
                    rec.path_id = path_id;
                    let hit = run.iter_mut().find(|(z, _)| {
                        proj_distance(&z.point, &rec.point)
                            .map(|d| d < tol.tol_dedup)
                            .unwrap_or(false)
                    });
                    match hit {
                        Some((_, hits)) => {
                            *hits += 1;
                            path.status = PathStatus::Merged;
                        }
                        None => {
                            // A path that stalled short of t = 1 may still polish.
                            path.status = PathStatus::Converged;
                            run.push((rec, 1));
                        }
                    }
                }
                None => path.status = PathStatus::Diverged,
            }
            report.paths.push(path);
            path_id += 1;
        }
        let mut zeros: Vec<ZeroRecord> = run
            .into_iter()
            .map(|(mut z, hits)| {
                if hits > 1 && !z.degenerate && z.jac_det.norm() <= MULTIPLE_DET * scale {
                    z.degenerate = true;
                    z.index = None;
                }
                z
            })
            .collect();
        assign_degenerate_indices(m, &mut zeros, cfg);
        report.zeros = zeros.clone();
        if summarize(&mut report, tol) {
            break;
        }
        for z in zeros {
            let known = union.iter().any(|u| {
                proj_distance(&u.point, &z.point)
                    .map(|d| d < tol.tol_dedup)
                    .unwrap_or(false)
            });
            if !known {
                union.push(z);
            }
        }
    }
    if !report.certified {
        report.zeros = union;
        summarize(&mut report, tol);
    }
    report.zeros.sort_by(|a, b| {
        a.lambda
            .re
            .total_cmp(&b.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
            .then_with(|| {
                for (x, y) in a.point.homog().iter().zip(b.point.homog()) {
                    let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                    if o.is_ne() {
                        return o;
                    }
                }
                core::cmp::Ordering::Equal
            })
    });
    if !report.certified {
        let unknown = report.zeros.iter().filter(|z| z.index.is_none()).count();
        report.notes.push(alloc::format!(
            "not certified: index sum {} over {} zeros ({} of unknown index) after {} homotopy runs, expected {}",
            report.total_index,
            report.zeros.len(),
            unknown,
            report.attempts,
            order
        ));
    }
    report
}

/// Updates the index total and certification flag; true when certified.
fn summarize(report: &mut SolveReport, tol: &Tolerances) -> bool {
    report.total_index = report.zeros.iter().filter_map(|z| z.index).sum();
    let all_known = report.zeros.iter().all(|z| z.index.is_some());
    let residuals_ok = report.zeros.iter().all(|z| z.residual <= tol.tol_accept);
    report.certified = all_known && residuals_ok && report.total_index == report.order as i64;
    report.certified
}

fn assign_degenerate_indices(m: &ComplexMatrix, zeros: &mut [ZeroRecord], cfg: &SolverConfig) {
    if m.order() != 2 {
        return;
    }
    let Ok(q) = SphereQuadrature::circle(cfg.winding_nodes) else {
        return;
    };
    for i in 0..zeros.len() {
        if !zeros[i].degenerate || zeros[i].index.is_some() {
            continue;
        }
        let center = &zeros[i].coords;
        let mut radius: f64 = 0.1;
        for (k, other) in zeros.iter().enumerate() {
            if k == i {
                continue;
            }
            if let Ok(w) = to_chart(&other.point, center.chart(), cfg.tol.tol_chart) {
                radius = radius.min((w.coords()[0] - center.coords()[0]).norm() / 3.0);
            }
        }
        let index = local_winding_cp1_estimate(m, center, radius, &q)
            .and_then(|e| e.resolve(cfg.tol.snap_tol))
            .ok();
        zeros[i].index = index;
    }
}

fn eigen_residual(m: &ComplexMatrix, z: &[C64], lambda: C64) -> f64 {
    let az = m.mul_vec(z);
    let r: Vec<C64> = az.iter().zip(z).map(|(a, b)| a - lambda * b).collect();
    let denom = m.frobenius_norm() * norm2(z);
    if denom == 0.0 {
        norm2(&r)
    } else {
        norm2(&r) / denom
    }
}

fn max_modulus(w: &AffineCoords) -> f64 {
    w.coords().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Moves `w` to the chart of its largest homogeneous coordinate when some
/// affine coordinate has grown past the re-pivot threshold.
pub(crate) fn repivot(w: AffineCoords, tol_chart: f64) -> AffineCoords {
    if max_modulus(&w) <= REPIVOT {
        return w;
    }
    let p = ProjectivePoint::new(w.lift()).expect("lift has a unit coordinate");
    transition(&w, p.pivot_chart(), tol_chart).unwrap_or(w)
}

/// [`newton_polish_with`] using the default configuration.
pub fn newton_polish(m: &ComplexMatrix, w0: &AffineCoords) -> Option<ZeroRecord> {
    newton_polish_with(m, w0, &SolverConfig::default())
}

/// Damped Newton iteration on the chart field from `w0`.
///
/// Returns `None` when the iteration does not reach a point whose eigen
/// residual passes `tol_accept`. A zero whose chart Jacobian determinant is
/// below `tol_degen * |A|_F^n` comes back with `degenerate = true` and no
/// index.
pub fn newton_polish_with(
    m: &ComplexMatrix,
    w0: &AffineCoords,
    cfg: &SolverConfig,
) -> Option<ZeroRecord> {
    let order = m.order();
    if w0.dim() + 1 != order {
        return None;
    }
    let n = order - 1;
    let tol = &cfg.tol;
    let mut w = repivot(w0.clone(), tol.tol_chart);
    for _ in 0..cfg.newton_max_iter {
        let f = chart_values(m, &w);
        let fnorm = norm2(&f);
        if fnorm == 0.0 {
            break;
        }
        let jac = chart_jacobian(m, &w);
        let rhs: Vec<C64> = f.iter().map(|v| -v).collect();
        let Some(step) = Lu::new(&jac, n).solve(&rhs) else {
            break;
        };
        let mut damping = 1.0;
        let mut next = None;
        for _ in 0..12 {
            let cand: Vec<C64> = w
                .coords()
                .iter()
                .zip(&step)
                .map(|(a, d)| a + d * damping)
                .collect();
            let Ok(cand) = AffineCoords::new(w.chart(), cand) else {
                break;
            };
            if norm2(&chart_values(m, &cand)) < fnorm {
                next = Some(cand);
                break;
            }
            damping *= 0.5;
        }
        let Some(cand) = next else { break };
        let moved = norm2(&step) * damping;
        let size = 1.0 + norm2(cand.coords());
        w = repivot(cand, tol.tol_chart);
        if moved <= 1e-12 * size {
            break;
        }
    }
    zero_record(m, &w, cfg)
}

fn zero_record(m: &ComplexMatrix, w: &AffineCoords, cfg: &SolverConfig) -> Option<ZeroRecord> {
    let n = m.order() - 1;
    let z = w.lift();
    let j = w.chart().index();
    let lambda = m.mul_vec(&z)[j] / z[j];
    let residual = eigen_residual(m, &z, lambda);
    if !(residual <= cfg.tol.tol_accept) {
        return None;
    }
    let jac_det = jacobian_det(&chart_jacobian(m, w), n);
    let scale = m.frobenius_norm().powi(n as i32);
    let degenerate = !(jac_det.norm() > cfg.tol.tol_degen * scale);
    Some(ZeroRecord {
        point: ProjectivePoint::new(z).ok()?,
        chart: w.chart(),
        coords: w.clone(),
        lambda,
        residual,
        jac_det,
        index: if degenerate { None } else { Some(1) },
        degenerate,
        path_id: 0,
    })
}

/// Winding number of `f` around 0 along the circle `|w - center| = radius`,
/// computed as the degree of `f / |f|` on `S^1`.
pub fn winding_number(
    f: impl Fn(C64) -> C64,
    center: C64,
    radius: f64,
    q: &SphereQuadrature,
    snap_tol: f64,
) -> Result<i64> {
    winding_estimate(f, center, radius, q)?.resolve(snap_tol)
}

/// The unsnapped degree integral behind [`winding_number`].
pub fn winding_estimate(
    f: impl Fn(C64) -> C64,
    center: C64,
    radius: f64,
    q: &SphereQuadrature,
) -> Result<DegreeEstimate> {
    if q.dim() != 2 {
        return Err(Error::invalid("winding numbers need a rule on S^1"));
    }
    if !(radius > 0.0) {
        return Err(Error::invalid("winding radius must be positive"));
    }
    let floor = q
        .nodes()
        .iter()
        .map(|x| f(center + C64::new(x[0], x[1]) * radius).norm())
        .fold(f64::INFINITY, f64::min);
    let scale = f(center + radius).norm().max(f64::MIN_POSITIVE);
    if !(floor > 1e-14 * scale) {
        return Err(Error::VanishesOnContour);
    }
    let g = |x: &[f64]| {
        let v = f(center + C64::new(x[0], x[1]) * radius);
        let r = v.norm();
        alloc::vec![v.re / r, v.im / r]
    };
    degree::map_degree_raw(&g, q)
}

/// Local index of a zero of the field of a 2x2 matrix: the winding of the
/// chart field along a circle of `radius` around `center`, using a
/// 256-node trapezoid rule and the default snap tolerance.
pub fn local_winding_cp1(m: &ComplexMatrix, center: &AffineCoords, radius: f64) -> Result<i64> {
    let q = SphereQuadrature::circle(256)?;
    let snap_tol = Tolerances::default().snap_tol;
    local_winding_cp1_estimate(m, center, radius, &q)?.resolve(snap_tol)
}

/// The degree integral behind [`local_winding_cp1`] on a caller-chosen rule.
pub fn local_winding_cp1_estimate(
    m: &ComplexMatrix,
    center: &AffineCoords,
    radius: f64,
    q: &SphereQuadrature,
) -> Result<DegreeEstimate> {
    if m.order() != 2 || center.dim() != 1 {
        return Err(Error::invalid("local winding is implemented on CP^1 only"));
    }
    let chart = center.chart();
    let f = |w: C64| {
        let a = AffineCoords::new(chart, alloc::vec![w]).expect("finite contour point");
        chart_values(m, &a)[0]
    };
    winding_estimate(f, center.coords()[0], radius, q)
}
