//! Predictor-corrector tracking of one homotopy path.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;

use super::{repivot, SolverConfig};
use crate::fields::{chart_jacobian, chart_values};
use crate::linalg::{norm2, Lu};
use crate::matrix::ComplexMatrix;
use crate::projective::{AffineCoords, ChartId, ProjectivePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStatus {
    Tracking,
    Converged,
    Diverged,
    /// Reached a zero another path had already found.
    Merged,
}

/// One path of the homotopy `(1 - t) gamma L + t M`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyPath {
    pub start: ProjectivePoint,
    /// Last parameter value reached by the tracker.
    pub t: f64,
    pub gamma: C64,
    pub status: PathStatus,
    pub path_id: usize,
    pub attempt: usize,
    pub steps: usize,
}

const CORRECTOR_ITERS: usize = 6;

/// Tracks the path starting at the `k`-th coordinate point. Returns the path
/// summary and the last point reached (at `t = 1` unless the step size fell
/// below its floor).
pub(crate) fn track_path(
    m: &ComplexMatrix,
    exemplar: &ComplexMatrix,
    gamma: C64,
    k: usize,
    cfg: &SolverConfig,
) -> (HomotopyPath, AffineCoords) {
    let n = m.order() - 1;
    let one = C64::new(1.0, 0.0);
    let chart = ChartId::new(k, n).expect("k <= n");
    let start = ProjectivePoint::basis(n, k).expect("k <= n");
    let velocity = m.combine(one, exemplar, -gamma);
    let at = |t: f64| exemplar.combine(gamma * (1.0 - t), m, C64::new(t, 0.0));

    let mut w = AffineCoords::origin(chart, n).expect("finite");
    let mut t = 0.0;
    let mut dt = cfg.initial_step;
    let mut steps = 0;
    let mut streak = 0;
    let mut status = PathStatus::Tracking;
    while t < 1.0 {
        let h = dt.min(1.0 - t);
        match step(&at, &velocity, &w, t, h, n) {
            Some(next) => {
                t = if t + h >= 1.0 - 1e-14 { 1.0 } else { t + h };
                w = repivot(next, cfg.tol.tol_chart);
                steps += 1;
                streak += 1;
                if streak >= 3 {
                    dt = (dt * 2.0).min(cfg.max_step);
                    streak = 0;
                }
            }
            None => {
                streak = 0;
                dt *= 0.5;
                if dt < cfg.min_step {
                    status = PathStatus::Diverged;
                    break;
                }
            }
        }
    }
    if status == PathStatus::Tracking {
        status = PathStatus::Converged;
    }
    let path = HomotopyPath {
        start,
        t,
        gamma,
        status,
        path_id: 0,
        attempt: 0,
        steps,
    };
    (path, w)
}

/// Euler predictor along `dw/dt = -J^{-1} dF/dt` followed by a few Newton
/// corrections at `t + h`. `None` when the corrector fails to contract.
fn step(
    at: &impl Fn(f64) -> ComplexMatrix,
    velocity: &ComplexMatrix,
    w: &AffineCoords,
    t: f64,
    h: f64,
    n: usize,
) -> Option<AffineCoords> {
    let a0 = at(t);
    let jac = chart_jacobian(&a0, w);
    let rhs: Vec<C64> = chart_values(velocity, w).iter().map(|v| -v).collect();
    let tangent = Lu::new(&jac, n).solve(&rhs)?;
    let guess: Vec<C64> = w
        .coords()
        .iter()
        .zip(&tangent)
        .map(|(a, d)| a + d * h)
        .collect();
    let mut cur = AffineCoords::new(w.chart(), guess).ok()?;

    let a1 = at(t + h);
    let size = 1.0 + norm2(w.coords());
    let mut last = f64::INFINITY;
    for it in 0..CORRECTOR_ITERS {
        let f = chart_values(&a1, &cur);
        let jac = chart_jacobian(&a1, &cur);
        let rhs: Vec<C64> = f.iter().map(|v| -v).collect();
        let delta = Lu::new(&jac, n).solve(&rhs)?;
        let dn = norm2(&delta);
        if !dn.is_finite() || (it == 0 && dn > 0.1 * size) || (it > 0 && dn > 0.5 * last) {
            return None;
        }
        let next: Vec<C64> = cur
            .coords()
            .iter()
            .zip(&delta)
            .map(|(a, d)| a + d)
            .collect();
        cur = AffineCoords::new(cur.chart(), next).ok()?;
        if dn <= 1e-10 * size {
            return Some(cur);
        }
        last = dn;
    }
    None
}
