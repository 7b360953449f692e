//! Serializable views of the library's results. Field order here is the
//! order of keys in the JSON output.

use axis_core::degree::{DegreeEstimate, HopfLemmaCheck};
use axis_core::matrix::SingularCombination;
use axis_core::quadrature::Scheme;
use axis_core::solver::{HomotopyPath, PathStatus, PolyRoots, RealEigenpair};
use axis_core::sphere::SphereZero;
use axis_core::{SolveReport, ZeroRecord};
use serde::Serialize;

use crate::formats::{pair, Pair};

#[derive(Debug, Serialize)]
pub struct Zero {
    pub homog: Vec<Pair>,
    pub chart: usize,
    pub lambda: Pair,
    pub residual: f64,
    pub jac_det: Pair,
    pub index: Option<i64>,
    pub degenerate: bool,
    pub path_id: usize,
}

impl From<&ZeroRecord> for Zero {
    fn from(z: &ZeroRecord) -> Self {
        Self {
            homog: z.point.homog().iter().map(|c| pair(*c)).collect(),
            chart: z.chart.index(),
            lambda: pair(z.lambda),
            residual: z.residual,
            jac_det: pair(z.jac_det),
            index: z.index,
            degenerate: z.degenerate,
            path_id: z.path_id,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Path {
    pub path_id: usize,
    pub attempt: usize,
    pub start: Vec<Pair>,
    pub gamma: Pair,
    pub t: f64,
    pub steps: usize,
    pub status: &'static str,
}

impl From<&HomotopyPath> for Path {
    fn from(p: &HomotopyPath) -> Self {
        Self {
            path_id: p.path_id,
            attempt: p.attempt,
            start: p.start.homog().iter().map(|c| pair(*c)).collect(),
            gamma: pair(p.gamma),
            t: p.t,
            steps: p.steps,
            status: match p.status {
                PathStatus::Tracking => "tracking",
                PathStatus::Converged => "converged",
                PathStatus::Diverged => "diverged",
                PathStatus::Merged => "merged",
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Solve {
    pub matrix_hash: String,
    pub order: usize,
    pub seed: u64,
    pub certified: bool,
    pub continuum: bool,
    pub total_index: i64,
    pub attempts: usize,
    pub zeros: Vec<Zero>,
    pub notes: Vec<String>,
    /// Per-path diagnostics, only for uncertified runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Path>>,
}

impl From<&SolveReport> for Solve {
    fn from(r: &SolveReport) -> Self {
        let diagnostics = !r.certified && !r.continuum;
        Self {
            matrix_hash: r.matrix_hash.clone(),
            order: r.order,
            seed: r.seed,
            certified: r.certified,
            continuum: r.continuum,
            total_index: r.total_index,
            attempts: r.attempts,
            zeros: r.zeros.iter().map(Zero::from).collect(),
            notes: r.notes.clone(),
            paths: diagnostics.then(|| r.paths.iter().map(Path::from).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Root {
    pub root: Pair,
    pub multiplicity: Option<i64>,
    pub residual: f64,
    pub accepted: bool,
}

#[derive(Debug, Serialize)]
pub struct Roots {
    pub degree: usize,
    pub seed: u64,
    pub certified: bool,
    pub roots: Vec<Root>,
    pub solve: Solve,
}

impl Roots {
    pub fn new(degree: usize, r: &PolyRoots) -> Self {
        Self {
            degree,
            seed: r.report.seed,
            certified: r.certified,
            roots: r
                .roots
                .iter()
                .map(|x| Root {
                    root: pair(x.root),
                    multiplicity: x.multiplicity,
                    residual: x.residual,
                    accepted: x.accepted,
                })
                .collect(),
            solve: Solve::from(&r.report),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Degree {
    pub raw: f64,
    pub snapped: i64,
    pub gap: f64,
    pub nodes: usize,
}

impl From<&DegreeEstimate> for Degree {
    fn from(d: &DegreeEstimate) -> Self {
        Self {
            raw: d.raw,
            snapped: d.snapped,
            gap: d.gap,
            nodes: d.nodes,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Eigenpair {
    pub order: usize,
    pub seed: u64,
    pub y: Vec<f64>,
    pub mu: f64,
    pub residual: f64,
    pub starts: usize,
}

impl Eigenpair {
    pub fn new(order: usize, seed: u64, e: &RealEigenpair) -> Self {
        Self {
            order,
            seed,
            y: e.y.clone(),
            mu: e.mu,
            residual: e.residual,
            starts: e.starts,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SurfaceZero {
    pub point: [f64; 3],
    pub jac_det: f64,
    pub index: i32,
}

impl From<&SphereZero> for SurfaceZero {
    fn from(z: &SphereZero) -> Self {
        Self {
            point: z.point,
            jac_det: z.jac_det,
            index: z.index,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Tubular {
    pub field: String,
    pub epsilon: f64,
    pub lhs: i64,
    pub rhs: i64,
    pub outer: Degree,
    pub inner: Degree,
    pub zeros: Vec<SurfaceZero>,
    pub pass: bool,
}

impl Tubular {
    pub fn new(field: String, epsilon: f64, c: &HopfLemmaCheck) -> Self {
        Self {
            field,
            epsilon,
            lhs: c.lhs,
            rhs: c.rhs,
            outer: Degree::from(&c.outer),
            inner: Degree::from(&c.inner),
            zeros: c.zeros.iter().map(SurfaceZero::from).collect(),
            pass: c.lhs == c.rhs,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Singular {
    pub order: usize,
    pub seed: u64,
    pub found: bool,
    pub coeffs: Option<[f64; 3]>,
    pub det: Option<f64>,
    pub relative: Option<f64>,
    pub restarts: Option<usize>,
}

impl Singular {
    pub fn new(order: usize, seed: u64, s: Option<&SingularCombination>) -> Self {
        Self {
            order,
            seed,
            found: s.is_some(),
            coeffs: s.map(|s| s.coeffs),
            det: s.map(|s| s.det),
            relative: s.map(|s| s.relative),
            restarts: s.map(|s| s.restarts),
        }
    }
}

pub fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::Counting => "counting",
        Scheme::TrapezoidCircle => "trapezoid-circle",
        Scheme::ProductGauss => "product-gauss",
        Scheme::MonteCarlo => "monte-carlo",
    }
}
