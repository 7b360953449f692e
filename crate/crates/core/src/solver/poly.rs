//! Polynomial roots as eigenvalues of the companion matrix.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use super::{solve_with, SolveReport, SolverConfig};
use crate::matrix::{companion, PolynomialCoeffs};

#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoot {
    pub root: C64,
    /// Multiplicity when known (the index of the corresponding zero).
    pub multiplicity: Option<i64>,
    /// `|p(root)|`.
    pub residual: f64,
    /// `|p(root)| <= tol_poly * (1 + |root|)^d`.
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoots {
    pub roots: Vec<PolyRoot>,
    /// True when the field solve was certified and every root passed its
    /// residual check.
    pub certified: bool,
    pub report: SolveReport,
}

/// Roots of the monic polynomial `p`, one per distinct zero of the
/// companion matrix field.
pub fn poly_roots(p: &PolynomialCoeffs, seed: u64, cfg: &SolverConfig) -> PolyRoots {
    let d = p.degree();
    let report = solve_with(&companion(p), seed, cfg);
    let roots: Vec<PolyRoot> = report
        .zeros
        .iter()
        .map(|z| {
            let residual = p.eval(z.lambda).norm();
            let bound = cfg.tol.tol_poly * (1.0 + z.lambda.norm()).powi(d as i32);
            PolyRoot {
                root: z.lambda,
                multiplicity: z.index,
                residual,
                accepted: residual <= bound,
            }
        })
        .collect();
    let certified = report.certified && !report.continuum && roots.iter().all(|r| r.accepted);
    PolyRoots {
        roots,
        certified,
        report,
    }
}
