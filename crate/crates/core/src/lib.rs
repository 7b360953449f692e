//! Eigenvectors of complex matrices as zeros of vector fields on complex
//! projective space.
//!
//! A square complex matrix `A` of order `n + 1` induces a holomorphic vector
//! field on `CP^n` whose zeros are exactly the eigen-directions of `A`. This
//! crate finds those zeros by homotopy continuation from the diagonal
//! exemplar `diag(0, 1, ..., n)`, polishes them with Newton's method in affine
//! charts, and certifies each run by checking that the zero indices add up to
//! `n + 1`. Polynomial roots follow through the companion matrix.
//!
//! The index and degree machinery that backs the certification lives here
//! too: sphere quadrature, the volume form on `S^{N-1}`, Brouwer degree of
//! sphere maps as a normalized integral, and a tubular-neighbourhood
//! experiment on `S^2`.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the command
//! line front end live in the `axis` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod degree;
pub mod error;
pub mod fields;
mod linalg;
pub mod matrix;
pub mod projective;
pub mod quadrature;
pub mod rng;
pub mod solver;
pub mod sphere;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianMatrix, PolynomialCoeffs, RealMatrix};
pub use num_complex::Complex64 as C64;
pub use projective::{AffineCoords, ChartId, ProjectivePoint};
pub use solver::{solve, SolveReport, ZeroRecord};
pub use tol::Tolerances;
