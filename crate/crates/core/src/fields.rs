//! Vector fields induced by matrices.
//!
//! A matrix `A` of order `n + 1` gives the holomorphic field
//! `sum_j sum_i a_ji z_i d/dz_j` on `C^{n+1}`. It is linear, so it commutes
//! with scaling and descends to `CP^n`. In chart `U_j` (with `z_j = 1`) the
//! descended field has components `F_k(w) = (A z)_k - z_k (A z)_j` for
//! `k != j`, and it vanishes exactly where `z` is an eigenvector.
//!
//! Also here: the Euler identity for homogeneous polynomials, the closed-form
//! flow of the diagonal exemplar together with an RK4 cross-check, and the
//! real "hedgehog" field of an odd-order real matrix on the unit sphere.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::linalg::{self, dot_real, norm2_real};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::projective::{AffineCoords, ChartId};
use crate::{Error, Result};

/// The ambient linear field `z -> A z` on `C^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientField {
    pub matrix: ComplexMatrix,
}

impl AmbientField {
    pub fn new(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// Coefficients of the field at `z` in the basis `d/dz_j`.
    pub fn evaluate(&self, z: &[C64]) -> Result<Vec<C64>> {
        if z.len() != self.matrix.order() {
            return Err(Error::invalid(alloc::format!(
                "point has {} coordinates, field expects {}",
                z.len(),
                self.matrix.order()
            )));
        }
        Ok(self.matrix.mul_vec(z))
    }
}

/// The descended field written in one affine chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartField {
    matrix: ComplexMatrix,
    chart: ChartId,
}

impl ChartField {
    pub fn new(matrix: ComplexMatrix, chart: ChartId) -> Result<Self> {
        if chart.index() >= matrix.order() {
            return Err(Error::invalid(alloc::format!(
                "chart {} out of range for order {}",
                chart.index(),
                matrix.order()
            )));
        }
        Ok(Self { matrix, chart })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    fn check(&self, w: &AffineCoords) -> Result<()> {
        if w.chart() != self.chart || w.dim() + 1 != self.matrix.order() {
            return Err(Error::invalid(
                "affine coordinates do not belong to this chart field",
            ));
        }
        Ok(())
    }

    pub fn evaluate(&self, w: &AffineCoords) -> Result<Vec<C64>> {
        self.check(w)?;
        Ok(chart_values(&self.matrix, w))
    }

    /// Holomorphic Jacobian `dF_k/dw_m = a_km - delta_km (A z)_j - z_k a_jm`, row-major.
    pub fn jacobian(&self, w: &AffineCoords) -> Result<Vec<C64>> {
        self.check(w)?;
        Ok(chart_jacobian(&self.matrix, w))
    }
}

pub(crate) fn chart_values(m: &ComplexMatrix, w: &AffineCoords) -> Vec<C64> {
    let j = w.chart().index();
    let z = w.lift();
    let az = m.mul_vec(&z);
    let pivot = az[j];
    (0..z.len())
        .filter(|&k| k != j)
        .map(|k| az[k] - z[k] * pivot)
        .collect()
}

pub(crate) fn chart_jacobian(m: &ComplexMatrix, w: &AffineCoords) -> Vec<C64> {
    let j = w.chart().index();
    let z = w.lift();
    let pivot: C64 = m.row(j).iter().zip(&z).map(|(a, b)| a * b).sum();
    let others: Vec<usize> = (0..z.len()).filter(|&k| k != j).collect();
    let n = others.len();
    let mut jac = vec![C64::new(0.0, 0.0); n * n];
    for (r, &k) in others.iter().enumerate() {
        for (c, &col) in others.iter().enumerate() {
            let mut v = m.get(k, col) - z[k] * m.get(j, col);
            if r == c {
                v -= pivot;
            }
            jac[r * n + c] = v;
        }
    }
    jac
}

/// Determinant of an `n x n` row-major complex matrix (1 for `n = 0`).
pub fn jacobian_det(jac: &[C64], n: usize) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    linalg::det(jac, n)
}

/// Determinant of the realification of a complex `n x n` matrix, the
/// `2n x 2n` real matrix `[[Re, -Im], [Im, Re]]`.
pub fn realified_det(jac: &[C64], n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let m = 2 * n;
    let mut r = vec![0.0; m * m];
    for a in 0..n {
        for b in 0..n {
            let z = jac[a * n + b];
            r[a * m + b] = z.re;
            r[a * m + n + b] = -z.im;
            r[(n + a) * m + b] = z.im;
            r[(n + a) * m + n + b] = z.re;
        }
    }
    linalg::det(&r, m)
}

/// A homogeneous polynomial given as `(coefficient, exponents)` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPolynomial {
    nvars: usize,
    degree: u32,
    terms: Vec<(C64, Vec<u32>)>,
}

impl HomogeneousPolynomial {
    pub fn new(nvars: usize, terms: Vec<(C64, Vec<u32>)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::invalid("polynomial has no terms"));
        };
        let degree: u32 = first.iter().sum();
        for (_, e) in &terms {
            if e.len() != nvars {
                return Err(Error::invalid(
                    "exponent vector length differs from variable count",
                ));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::invalid("terms do not share one total degree"));
            }
        }
        Ok(Self {
            nvars,
            degree,
            terms,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, p: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(c, e)| e.iter().zip(p).fold(*c, |acc, (&k, z)| acc * z.powu(k)))
            .sum()
    }

    /// `sum_j z_j df/dz_j` at `p`, differentiating term by term.
    pub fn euler_derivative(&self, p: &[C64]) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            for j in 0..self.nvars {
                if e[j] == 0 {
                    continue;
                }
                let mut t = *c * e[j] as f64;
                for (k, (&ek, z)) in e.iter().zip(p).enumerate() {
                    let pow = if k == j { ek - 1 } else { ek };
                    t *= z.powu(pow);
                }
                total += t * p[j];
            }
        }
        total
    }
}

/// Returns `(sum_j z_j df/dz_j, d * f(p))`.
pub fn euler_identity_check(f: &HomogeneousPolynomial, p: &[C64]) -> Result<(C64, C64)> {
    if p.len() != f.nvars {
        return Err(Error::invalid(
            "point dimension differs from variable count",
        ));
    }
    Ok((f.euler_derivative(p), f.eval(p) * f.degree as f64))
}

/// Closed-form flow of the exemplar field `(w_1, 2 w_2, ..., n w_n)` in chart 0.
pub fn milnor_hopf_flow(w0: &[C64], t: f64) -> Vec<C64> {
    w0.iter()
        .enumerate()
        .map(|(k, w)| w * ((k + 1) as f64 * t).exp())
        .collect()
}

/// Integrates `dw/dt = F(w)` for a chart field with classical RK4 using `steps` equal steps.
pub fn integrate_chart_flow(
    field: &ChartField,
    w0: &AffineCoords,
    t: f64,
    steps: usize,
) -> Result<AffineCoords> {
    field.check(w0)?;
    if steps == 0 {
        return Ok(w0.clone());
    }
    let h = t / steps as f64;
    let chart = w0.chart();
    let f = |w: &[C64]| -> Vec<C64> {
        let a = AffineCoords::new(chart, w.to_vec()).expect("finite RK4 stage");
        chart_values(&field.matrix, &a)
    };
    let axpy = |x: &[C64], a: f64, y: &[C64]| -> Vec<C64> {
        x.iter().zip(y).map(|(p, q)| p + q * a).collect()
    };
    let mut w = w0.coords().to_vec();
    for _ in 0..steps {
        let k1 = f(&w);
        let k2 = f(&axpy(&w, h / 2.0, &k1));
        let k3 = f(&axpy(&w, h / 2.0, &k2));
        let k4 = f(&axpy(&w, h, &k3));
        for i in 0..w.len() {
            w[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    AffineCoords::new(chart, w)
}

/// Tangential part of `A y / |A y|` at the unit vector `y`:
/// `sigma(y) = a(y) - (a(y) . y) y`.
pub fn hedgehog_field(a: &RealMatrix, y: &[f64], tol: f64) -> Result<Vec<f64>> {
    let n = a.order();
    if n.is_multiple_of(2) {
        return Err(Error::invalid("hedgehog field needs a matrix of odd order"));
    }
    if y.len() != n {
        return Err(Error::invalid("point dimension differs from matrix order"));
    }
    let ny = norm2_real(y);
    if (ny - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(
            "hedgehog field is defined on the unit sphere",
        ));
    }
    let ay = a.mul_vec(y);
    let norm = norm2_real(&ay);
    if norm <= tol * a.frobenius_norm().max(f64::MIN_POSITIVE) || norm == 0.0 {
        return Err(Error::NearSingular { norm });
    }
    let unit: Vec<f64> = ay.iter().map(|x| x / norm).collect();
    let radial = dot_real(&unit, y);
    let mut sigma: Vec<f64> = unit.iter().zip(y).map(|(u, yi)| u - radial * yi).collect();
    // One re-projection removes the rounding left in the radial component.
    let r2 = dot_real(&sigma, y);
    for (s, yi) in sigma.iter_mut().zip(y) {
        *s -= r2 * yi;
    }
    Ok(sigma)
}
