//! Real eigenvectors of odd-order real matrices, found as zeros of the
//! tangential field `sigma(y) = a(y) - (a(y) . y) y` on the sphere.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::hedgehog_field;
use crate::linalg::{dot_real, norm2_real, Lu};
use crate::matrix::{null_vector, ComplexMatrix, RealMatrix};
use crate::{rng, Error, Result, Tolerances};
use rand::Rng;

/// A unit `y` with `A y = mu y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealEigenpair {
    pub y: Vec<f64>,
    pub mu: f64,
    /// `|A y - mu y| / |A|_F`.
    pub residual: f64,
    /// Random starts used, 0 when the kernel shortcut applied.
    pub starts: usize,
}

const MAX_STARTS: usize = 200;
const ASCENT_STEPS: usize = 100;
const INVERSE_STEPS: usize = 20;

/// Finds a zero of the hedgehog field of `a`. Near-singular matrices are
/// answered directly with a kernel vector (`mu = 0`).
pub fn hedgehog_solve(a: &RealMatrix, seed: u64, tol: &Tolerances) -> Result<RealEigenpair> {
    let n = a.order();
    if n.is_multiple_of(2) {
        return Err(Error::invalid("hedgehog field needs a matrix of odd order"));
    }
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        let mut y = vec![0.0; n];
        y[0] = 1.0;
        return Ok(RealEigenpair {
            y,
            mu: 0.0,
            residual: 0.0,
            starts: 0,
        });
    }
    if let Some(v) = null_vector(&ComplexMatrix::from(a), tol) {
        // A real matrix has a real kernel vector. Rotate the complex one so
        // its largest entry is real and keep the real part.
        let k = (0..n)
            .max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
            .unwrap_or(0);
        let phase = v[k].conj() / v[k].norm();
        let mut y: Vec<f64> = v.iter().map(|z| (z * phase).re).collect();
        let ny = norm2_real(&y);
        y.iter_mut().for_each(|x| *x /= ny);
        let residual = pair_residual(a, &y, 0.0);
        if residual <= tol.tol_accept.max(tol.tol_res) {
            return Ok(RealEigenpair {
                y,
                mu: 0.0,
                residual,
                starts: 0,
            });
        }
    }

    let mut rng = rng::seeded(seed);
    for start in 1..=MAX_STARTS {
        let mut y = rng::unit_vector(&mut rng, n);
        if start % 2 == 0 {
            // The ascent basin of an eigenvector with a small eigenvalue is
            // tiny. A few shifted inverse iterations reach it whenever the
            // shift is nearer that eigenvalue than the others.
            let shift = (rng.gen::<f64>() * 2.0 - 1.0) * norm;
            inverse_iterate(a, shift, &mut y);
        }
        ascend(a, &mut y);
        let mu = dot_real(&y, &a.mul_vec(&y));
        // Newton's system is singular at multiple eigenvalues, so keep an
        // ascent result that already passes.
        let polished = if pair_residual(a, &y, mu) <= 1e-15 {
            Some((y, mu))
        } else {
            newton(a, y, mu)
        };
        if let Some((y, mu)) = polished {
            let residual = pair_residual(a, &y, mu);
            if residual <= tol.tol_accept {
                // Sanity: the field itself vanishes at y.
                if let Ok(s) = hedgehog_field(a, &y, tol.tol_rank) {
                    if norm2_real(&s) <= tol.tol_res {
                        return Ok(RealEigenpair {
                            y,
                            mu,
                            residual,
                            starts: start,
                        });
                    }
                }
            }
        }
    }
    Err(Error::BudgetExhausted {
        attempts: MAX_STARTS,
    })
}

fn pair_residual(a: &RealMatrix, y: &[f64], mu: f64) -> f64 {
    let ay = a.mul_vec(y);
    let r: Vec<f64> = ay.iter().zip(y).map(|(p, q)| p - mu * q).collect();
    norm2_real(&r) / a.frobenius_norm()
}

/// `rho(y) = (y.Ay)^2 / |Ay|^2 = 1 - |sigma(y)|^2`, maximal exactly at real
/// eigenvectors.
fn rho(a: &RealMatrix, y: &[f64]) -> f64 {
    let ay = a.mul_vec(y);
    let q = dot_real(y, &ay);
    q * q / dot_real(&ay, &ay)
}

/// Projected gradient ascent of `rho` with backtracking.
fn ascend(a: &RealMatrix, y: &mut Vec<f64>) {
    let n = a.order();
    let mut eta = 1.0;
    for _ in 0..ASCENT_STEPS {
        let ay = a.mul_vec(y);
        let q = dot_real(y, &ay);
        let s = dot_real(&ay, &ay);
        let cur = q * q / s;
        if cur > 1.0 - 1e-8 {
            return;
        }
        // grad q = (A + A^T) y, grad s = 2 A^T A y.
        let aty: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a.get(j, i) * y[j]).sum())
            .collect();
        let atay: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a.get(j, i) * ay[j]).sum())
            .collect();
        let mut g: Vec<f64> = (0..n)
            .map(|i| 2.0 * q * (ay[i] + aty[i]) / s - 2.0 * q * q * atay[i] / (s * s))
            .collect();
        let radial = dot_real(&g, y);
        g.iter_mut()
            .zip(y.iter())
            .for_each(|(gi, yi)| *gi -= radial * yi);
        let gn = norm2_real(&g);
        if gn < 1e-14 {
            return;
        }
        let mut moved = false;
        while eta > 1e-12 {
            let mut cand: Vec<f64> = y.iter().zip(&g).map(|(p, d)| p + eta * d).collect();
            let cn = norm2_real(&cand);
            cand.iter_mut().for_each(|x| *x /= cn);
            if rho(a, &cand) > cur + 1e-4 * eta * gn * gn {
                *y = cand;
                moved = true;
                eta = (eta * 2.0).min(4.0);
                break;
            }
            eta *= 0.5;
        }
        if !moved {
            return;
        }
    }
}

fn inverse_iterate(a: &RealMatrix, shift: f64, y: &mut Vec<f64>) {
    let n = a.order();
    let mut m = a.entries().to_vec();
    for k in 0..n {
        m[k * n + k] -= shift;
    }
    let lu = Lu::new(&m, n);
    for _ in 0..INVERSE_STEPS {
        let Some(mut next) = lu.solve(y) else { return };
        let nn = norm2_real(&next);
        if !(nn > 0.0) || !nn.is_finite() {
            return;
        }
        next.iter_mut().for_each(|x| *x /= nn);
        *y = next;
    }
}

/// Newton on `(A - mu) y = 0, (y.y - 1) / 2 = 0`.
fn newton(a: &RealMatrix, mut y: Vec<f64>, mut mu: f64) -> Option<(Vec<f64>, f64)> {
    let n = a.order();
    let m = n + 1;
    let scale = a.frobenius_norm();
    for _ in 0..50 {
        let ay = a.mul_vec(&y);
        let mut f: Vec<f64> = ay.iter().zip(&y).map(|(p, q)| -(p - mu * q)).collect();
        f.push(-(dot_real(&y, &y) - 1.0) / 2.0);
        let mut jac = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                jac[i * m + j] = a.get(i, j) - if i == j { mu } else { 0.0 };
            }
            jac[i * m + n] = -y[i];
            jac[n * m + i] = y[i];
        }
        let d = Lu::new(&jac, m).solve(&f)?;
        for i in 0..n {
            y[i] += d[i];
        }
        mu += d[n];
        if !mu.is_finite() {
            return None;
        }
        if norm2_real(&d) <= 1e-15 * (1.0 + scale) {
            break;
        }
    }
    let ny = norm2_real(&y);
    y.iter_mut().for_each(|x| *x /= ny);
    Some((y, mu))
}
