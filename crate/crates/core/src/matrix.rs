//! Dense complex and real square matrices, companion matrices, null vectors,
//! the Hermitian operators `L(B)` and `K(B)`, and the search for a singular
//! linear combination of three real matrices.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;
use rand::Rng;

use crate::linalg::{self, Lu};
use crate::rng;
use crate::{Error, Result, Tolerances};

/// Square complex matrix stored row-major: `entries[j * order + i]` is `a_{ji}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    order: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(order: usize, entries: Vec<C64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("matrix order must be positive"));
        }
        if entries.len() != order * order {
            return Err(Error::invalid(alloc::format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::invalid(
                "matrix rows must all have length equal to the row count",
            ));
        }
        Self::new(order, rows.concat())
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for j in 0..order {
            for i in 0..order {
                entries.push(f(j, i));
            }
        }
        Self::new(order, entries)
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::diagonal(&vec![C64::new(1.0, 0.0); order])
    }

    pub fn diagonal(diag: &[C64]) -> Result<Self> {
        Self::from_fn(diag.len(), |j, i| {
            if i == j {
                diag[j]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// The exemplar `diag(0, 1, ..., n)` of order `n + 1`.
    pub fn exemplar(order: usize) -> Result<Self> {
        let d: Vec<C64> = (0..order).map(|k| C64::new(k as f64, 0.0)).collect();
        Self::diagonal(&d)
    }

    /// Entries drawn independently from the standard complex Gaussian.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, order: usize) -> Result<Self> {
        Self::new(order, rng::complex_vector(rng, order * order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[C64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.entries.chunks(self.order)
    }

    pub fn mul_vec(&self, z: &[C64]) -> Vec<C64> {
        debug_assert_eq!(z.len(), self.order);
        self.rows()
            .map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                let a = self.get(j, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..n {
                    out[j * n + i] += a * other.get(k, i);
                }
            }
        }
        Self {
            order: n,
            entries: out,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.order;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for i in 0..n {
                out[i * n + j] = self.get(j, i).conj();
            }
        }
        Self {
            order: n,
            entries: out,
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Self {
        debug_assert_eq!(self.order, other.order);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self {
            order: self.order,
            entries,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::norm2(&self.entries)
    }

    pub fn trace(&self) -> C64 {
        (0..self.order).map(|k| self.get(k, k)).sum()
    }

    pub fn determinant(&self) -> C64 {
        linalg::det(&self.entries, self.order)
    }
}

impl From<&RealMatrix> for ComplexMatrix {
    fn from(m: &RealMatrix) -> Self {
        Self {
            order: m.order,
            entries: m.entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }
}

/// Square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl RealMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("matrix order must be positive"));
        }
        if entries.len() != order * order {
            return Err(Error::invalid(alloc::format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::invalid(
                "matrix rows must all have length equal to the row count",
            ));
        }
        Self::new(order, rows.concat())
    }

    pub fn identity(order: usize) -> Result<Self> {
        let mut e = vec![0.0; order * order];
        for k in 0..order {
            e[k * order + k] = 1.0;
        }
        Self::new(order, e)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, order: usize) -> Result<Self> {
        Self::new(
            order,
            (0..order * order).map(|_| rng::gaussian(rng)).collect(),
        )
    }

    /// Real part of a complex matrix whose imaginary parts all vanish.
    pub fn try_from_complex(m: &ComplexMatrix) -> Result<Self> {
        if m.entries.iter().any(|z| z.im != 0.0) {
            return Err(Error::invalid("matrix has non-zero imaginary parts"));
        }
        Self::new(m.order, m.entries.iter().map(|z| z.re).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn mul_vec(&self, y: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.order)
            .map(|row| linalg::dot_real(row, y))
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::norm2_real(&self.entries)
    }

    pub fn determinant(&self) -> f64 {
        linalg::det(&self.entries, self.order)
    }
}

/// A complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Accepts `m` when `max |m_ji - conj(m_ij)| <= tol_herm * ||m||_F`.
    pub fn new(m: ComplexMatrix, tol_herm: f64) -> Result<Self> {
        let defect = hermitian_defect(&m);
        if defect > tol_herm * m.frobenius_norm().max(f64::MIN_POSITIVE) && defect > 0.0 {
            return Err(Error::invalid(alloc::format!(
                "matrix is not Hermitian (defect {defect:e})"
            )));
        }
        Ok(Self(m))
    }

    /// The rank-one projector direction `b b*`.
    pub fn outer(b: &[C64]) -> Result<Self> {
        let m = ComplexMatrix::from_fn(b.len(), |j, i| b[j] * b[i].conj())?;
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order
    }
}

/// Largest `|m_ji - conj(m_ij)|`.
pub fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    let n = m.order;
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in j..n {
            worst = worst.max((m.get(j, i) - m.get(i, j).conj()).norm());
        }
    }
    worst
}

/// Monic polynomial `x^d + c_{d-1} x^{d-1} + ... + c_0`, stored as `c_0..c_{d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    coeffs: Vec<C64>,
}

impl PolynomialCoeffs {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("polynomial degree must be at least 1"));
        }
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("polynomial coefficients must be finite"));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Horner evaluation including the implicit leading 1.
    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(1.0, 0.0), |acc, &c| acc * x + c)
    }
}

/// Companion matrix: ones on the first subdiagonal, `-c_0, ..., -c_{d-1}` down the last column.
pub fn companion(p: &PolynomialCoeffs) -> ComplexMatrix {
    let d = p.degree();
    let mut entries = vec![C64::new(0.0, 0.0); d * d];
    for r in 1..d {
        entries[r * d + (r - 1)] = C64::new(1.0, 0.0);
    }
    for (r, c) in p.coeffs.iter().enumerate() {
        entries[r * d + (d - 1)] = -c;
    }
    ComplexMatrix { order: d, entries }
}

/// A non-zero kernel vector of a numerically rank-deficient matrix, or `None`
/// when every pivot of scaled partial-pivoting elimination clears
/// `tol_rank * order * (largest row norm)`.
///
/// Any returned `v` satisfies `|m v| <= tol_res * |m|_F * |v|`.
pub fn null_vector(m: &ComplexMatrix, tol: &Tolerances) -> Option<Vec<C64>> {
    let n = m.order;
    let mut a = m.entries.clone();
    let scale: Vec<f64> = m.rows().map(linalg::norm2).collect();
    let max_row = scale.iter().cloned().fold(0.0, f64::max);
    if max_row == 0.0 {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[0] = C64::new(1.0, 0.0);
        return Some(v);
    }
    let threshold = tol.tol_rank * n as f64 * max_row;
    let mut row_scale = scale.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            free.push(c);
            continue;
        }
        let mut best = r;
        let mut best_ratio = -1.0;
        for p in r..n {
            let s = if row_scale[p] > 0.0 {
                row_scale[p]
            } else {
                1.0
            };
            let ratio = a[p * n + c].norm() / s;
            if ratio > best_ratio {
                best_ratio = ratio;
                best = p;
            }
        }
        if a[best * n + c].norm() <= threshold {
            free.push(c);
            continue;
        }
        if best != r {
            for k in 0..n {
                a.swap(r * n + k, best * n + k);
            }
            row_scale.swap(r, best);
        }
        let pivot = a[r * n + c];
        for p in r + 1..n {
            let f = a[p * n + c] / pivot;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for k in c..n {
                let u = a[r * n + k];
                a[p * n + k] -= f * u;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let &first_free = free.first()?;
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[first_free] = C64::new(1.0, 0.0);
    for &(row, col) in pivots.iter().rev() {
        let s: C64 = (col + 1..n).map(|k| a[row * n + k] * v[k]).sum();
        v[col] = -s / a[row * n + col];
    }
    let nv = linalg::norm2(&v);
    for z in &mut v {
        *z /= nv;
    }
    let residual = linalg::norm2(&m.mul_vec(&v));
    (residual <= tol.tol_res * m.frobenius_norm()).then_some(v)
}

/// `L(B) = (AB + BA*)/2` and `K(B) = (AB - BA*)/(2i)`.
pub fn lk_operators(
    a: &ComplexMatrix,
    b: &HermitianMatrix,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    if a.order != b.order() {
        return Err(Error::invalid(alloc::format!(
            "order mismatch: A is {}, B is {}",
            a.order,
            b.order()
        )));
    }
    let ab = a.matmul(&b.0);
    let ba_star = b.0.matmul(&a.adjoint());
    let half = C64::new(0.5, 0.0);
    let l = ab.combine(half, &ba_star, half);
    // 1/(2i) = -i/2
    let k = ab.combine(C64::new(0.0, -0.5), &ba_star, C64::new(0.0, 0.5));
    Ok((HermitianMatrix(l), HermitianMatrix(k)))
}

/// A unit coefficient triple making `alpha a + beta b + gamma c` singular.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularCombination {
    pub coeffs: [f64; 3],
    pub det: f64,
    /// `|det|` divided by `|a|_F |b|_F |c|_F`.
    pub relative: f64,
    pub restarts: usize,
}

const SINGULAR_RESTARTS: usize = 200;
const SINGULAR_ITERS: usize = 100;

struct Triple<'a> {
    mats: [&'a RealMatrix; 3],
    n: usize,
}

impl Triple<'_> {
    fn combo(&self, c: &[f64; 3]) -> Vec<f64> {
        let [a, b, m] = self.mats;
        a.entries
            .iter()
            .zip(&b.entries)
            .zip(&m.entries)
            .map(|((x, y), z)| c[0] * x + c[1] * y + c[2] * z)
            .collect()
    }

    fn det(&self, c: &[f64; 3]) -> f64 {
        linalg::det(&self.combo(c), self.n)
    }

    /// Determinant and its gradient `d * tr(M^-1 X_i)`.
    fn det_grad(&self, c: &[f64; 3]) -> (f64, Option<[f64; 3]>) {
        let n = self.n;
        let m = self.combo(c);
        let lu = Lu::new(&m, n);
        let d = lu.det();
        if d == 0.0 {
            return (d, None);
        }
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for col in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[col] = 1.0;
            let Some(x) = lu.solve(&e) else {
                return (d, None);
            };
            for row in 0..n {
                inv[row * n + col] = x[row];
            }
        }
        let mut g = [0.0; 3];
        for (gi, mat) in g.iter_mut().zip(self.mats) {
            let mut tr = 0.0;
            for r in 0..n {
                for k in 0..n {
                    tr += inv[r * n + k] * mat.get(k, r);
                }
            }
            *gi = d * tr;
        }
        (d, Some(g))
    }
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Multi-start search over the unit sphere of coefficient triples for a
/// singular combination `alpha a + beta b + gamma c`.
///
/// Each restart runs projected Newton steps on `det = 0` (descent on `det^2`
/// along the tangential gradient); when two sampled triples have
/// determinants of opposite sign, bisection along the great circle joining
/// them finishes the job. `Ok(None)` means the budget ran out, which says
/// nothing about existence.
pub fn find_singular_combination(
    a: &RealMatrix,
    b: &RealMatrix,
    c: &RealMatrix,
    seed: u64,
    tol: &Tolerances,
) -> Result<Option<SingularCombination>> {
    let n = a.order;
    if b.order != n || c.order != n {
        return Err(Error::invalid(
            "singular-combination search needs three matrices of equal order",
        ));
    }
    let triple = Triple { mats: [a, b, c], n };
    let norm_product = a.frobenius_norm() * b.frobenius_norm() * c.frobenius_norm();
    let accept = tol.tol_det * norm_product.max(f64::MIN_POSITIVE);
    let target = accept * 1e-6;
    let finish = |coeffs: [f64; 3], d: f64, restarts: usize| {
        let relative = if norm_product > 0.0 {
            d.abs() / norm_product
        } else {
            0.0
        };
        SingularCombination {
            coeffs,
            det: d,
            relative,
            restarts,
        }
    };

    let mut rng = rng::seeded(seed);
    let mut positive: Option<[f64; 3]> = None;
    let mut negative: Option<[f64; 3]> = None;
    let mut best: Option<([f64; 3], f64)> = None;

    for restart in 1..=SINGULAR_RESTARTS {
        let u = rng::unit_vector(&mut rng, 3);
        let mut x = [u[0], u[1], u[2]];
        for _ in 0..SINGULAR_ITERS {
            let (d, grad) = triple.det_grad(&x);
            if d > 0.0 {
                positive.get_or_insert(x);
            } else if d < 0.0 {
                negative.get_or_insert(x);
            }
            if best.is_none_or(|(_, bd)| d.abs() < bd.abs()) {
                best = Some((x, d));
            }
            if d.abs() <= target {
                break;
            }
            let Some(g) = grad else { break };
            let radial = g[0] * x[0] + g[1] * x[1] + g[2] * x[2];
            let gt = [
                g[0] - radial * x[0],
                g[1] - radial * x[1],
                g[2] - radial * x[2],
            ];
            let gt2 = gt[0] * gt[0] + gt[1] * gt[1] + gt[2] * gt[2];
            if gt2 == 0.0 || !gt2.is_finite() {
                break;
            }
            let mut step = d / gt2;
            let mut moved = false;
            for _ in 0..30 {
                let y = normalize3([
                    x[0] - step * gt[0],
                    x[1] - step * gt[1],
                    x[2] - step * gt[2],
                ]);
                if triple.det(&y).abs() < d.abs() {
                    x = y;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if let Some((x, d)) = best {
            if d.abs() <= target {
                return Ok(Some(finish(x, d, restart)));
            }
        }
        if let (Some(p), Some(q)) = (positive, negative) {
            let (x, d) = bisect_great_circle(&triple, p, q);
            if d.abs() <= accept {
                return Ok(Some(finish(x, d, restart)));
            }
        }
    }
    match best {
        Some((x, d)) if d.abs() <= accept => Ok(Some(finish(x, d, SINGULAR_RESTARTS))),
        _ => Ok(None),
    }
}

fn bisect_great_circle(t: &Triple<'_>, p: [f64; 3], q: [f64; 3]) -> ([f64; 3], f64) {
    let point = |s: f64| {
        normalize3([
            (1.0 - s) * p[0] + s * q[0],
            (1.0 - s) * p[1] + s * q[1],
            (1.0 - s) * p[2] + s * q[2],
        ])
    };
    // Opposite signs rule out p = -q for even order.
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut d_lo = t.det(&point(lo));
    let mut best = (point(0.0), d_lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let x = point(mid);
        let d = t.det(&x);
        if d.abs() < best.1.abs() {
            best = (x, d);
        }
        if d == 0.0 || (hi - lo).abs() < f64::EPSILON {
            break;
        }
        if (d > 0.0) == (d_lo > 0.0) {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
    best
}
