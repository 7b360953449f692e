//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's solvers.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn normal(r: &mut impl Rng) -> f64 {
    // Irwin–Hall with 12 uniforms; close enough to Gaussian for test inputs.
    (0..12).map(|_| r.gen::<f64>()).sum::<f64>() - 6.0
}

pub fn complex_normal(r: &mut impl Rng) -> C64 {
    c(normal(r), normal(r)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_complex(r: &mut impl Rng, n: usize) -> Vec<Vec<C64>> {
    (0..n)
        .map(|_| (0..n).map(|_| complex_normal(r)).collect())
        .collect()
}

pub fn random_real(r: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..n).map(|_| normal(r)).collect())
        .collect()
}

pub fn in_unit_disc(r: &mut impl Rng) -> C64 {
    loop {
        let z = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        if z.norm() < 1.0 {
            return z;
        }
    }
}

pub fn matvec(a: &[Vec<C64>], z: &[C64]) -> Vec<C64> {
    a.iter()
        .map(|row| row.iter().zip(z).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn vnorm(z: &[C64]) -> f64 {
    z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn fro(a: &[Vec<C64>]) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(a: &[Vec<C64>]) -> C64 {
    let n = a.len();
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut d = c(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
        }
    }
    d
}

pub fn det_real(a: &[Vec<f64>]) -> f64 {
    let m: Vec<Vec<C64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
        .collect();
    det(&m).re
}

/// `det(m - lambda I)`.
pub fn char_eval(a: &[Vec<C64>], lambda: C64) -> C64 {
    let mut m = a.to_vec();
    for (k, row) in m.iter_mut().enumerate() {
        row[k] -= lambda;
    }
    det(&m)
}

/// Coefficients of `det(x I - M)` for `d <= 3`, highest first, by explicit
/// cofactor expansion.
pub fn char_poly_small(m: &[Vec<C64>]) -> Vec<C64> {
    let one = c(1.0, 0.0);
    match m.len() {
        1 => vec![one, -m[0][0]],
        2 => {
            let tr = m[0][0] + m[1][1];
            let dt = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            vec![one, -tr, dt]
        }
        3 => {
            let tr = m[0][0] + m[1][1] + m[2][2];
            let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
                + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
                + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
            let dt = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            vec![one, -tr, minors, -dt]
        }
        _ => panic!("symbolic oracle covers d <= 3"),
    }
}

/// Evaluates the monic `x^d + c_{d-1} x^{d-1} + ... + c_0` naively.
pub fn poly_eval(coeffs: &[C64], x: C64) -> C64 {
    let d = coeffs.len();
    let mut total = x.powu(d as u32);
    for (k, ck) in coeffs.iter().enumerate() {
        total += ck * x.powu(k as u32);
    }
    total
}

/// Roots of a monic polynomial by Weierstrass (Durand–Kerner) iteration.
pub fn durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let d = coeffs.len();
    let radius = 1.0 + coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut z: Vec<C64> = (0..d)
        .map(|k| seed.powu(k as u32) * radius / seed.norm().powi(k as i32))
        .collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let mut den = c(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = poly_eval(coeffs, z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Hausdorff distance between two finite point sets in the plane.
pub fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    let one_way = |x: &[C64], y: &[C64]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Real roots of `det(A - x I)` located by a sign scan over the Gershgorin
/// interval followed by bisection.
pub fn real_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let bound = a
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let f = |x: f64| {
        let mut m = a.to_vec();
        for k in 0..n {
            m[k][k] -= x;
        }
        det_real(&m)
    };
    let samples = 4000;
    let mut roots = Vec::new();
    let mut lo = -bound;
    let mut flo = f(lo);
    for k in 1..=samples {
        let hi = -bound + 2.0 * bound * k as f64 / samples as f64;
        let fhi = f(hi);
        if flo == 0.0 {
            roots.push(lo);
        } else if flo.signum() != fhi.signum() {
            let (mut l, mut h, mut fl) = (lo, hi, flo);
            for _ in 0..200 {
                let mid = 0.5 * (l + h);
                let fm = f(mid);
                if fm.signum() == fl.signum() {
                    l = mid;
                    fl = fm;
                } else {
                    h = mid;
                }
                if h - l < 1e-14 * (1.0 + mid.abs()) {
                    break;
                }
            }
            roots.push(0.5 * (l + h));
        }
        lo = hi;
        flo = fhi;
    }
    roots
}

/// Classical RK4 with a fixed step.
pub fn rk4(f: impl Fn(&[C64]) -> Vec<C64>, y0: &[C64], t: f64, h: f64) -> Vec<C64> {
    let steps = (t / h).round() as usize;
    let h = t / steps as f64;
    let mut y = y0.to_vec();
    let axpy = |y: &[C64], k: &[C64], s: f64| -> Vec<C64> {
        y.iter().zip(k).map(|(a, b)| a + b * s).collect()
    };
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&axpy(&y, &k1, h / 2.0));
        let k3 = f(&axpy(&y, &k2, h / 2.0));
        let k4 = f(&axpy(&y, &k3, h));
        for i in 0..y.len() {
            y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    y
}

/// Smallest singular value of a real `rows x cols` matrix (`cols <= rows`)
/// via Jacobi eigenvalues of the Gram matrix.
pub fn min_singular_value(m: &[Vec<f64>]) -> f64 {
    let cols = m[0].len();
    let mut g = vec![vec![0.0; cols]; cols];
    for i in 0..cols {
        for j in 0..cols {
            g[i][j] = m.iter().map(|r| r[i] * r[j]).sum();
        }
    }
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..cols {
            for q in p + 1..cols {
                off += g[p][q] * g[p][q];
                if g[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (g[q][q] - g[p][p]) / (2.0 * g[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..cols {
                    let (gkp, gkq) = (g[k][p], g[k][q]);
                    g[k][p] = cs * gkp - sn * gkq;
                    g[k][q] = sn * gkp + cs * gkq;
                }
                for k in 0..cols {
                    let (gpk, gqk) = (g[p][k], g[q][k]);
                    g[p][k] = cs * gpk - sn * gqk;
                    g[q][k] = sn * gpk + cs * gqk;
                }
            }
        }
        if off < 1e-30 {
            break;
        }
    }
    (0..cols)
        .map(|k| g[k][k])
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
        .sqrt()
}
