//! Dense LU with partial pivoting, shared by the Newton solvers and the
//! determinant searches. Matrices are row-major slices of order `n`.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
use num_traits::{Float, Num};

pub(crate) trait Scalar: Copy + Num + core::ops::Neg<Output = Self> {
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn modulus(self) -> f64 {
        Float::abs(self)
    }
}

impl Scalar for C64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
}

pub(crate) struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
    odd: bool,
}

impl<T: Scalar> Lu<T> {
    pub(crate) fn new(a: &[T], n: usize) -> Self {
        debug_assert_eq!(a.len(), n * n);
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].modulus();
            for r in k + 1..n {
                let m = lu[r * n + k].modulus();
                if m > best {
                    best = m;
                    p = r;
                }
            }
            if p != k {
                for c in 0..n {
                    lu.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
                odd = !odd;
            }
            let pivot = lu[k * n + k];
            if pivot.modulus() == 0.0 {
                continue;
            }
            for r in k + 1..n {
                let f = lu[r * n + k] / pivot;
                lu[r * n + k] = f;
                for c in k + 1..n {
                    let u = lu[k * n + c];
                    lu[r * n + c] = lu[r * n + c] - f * u;
                }
            }
        }
        Self { n, lu, perm, odd }
    }

    pub(crate) fn det(&self) -> T {
        let mut d = T::one();
        for k in 0..self.n {
            d = d * self.lu[k * self.n + k];
        }
        if self.odd {
            -d
        } else {
            d
        }
    }

    /// Solves `A x = b`; `None` when a pivot is exactly zero or the result is not finite.
    pub(crate) fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let n = self.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                let l = self.lu[r * n + c];
                x[r] = x[r] - l * x[c];
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let u = self.lu[r * n + c];
                x[r] = x[r] - u * x[c];
            }
            let d = self.lu[r * n + r];
            if d.modulus() == 0.0 {
                return None;
            }
            x[r] = x[r] / d;
        }
        if x.iter().all(|v| v.modulus().is_finite()) {
            Some(x)
        } else {
            None
        }
    }
}

pub(crate) fn det<T: Scalar>(a: &[T], n: usize) -> T {
    Lu::new(a, n).det()
}

pub(crate) fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn norm2_real(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot_real(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
