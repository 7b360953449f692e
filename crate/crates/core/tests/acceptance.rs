//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use axis_core::degree::{self, hopf_lemma_check, map_degree, map_degree_raw, omega_integral};
use axis_core::fields::{euler_identity_check, HomogeneousPolynomial};
use axis_core::matrix::{find_singular_combination, lk_operators, HermitianMatrix};
use axis_core::projective::{embed, from_chart, proj_distance, to_chart, transition};
use axis_core::quadrature::SphereQuadrature;
use axis_core::solver::{hedgehog_solve, local_winding_cp1_estimate, poly_roots, SolverConfig};
use axis_core::sphere::{
    self, cp1_field_on_sphere, north_south_field, tubular_extend, TubularConfig,
};
use axis_core::{
    solve, AffineCoords, ChartId, ComplexMatrix, PolynomialCoeffs, ProjectivePoint, RealMatrix,
    Tolerances,
};
use common::*;
use num_complex::Complex64 as C64;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn total_index() -> Outcome {
    let start = Instant::now();
    let mut g = rng(1001);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for order in 2..=6 {
        for trial in 0..200u64 {
            let a = random_complex(&mut g, order);
            let r = solve(&ComplexMatrix::from_rows(&a).unwrap(), trial);
            for z in &r.zeros {
                let v = z.point.homog();
                let res: Vec<C64> = matvec(&a, v)
                    .iter()
                    .zip(v)
                    .map(|(x, y)| x - z.lambda * y)
                    .collect();
                worst = worst.max(vnorm(&res) / (fro(&a) * vnorm(v)));
            }
            if !r.certified || r.total_index != order as i64 {
                failures.push(format!(
                    "order {order} trial {trial}: total {}",
                    r.total_index
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        failures.is_empty() && worst <= 1e-9 && secs < 60.0,
        format!(
            "1000 matrices, {} uncertified{}, worst residual {worst:.1e}, {secs:.1}s",
            failures.len(),
            failures
                .first()
                .map(|f| format!(" (first: {f})"))
                .unwrap_or_default()
        ),
    )
}

fn exemplar() -> Outcome {
    for n in 0..=5 {
        let r = solve(&ComplexMatrix::exemplar(n + 1).unwrap(), 0);
        if !r.certified || r.zeros.len() != n + 1 {
            return Err(format!(
                "n = {n}: certified {}, {} zeros",
                r.certified,
                r.zeros.len()
            ));
        }
        for (k, z) in r.zeros.iter().enumerate() {
            let d = proj_distance(&z.point, &ProjectivePoint::basis(n, k).unwrap()).unwrap();
            if z.index != Some(1) || (z.lambda - c(k as f64, 0.0)).norm() > 1e-12 || d > 1e-12 {
                return Err(format!(
                    "n = {n}, zero {k}: lambda {} index {:?} distance {d:e}",
                    z.lambda, z.index
                ));
            }
        }
    }
    Ok("n = 0..5: zeros at the coordinate points, lambda_k = k, index +1".into())
}

fn scalar_and_jordan() -> Outcome {
    let two = c(2.0, 0.0);
    let zero = c(0.0, 0.0);
    let scalar = ComplexMatrix::from_rows(&[vec![two, zero], vec![zero, two]]).unwrap();
    let r = solve(&scalar, 0);
    if !r.continuum || r.certified {
        return Err("2I not flagged as a continuum".into());
    }
    let jordan = ComplexMatrix::from_rows(&[vec![two, c(1.0, 0.0)], vec![zero, two]]).unwrap();
    let r = solve(&jordan, 0);
    if r.zeros.len() != 1 {
        return Err(format!("Jordan block: {} zeros", r.zeros.len()));
    }
    let z = &r.zeros[0];
    let d = proj_distance(&z.point, &ProjectivePoint::basis(1, 0).unwrap()).unwrap();
    let origin = AffineCoords::new(ChartId::new(0, 1).unwrap(), vec![zero]).unwrap();
    let est = local_winding_cp1_estimate(
        &jordan,
        &origin,
        0.1,
        &SphereQuadrature::circle(256).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    check(
        z.degenerate && z.index == Some(2) && d < 1e-10 && est.snapped == 2 && est.gap <= 0.01,
        format!(
            "2I continuum; Jordan block: degenerate at (1:0), index {:?}, winding {} (gap {:.1e})",
            z.index, est.snapped, est.gap
        ),
    )
}

fn polynomial_roots() -> Outcome {
    let start = Instant::now();
    let mut g = rng(1004);
    let cfg = SolverConfig::default();
    let mut worst_h: f64 = 0.0;
    let mut worst_p: f64 = 0.0;
    let mut uncertified = 0;
    for trial in 0..100u64 {
        let d = 1 + (trial as usize % 8);
        let coeffs: Vec<C64> = (0..d).map(|_| in_unit_disc(&mut g)).collect();
        let pr = poly_roots(&PolynomialCoeffs::new(coeffs.clone()).unwrap(), trial, &cfg);
        if !pr.certified || pr.roots.len() != d {
            uncertified += 1;
        }
        let ours: Vec<C64> = pr.roots.iter().map(|r| r.root).collect();
        for r in &ours {
            worst_p = worst_p.max(poly_eval(&coeffs, *r).norm());
        }
        worst_h = worst_h.max(hausdorff(&ours, &durand_kerner(&coeffs)));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        uncertified == 0 && worst_h <= 1e-6 && worst_p <= 1e-8 && secs < 30.0,
        format!("100 polynomials, {uncertified} uncertified, Hausdorff {worst_h:.1e}, |p| {worst_p:.1e}, {secs:.1}s"),
    )
}

fn stokes() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, q, tol) in [
        (2, SphereQuadrature::circle(256).unwrap(), 1e-12),
        (
            3,
            SphereQuadrature::product_gauss(3, 64, 128).unwrap(),
            1e-8,
        ),
        (4, SphereQuadrature::default_for(4).unwrap(), 1e-6),
    ] {
        let (value, _) = omega_integral(&q);
        let err = (value - n as f64 * degree::ball_volume(n).unwrap()).abs();
        ok &= err <= tol;
        parts.push(format!("N={n} {err:.1e}"));
    }
    check(ok, parts.join(", "))
}

fn sphere_areas() -> Outcome {
    let cases = [(1, 2.0), (2, 2.0 * PI), (3, 4.0 * PI), (4, 2.0 * PI * PI)];
    let mut worst: f64 = 0.0;
    for (n, exact) in cases {
        worst = worst.max((degree::sphere_area(n).unwrap() - exact).abs() / exact);
    }
    check(
        worst <= f64::EPSILON,
        format!("max relative deviation {worst:.1e}"),
    )
}

fn degree_values() -> Outcome {
    let circle = SphereQuadrature::circle(256).unwrap();
    let mut worst: f64 = 0.0;
    for k in -5i32..=5 {
        let g = move |x: &[f64]| {
            let t = x[1].atan2(x[0]) * k as f64;
            vec![t.cos(), t.sin()]
        };
        let est = map_degree_raw(&g, &circle).map_err(|e| e.to_string())?;
        if est.snapped != k as i64 {
            return Err(format!("power map {k}: degree {}", est.snapped));
        }
        worst = worst.max(est.gap);
    }
    let s2 = SphereQuadrature::product_gauss(3, 64, 128).unwrap();
    let id = map_degree(&|x: &[f64]| x.to_vec(), &s2, 0.01).map_err(|e| e.to_string())?;
    let anti = map_degree(&|x: &[f64]| x.iter().map(|v| -v).collect(), &s2, 0.01)
        .map_err(|e| e.to_string())?;
    check(
        worst <= 1e-3 && id.snapped == 1 && anti.snapped == -1,
        format!(
            "power maps gap {worst:.1e}; identity {}, antipodal {}",
            id.snapped, anti.snapped
        ),
    )
}

fn hopf_lemma() -> Outcome {
    let q = SphereQuadrature::product_gauss(3, 64, 128).unwrap();
    let cfg = TubularConfig::new(0.2).unwrap();
    let ns = hopf_lemma_check(&north_south_field, &cfg, &q, 0.01).map_err(|e| e.to_string())?;
    let l = ComplexMatrix::exemplar(2).unwrap();
    let field = |p: &[f64; 3]| cp1_field_on_sphere(&l, p).unwrap();
    let mh = hopf_lemma_check(&field, &cfg, &q, 0.01).map_err(|e| e.to_string())?;
    check(
        (ns.lhs, ns.rhs) == (2, 2) && (mh.lhs, mh.rhs) == (2, 2),
        format!(
            "north-south {} = {}, exemplar on CP^1 {} = {}",
            ns.lhs, ns.rhs, mh.lhs, mh.rhs
        ),
    )
}

fn unit3(g: &mut impl Rng) -> [f64; 3] {
    let v = [normal(g), normal(g), normal(g)];
    sphere::normalize(&v)
}

fn tubular() -> Outcome {
    let eps = 0.2;
    let cfg = TubularConfig::new(eps).unwrap();
    let mut g = rng(1009);
    let mut worst: f64 = 0.0;
    for k in 0..10_000 {
        let p = unit3(&mut g);
        let r = if k % 2 == 0 { 1.0 + eps } else { 1.0 - eps };
        let q = [r * p[0], r * p[1], r * p[2]];
        let w = tubular_extend(&cfg, north_south_field, &q).map_err(|e| e.to_string())?;
        let h = cfg.boundary_normal(&q).map_err(|e| e.to_string())?;
        worst = worst.max((sphere::dot(&w, &h) - eps).abs());
    }
    let mut worst_det: f64 = 0.0;
    let h = 1e-5;
    for pole in [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]] {
        let (e1, e2) = sphere::tangent_frame(&pole);
        let frame = [e1, e2, pole];
        let cols: Vec<[f64; 3]> = frame
            .iter()
            .map(|e| {
                let a = tubular_extend(
                    &cfg,
                    north_south_field,
                    &[pole[0] + h * e[0], pole[1] + h * e[1], pole[2] + h * e[2]],
                )
                .unwrap();
                let b = tubular_extend(
                    &cfg,
                    north_south_field,
                    &[pole[0] - h * e[0], pole[1] - h * e[1], pole[2] - h * e[2]],
                )
                .unwrap();
                [
                    (a[0] - b[0]) / (2.0 * h),
                    (a[1] - b[1]) / (2.0 * h),
                    (a[2] - b[2]) / (2.0 * h),
                ]
            })
            .collect();
        let m: Vec<Vec<f64>> = frame
            .iter()
            .map(|ei| cols.iter().map(|col| sphere::dot(ei, col)).collect())
            .collect();
        let dw = det_real(&m);
        let j = sphere::tangent_jacobian(&north_south_field, &pole, h);
        let dv = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        worst_det = worst_det.max((dw - dv).abs() / dv.abs());
    }
    check(
        worst <= 1e-10 && worst_det <= 1e-6,
        format!("w.h - eps max {worst:.1e} on 10^4 points; det dw vs det dv {worst_det:.1e}"),
    )
}

fn hedgehog() -> Outcome {
    let tol = Tolerances::default();
    let mut g = rng(1010);
    let mut worst: f64 = 0.0;
    let mut worst_mu: f64 = 0.0;
    for n in [3, 5, 7] {
        for trial in 0..100u64 {
            let a = random_real(&mut g, n);
            let p = hedgehog_solve(&RealMatrix::from_rows(&a).unwrap(), trial, &tol)
                .map_err(|e| format!("order {n} trial {trial}: {e}"))?;
            worst = worst.max(p.residual);
            let gap = real_eigenvalues(&a)
                .iter()
                .map(|x| (x - p.mu).abs())
                .fold(f64::INFINITY, f64::min);
            worst_mu = worst_mu.max(gap);
        }
    }
    check(
        worst <= 1e-9 && worst_mu <= 1e-6,
        format!("300 matrices, worst residual {worst:.1e}, eigenvalue vs bisection {worst_mu:.1e}"),
    )
}

fn hermitian_from(x: &[Vec<C64>]) -> HermitianMatrix {
    let n = x.len();
    HermitianMatrix::new(
        ComplexMatrix::from_fn(n, |j, i| x[j][i] + x[i][j].conj()).unwrap(),
        1e-12,
    )
    .unwrap()
}

fn lk_algebra() -> Outcome {
    let mut g = rng(1011);
    let one = c(1.0, 0.0);
    let mut worst_c: f64 = 0.0;
    let mut worst_e: f64 = 0.0;
    for n in [2, 3, 5] {
        for _ in 0..100 {
            let a = ComplexMatrix::from_rows(&random_complex(&mut g, n)).unwrap();
            let b = hermitian_from(&random_complex(&mut g, n));
            let (l, k) = lk_operators(&a, &b).unwrap();
            let (lk, _) = lk_operators(&a, &k).unwrap();
            let (_, kl) = lk_operators(&a, &l).unwrap();
            let diff = lk
                .as_matrix()
                .combine(one, kl.as_matrix(), -one)
                .frobenius_norm();
            worst_c =
                worst_c.max(diff / (a.frobenius_norm().powi(2) * b.as_matrix().frobenius_norm()));

            // Known eigenpair by a rank-one update: A v = lambda v.
            let base = random_complex(&mut g, n);
            let v: Vec<C64> = (0..n).map(|_| complex_normal(&mut g)).collect();
            let nv = vnorm(&v);
            let v: Vec<C64> = v.iter().map(|z| z / nv).collect();
            let lambda = complex_normal(&mut g);
            let bv = matvec(&base, &v);
            let rows: Vec<Vec<C64>> = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|i| base[j][i] + (v[j] * lambda - bv[j]) * v[i].conj())
                        .collect()
                })
                .collect();
            let a = ComplexMatrix::from_rows(&rows).unwrap();
            let bb = HermitianMatrix::outer(&v).unwrap();
            let (l, k) = lk_operators(&a, &bb).unwrap();
            let el = l
                .as_matrix()
                .combine(one, bb.as_matrix(), c(-lambda.re, 0.0))
                .frobenius_norm();
            let ek = k
                .as_matrix()
                .combine(one, bb.as_matrix(), c(-lambda.im, 0.0))
                .frobenius_norm();
            worst_e = worst_e.max(el + ek);
        }
    }
    check(
        worst_c <= 1e-12 && worst_e <= 1e-10,
        format!("commutator {worst_c:.1e} (normalized), reconstruction {worst_e:.1e}"),
    )
}

fn singular_search() -> Outcome {
    let tol = Tolerances::default();
    let mut g = rng(1012);
    let mut worst: f64 = 0.0;
    let mut max_restarts = 0;
    for q in [2, 6] {
        for trial in 0..20u64 {
            let mats: Vec<Vec<Vec<f64>>> = (0..3).map(|_| random_real(&mut g, q)).collect();
            let rm: Vec<RealMatrix> = mats
                .iter()
                .map(|m| RealMatrix::from_rows(m).unwrap())
                .collect();
            let s = find_singular_combination(&rm[0], &rm[1], &rm[2], trial, &tol)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| {
                    format!("order {q} trial {trial}: no singular combination in 200 restarts")
                })?;
            let comb: Vec<Vec<f64>> = (0..q)
                .map(|j| {
                    (0..q)
                        .map(|i| (0..3).map(|k| s.coeffs[k] * mats[k][j][i]).sum())
                        .collect()
                })
                .collect();
            let unit = (s.coeffs.iter().map(|x| x * x).sum::<f64>() - 1.0).abs();
            if unit > 1e-12 {
                return Err(format!("coefficients off the unit sphere by {unit:e}"));
            }
            worst = worst.max(det_real(&comb).abs());
            max_restarts = max_restarts.max(s.restarts);
        }
    }
    check(
        worst <= 1e-8 && max_restarts <= 200,
        format!("40 triples, worst |det| {worst:.1e}, at most {max_restarts} restarts"),
    )
}

fn euler_identity() -> Outcome {
    let mut g = rng(1013);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let nvars = g.gen_range(1..=3usize);
        let d = g.gen_range(1..=4u32);
        let terms: Vec<(C64, Vec<u32>)> = (0..g.gen_range(1..=4))
            .map(|_| {
                let mut e = vec![0u32; nvars];
                for _ in 0..d {
                    e[g.gen_range(0..nvars)] += 1;
                }
                (complex_normal(&mut g), e)
            })
            .collect();
        let f = HomogeneousPolynomial::new(nvars, terms).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let p: Vec<C64> = (0..nvars).map(|_| complex_normal(&mut g)).collect();
            let (lhs, rhs) = euler_identity_check(&f, &p).map_err(|e| e.to_string())?;
            worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    check(
        worst <= 1e-12,
        format!("1000 evaluations, max relative deviation {worst:.1e}"),
    )
}

fn geometry() -> Outcome {
    let mut g = rng(1014);
    let tol_chart = 1e-8;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = 3;
        let charts: Vec<usize> = (0..3).map(|_| g.gen_range(0..=n)).collect();
        let w: Vec<C64> = (0..n)
            .map(|_| C64::from_polar(g.gen_range(0.2..3.0), g.gen_range(0.0..2.0 * PI)))
            .collect();
        let ch = |j: usize| ChartId::new(j, n).unwrap();
        let wi = AffineCoords::new(ch(charts[0]), w).unwrap();
        let via = transition(
            &transition(&wi, ch(charts[1]), tol_chart).unwrap(),
            ch(charts[2]),
            tol_chart,
        )
        .unwrap();
        let direct = transition(&wi, ch(charts[2]), tol_chart).unwrap();
        for (a, b) in via.coords().iter().zip(direct.coords()) {
            worst = worst.max((a - b).norm() / (1.0 + b.norm()));
        }
    }
    let mut delta = f64::INFINITY;
    let mut min_sv = f64::INFINITY;
    for n in [1, 2] {
        let point = |g: &mut rand_chacha::ChaCha20Rng| {
            ProjectivePoint::new((0..=n).map(|_| complex_normal(g)).collect()).unwrap()
        };
        let mut pairs = 0;
        while pairs < 500 {
            let (p, q) = (point(&mut g), point(&mut g));
            if proj_distance(&p, &q).unwrap() < 1e-3 {
                continue;
            }
            pairs += 1;
            let (ep, eq) = (embed(&p), embed(&q));
            delta = delta.min(
                ep.iter()
                    .zip(&eq)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt(),
            );
        }
        for _ in 0..100 {
            let p = point(&mut g);
            let j = p.pivot_chart();
            let w = to_chart(&p, j, tol_chart).unwrap();
            let h = 1e-6;
            let mut cols: Vec<Vec<f64>> = Vec::new();
            for k in 0..n {
                for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
                    let at = |s: f64| {
                        let mut v = w.coords().to_vec();
                        v[k] += dir * s;
                        embed(&from_chart(&AffineCoords::new(j, v).unwrap()))
                    };
                    let (a, b) = (at(h), at(-h));
                    cols.push(a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect());
                }
            }
            let rows: Vec<Vec<f64>> = (0..cols[0].len())
                .map(|r| cols.iter().map(|col| col[r]).collect())
                .collect();
            min_sv = min_sv.min(min_singular_value(&rows));
        }
    }
    check(
        worst <= 1e-12 && delta > 0.0 && min_sv > 1e-6,
        format!("cocycle {worst:.1e}; injectivity delta_emb {delta:.2e}; immersion min singular value {min_sv:.2e}"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        ("total-index invariant", total_index),
        ("exemplar reproduction", exemplar),
        ("scalar and Jordan cases", scalar_and_jordan),
        ("polynomial roots", polynomial_roots),
        ("Stokes identity", stokes),
        ("sphere areas", sphere_areas),
        ("degree integrality", degree_values),
        ("Hopf lemma harness", hopf_lemma),
        ("tubular identities", tubular),
        ("hedgehog eigenpairs", hedgehog),
        ("L/K operator algebra", lk_algebra),
        ("singular combination search", singular_search),
        ("Euler identity", euler_identity),
        ("geometry coherence", geometry),
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                let f = *f;
                s.spawn(move || {
                    std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), result)) in criteria.iter().zip(&results).enumerate() {
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
