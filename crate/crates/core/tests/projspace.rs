mod common;

use axis_core::projective::{
    bump, embed, embedding_dim, from_chart, hopf_project, partition_value, proj_distance, to_chart,
    transition,
};
use axis_core::{AffineCoords, ChartId, ProjectivePoint};
use common::*;
use num_complex::Complex64 as C64;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

const TOL_CHART: f64 = 1e-8;

fn pt(z: &[C64]) -> ProjectivePoint {
    ProjectivePoint::new(z.to_vec()).unwrap()
}

fn chart(j: usize, n: usize) -> ChartId {
    ChartId::new(j, n).unwrap()
}

fn random_point(r: &mut impl rand::Rng, n: usize) -> ProjectivePoint {
    pt(&(0..=n).map(|_| complex_normal(r)).collect::<Vec<_>>())
}

#[test]
fn to_chart_examples() {
    let w = to_chart(
        &ProjectivePoint::basis(2, 0).unwrap(),
        chart(0, 2),
        TOL_CHART,
    )
    .unwrap();
    assert_eq!(w.coords(), &[c(0.0, 0.0), c(0.0, 0.0)]);

    let w = to_chart(&pt(&[c(1.0, 0.0), c(1.0, 0.0)]), chart(1, 1), TOL_CHART).unwrap();
    assert!((w.coords()[0] - c(1.0, 0.0)).norm() < 1e-15);

    let p = pt(&[c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0)]);
    let w = to_chart(&p, chart(0, 2), TOL_CHART).unwrap();
    assert!((w.coords()[0] - c(2.0, 0.0)).norm() < 1e-14);
    assert!((w.coords()[1] - c(3.0, 0.0)).norm() < 1e-14);
    assert!(proj_distance(&from_chart(&w), &p).unwrap() < 1e-10);

    let err = to_chart(
        &ProjectivePoint::basis(1, 0).unwrap(),
        chart(1, 1),
        TOL_CHART,
    )
    .unwrap_err();
    assert!(err.to_string().contains('1'));
}

#[test]
fn transitions() {
    let w = AffineCoords::new(chart(0, 1), vec![c(2.0, 0.0)]).unwrap();
    let v = transition(&w, chart(1, 1), TOL_CHART).unwrap();
    assert!((v.coords()[0] - c(0.5, 0.0)).norm() < 1e-15);

    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = 3;
        let (i, j) = (r.gen_range(0..=n), r.gen_range(0..=n));
        let w = AffineCoords::new(
            chart(i, n),
            (0..n).map(|_| complex_normal(&mut r)).collect(),
        )
        .unwrap();
        let back = transition(
            &transition(&w, chart(j, n), TOL_CHART).unwrap(),
            chart(i, n),
            TOL_CHART,
        )
        .unwrap();
        for (a, b) in back.coords().iter().zip(w.coords()) {
            worst = worst.max((a - b).norm() / (1.0 + b.norm()));
        }
    }
    assert!(worst <= 1e-13, "{worst:e}");

    // n = 2, chart 1 -> chart 0 against the homogeneous route.
    let w = AffineCoords::new(chart(1, 2), vec![c(0.3, -1.0), c(2.0, 0.5)]).unwrap();
    let direct = transition(&w, chart(0, 2), TOL_CHART).unwrap();
    let z = w.lift();
    let expect = [z[1] / z[0], z[2] / z[0]];
    for (a, b) in direct.coords().iter().zip(expect) {
        assert!((a - b).norm() < 1e-14);
    }
}

#[test]
fn hopf_projection() {
    let (s, p) = hopf_project(&[c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
    assert!((s[0] - c(0.6, 0.0)).norm() < 1e-15 && (s[1] - c(0.8, 0.0)).norm() < 1e-15);
    assert!(proj_distance(&p, &pt(&[c(3.0, 0.0), c(4.0, 0.0)])).unwrap() < 1e-15);
    assert!(hopf_project(&[c(0.0, 0.0); 3]).is_err());

    let mut r = rng(2);
    for _ in 0..100 {
        let v: Vec<C64> = (0..3).map(|_| complex_normal(&mut r)).collect();
        let (s, p) = hopf_project(&v).unwrap();
        assert!((vnorm(&s) - 1.0).abs() <= 1e-15);
        let rotated: Vec<C64> = v.iter().map(|z| z * C64::from_polar(1.0, 1.2)).collect();
        let (_, q) = hopf_project(&rotated).unwrap();
        assert!(proj_distance(&p, &q).unwrap() <= 1e-14);
    }
}

#[test]
fn distances() {
    let e0 = ProjectivePoint::basis(1, 0).unwrap();
    let e1 = ProjectivePoint::basis(1, 1).unwrap();
    let d = pt(&[c(1.0, 0.0), c(1.0, 0.0)]);
    assert_eq!(proj_distance(&e0, &e0).unwrap(), 0.0);
    assert!((proj_distance(&e0, &e1).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert!((proj_distance(&d, &e0).unwrap() - FRAC_PI_4).abs() < 1e-15);
    assert!(proj_distance(&e0, &ProjectivePoint::basis(2, 0).unwrap()).is_err());
}

#[test]
fn bump_profile() {
    assert_eq!(bump(0.0), (-1.0f64).exp());
    assert_eq!(bump(1.0), 0.0);
    assert_eq!(bump(-1.0), 0.0);
    assert!(bump(0.5) > 0.0);
    let h = 1e-3;
    for x in [1.0, -1.0] {
        let d1 = (bump(x + h) - bump(x - h)) / (2.0 * h);
        let d2 = (bump(x + h) - 2.0 * bump(x) + bump(x - h)) / (h * h);
        assert!(d1.abs() < 1e-8 && d2.abs() < 1e-8);
    }
}

#[test]
fn embedding_chart_center() {
    let p = ProjectivePoint::basis(1, 0).unwrap();
    let e = embed(&p);
    assert_eq!(e.len(), embedding_dim(1));
    assert_eq!(e.len(), 6);
    // sigma_0 (2 reals), sigma_1 (2 reals), lambda_0, lambda_1
    assert_eq!(&e[2..4], &[0.0, 0.0]);
    assert_eq!(e[4], 1.0);
    assert_eq!(partition_value(&p, chart(0, 1)), 1.0);
    assert_eq!(partition_value(&p, chart(1, 1)), 0.0);
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[test]
fn embedding_injective_on_samples() {
    for n in [1, 2] {
        let mut r = rng(40 + n as u64);
        let mut delta = f64::INFINITY;
        let mut pairs = 0;
        while pairs < 500 {
            let p = random_point(&mut r, n);
            let q = random_point(&mut r, n);
            if proj_distance(&p, &q).unwrap() < 1e-3 {
                continue;
            }
            pairs += 1;
            delta = delta.min(dist(&embed(&p), &embed(&q)));
        }
        assert!(delta > 0.0, "n = {n}: delta_emb = {delta:e}");
    }
}

fn embed_jacobian(p: &ProjectivePoint) -> Vec<Vec<f64>> {
    // Real directions of the pivot chart.
    let j = p.pivot_chart();
    let w = to_chart(p, j, TOL_CHART).unwrap();
    let n = w.dim();
    let h = 1e-6;
    let mut cols = Vec::new();
    for k in 0..n {
        for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
            let shift = |s: f64| {
                let mut v = w.coords().to_vec();
                v[k] += dir * s;
                embed(&from_chart(&AffineCoords::new(j, v).unwrap()))
            };
            let (a, b) = (shift(h), shift(-h));
            cols.push(
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| (x - y) / (2.0 * h))
                    .collect::<Vec<f64>>(),
            );
        }
    }
    let rows = cols[0].len();
    (0..rows)
        .map(|r| cols.iter().map(|col| col[r]).collect())
        .collect()
}

#[test]
fn embedding_is_an_immersion_on_samples() {
    for n in [1, 2] {
        let mut r = rng(70 + n as u64);
        for _ in 0..100 {
            let p = random_point(&mut r, n);
            let s = min_singular_value(&embed_jacobian(&p));
            assert!(s > 1e-6, "n = {n}: {s:e}");
        }
    }
}

#[test]
fn singular_value_oracle_sanity() {
    let m = vec![vec![3.0, 0.0], vec![0.0, 0.5], vec![0.0, 0.0]];
    assert!((min_singular_value(&m) - 0.5).abs() < 1e-12);
    let m = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
    assert!(min_singular_value(&m) < 1e-7);
}
