//! One runner per subcommand. Each returns the JSON body of its report and
//! whether the check passed; input problems and failed computations are
//! reported through [`Failure`].

use std::path::Path;

use axis_core::degree::{ball_volume, hopf_lemma_check, map_degree_raw, omega_integral};
use axis_core::matrix::find_singular_combination;
use axis_core::quadrature::SphereQuadrature;
use axis_core::solver::{hedgehog_solve, poly_roots, solve_with, SolverConfig};
use axis_core::sphere::{cp1_field_on_sphere, north_south_field, TubularConfig, Vec3};
use axis_core::{rng, ComplexMatrix, Tolerances};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::formats::{self, InputError, MatrixFile, PolynomialFile, TripleFile};
use crate::report;

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub seed: u64,
    pub tol: Tolerances,
}

impl Context {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            tol: self.tol,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub summary: String,
    pub body: Map<String, Value>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(summary: String, body: &impl Serialize, pass: bool) -> Self {
        let body = match serde_json::to_value(body).expect("report types serialize") {
            Value::Object(map) => map,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Self {
            summary,
            body,
            pass,
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Computation(String),
}

impl From<axis_core::Error> for Failure {
    fn from(e: axis_core::Error) -> Self {
        match e {
            axis_core::Error::InvalidInput(_) | axis_core::Error::ChartDomain { .. } => {
                Failure::Input(e.into())
            }
            other => Failure::Computation(other.to_string()),
        }
    }
}

/// Quadrature node overrides; `None` keeps the default for the dimension.
#[derive(Debug, Clone, Copy, Default)]
pub struct Nodes {
    pub circle: Option<usize>,
    pub polar: Option<usize>,
    pub azimuth: Option<usize>,
    pub pairs: Option<usize>,
}

impl Nodes {
    /// A rule on `S^{dim-1}`.
    pub fn rule(&self, dim: usize, seed: u64) -> Result<SphereQuadrature, Failure> {
        Ok(match dim {
            0 => return Err(InputError::Invalid("--N must be at least 1".into()).into()),
            1 => SphereQuadrature::counting(),
            2 => SphereQuadrature::circle(self.circle.unwrap_or(256))?,
            3 => SphereQuadrature::product_gauss(
                3,
                self.polar.unwrap_or(64),
                self.azimuth.unwrap_or(128),
            )?,
            4 => SphereQuadrature::product_gauss(
                4,
                self.polar.unwrap_or(32),
                self.azimuth.unwrap_or(64),
            )?,
            _ => SphereQuadrature::monte_carlo(dim, self.pairs.unwrap_or(20_000), seed)?,
        })
    }
}

pub fn roots(ctx: &Context, input: &Path) -> Result<Outcome, Failure> {
    let p = formats::load::<PolynomialFile>(input)?.to_poly()?;
    let r = poly_roots(&p, ctx.seed, &ctx.solver());
    let accepted = r.roots.iter().filter(|x| x.accepted).count();
    let summary = format!(
        "degree {}: {} distinct roots, {} accepted, {}",
        p.degree(),
        r.roots.len(),
        accepted,
        if r.certified {
            "certified"
        } else {
            "NOT certified"
        }
    );
    Ok(Outcome::new(
        summary,
        &report::Roots::new(p.degree(), &r),
        r.certified,
    ))
}

pub fn eigen(ctx: &Context, input: &Path) -> Result<Outcome, Failure> {
    let m = formats::load::<MatrixFile>(input)?.to_matrix()?;
    let r = solve_with(&m, ctx.seed, &ctx.solver());
    let summary = if r.continuum {
        format!("scalar matrix of order {}: continuum of zeros", r.order)
    } else {
        format!(
            "{} zeros, total index {} of {}, {}",
            r.zeros.len(),
            r.total_index,
            r.order,
            if r.certified {
                "certified"
            } else {
                "NOT certified"
            }
        )
    };
    let mut out = Outcome::new(
        summary,
        &report::Solve::from(&r),
        r.certified || r.continuum,
    );
    if r.continuum {
        out.warnings.push(
            "every point is a zero of the field; listed zeros are only representatives".into(),
        );
    }
    Ok(out)
}

#[derive(Serialize)]
struct IndexFailure {
    trial: usize,
    seed: u64,
    matrix_hash: String,
    total_index: i64,
    certified: bool,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct IndexRun {
    n: usize,
    order: usize,
    trials: usize,
    seed: u64,
    certified: usize,
    failures: Vec<IndexFailure>,
}

pub fn verify_index(ctx: &Context, n: usize, trials: usize) -> Result<Outcome, Failure> {
    let order = n + 1;
    let mut g = rng::seeded(ctx.seed);
    let cfg = ctx.solver();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let m = ComplexMatrix::random(&mut g, order)?;
        let seed = ctx.seed.wrapping_add(trial as u64);
        let r = solve_with(&m, seed, &cfg);
        if !(r.certified && r.total_index == order as i64) {
            failures.push(IndexFailure {
                trial,
                seed,
                matrix_hash: r.matrix_hash,
                total_index: r.total_index,
                certified: r.certified,
                notes: r.notes,
            });
        }
    }
    let certified = trials - failures.len();
    let summary = format!(
        "{certified}/{trials} random matrices of order {order} certified with total index {order}"
    );
    let pass = failures.is_empty();
    Ok(Outcome::new(
        summary,
        &IndexRun {
            n,
            order,
            trials,
            seed: ctx.seed,
            certified,
            failures,
        },
        pass,
    ))
}

#[derive(Serialize)]
struct StokesRun {
    #[serde(rename = "N")]
    dim: usize,
    scheme: &'static str,
    nodes: usize,
    seed: u64,
    integral: f64,
    expected: f64,
    residual: f64,
    tolerance: f64,
    est_error: f64,
}

fn stokes_tolerance(dim: usize) -> f64 {
    match dim {
        1 => 1e-14,
        2 => 1e-12,
        3 => 1e-8,
        _ => 1e-6,
    }
}

pub fn verify_stokes(ctx: &Context, dim: usize, nodes: &Nodes) -> Result<Outcome, Failure> {
    let q = nodes.rule(dim, ctx.seed)?;
    let (integral, est_error) = omega_integral(&q);
    let expected = dim as f64 * ball_volume(dim)?;
    let residual = (integral - expected).abs();
    let tolerance = stokes_tolerance(dim);
    let pass = residual <= tolerance;
    let summary = format!(
        "|integral of omega over S^{} - N Vol(B^N)| = {residual:.3e} {} {tolerance:.0e}",
        dim - 1,
        if pass { "<=" } else { ">" }
    );
    let run = StokesRun {
        dim,
        scheme: report::scheme_name(q.scheme()),
        nodes: q.len(),
        seed: ctx.seed,
        integral,
        expected,
        residual,
        tolerance,
        est_error,
    };
    Ok(Outcome::new(summary, &run, pass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereMap {
    Identity,
    /// `z -> z^k` on the unit circle.
    Power(i64),
    Antipodal,
}

impl std::str::FromStr for SphereMap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(Self::Identity),
            "antipodal" => Ok(Self::Antipodal),
            _ => {
                let k = s.strip_prefix("power:").ok_or_else(|| {
                    format!("unknown map {s:?}; expected identity, power:K or antipodal")
                })?;
                k.parse()
                    .map(Self::Power)
                    .map_err(|_| format!("bad exponent in {s:?}"))
            }
        }
    }
}

impl std::fmt::Display for SphereMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Identity => f.write_str("identity"),
            Self::Power(k) => write!(f, "power:{k}"),
            Self::Antipodal => f.write_str("antipodal"),
        }
    }
}

#[derive(Serialize)]
struct DegreeRun {
    map: String,
    #[serde(rename = "N")]
    dim: usize,
    expected: i64,
    snap_tol: f64,
    estimate: report::Degree,
}

pub fn degree(
    ctx: &Context,
    map: SphereMap,
    dim: usize,
    nodes: &Nodes,
) -> Result<Outcome, Failure> {
    let q = nodes.rule(dim, ctx.seed)?;
    let (est, expected) = match map {
        SphereMap::Identity => (map_degree_raw(&|x: &[f64]| x.to_vec(), &q)?, 1),
        SphereMap::Antipodal => {
            let sign = if dim.is_multiple_of(2) { 1 } else { -1 };
            (
                map_degree_raw(&|x: &[f64]| x.iter().map(|v| -v).collect(), &q)?,
                sign,
            )
        }
        SphereMap::Power(k) => {
            if dim != 2 {
                return Err(
                    InputError::Invalid("power maps live on the circle; use --N 2".into()).into(),
                );
            }
            let g = move |x: &[f64]| {
                let t = x[1].atan2(x[0]) * k as f64;
                vec![t.cos(), t.sin()]
            };
            (map_degree_raw(&g, &q)?, k)
        }
    };
    let resolved = est.resolve(ctx.tol.snap_tol).ok();
    let pass = resolved == Some(expected);
    let summary = match resolved {
        Some(d) => format!(
            "degree of {map} on S^{} is {d} (expected {expected}), gap {:.1e}",
            dim - 1,
            est.gap
        ),
        None => format!(
            "degree of {map} on S^{} unresolved: raw {} gap {:.1e}",
            dim - 1,
            est.raw,
            est.gap
        ),
    };
    let run = DegreeRun {
        map: map.to_string(),
        dim,
        expected,
        snap_tol: ctx.tol.snap_tol,
        estimate: (&est).into(),
    };
    Ok(Outcome::new(summary, &run, pass))
}

pub fn hedgehog(ctx: &Context, input: &Path) -> Result<Outcome, Failure> {
    let a = formats::load::<MatrixFile>(input)?.to_real()?;
    let e = hedgehog_solve(&a, ctx.seed, &ctx.tol)?;
    let summary = format!("real eigenvalue {} with residual {:.1e}", e.mu, e.residual);
    Ok(Outcome::new(
        summary,
        &report::Eigenpair::new(a.order(), ctx.seed, &e),
        true,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceField {
    NorthSouth,
    Exemplar,
}

pub struct TubularArgs<'a> {
    pub field: SurfaceField,
    pub input: Option<&'a Path>,
    pub epsilon: f64,
    pub nodes: Nodes,
}

pub fn verify_tubular(ctx: &Context, args: &TubularArgs<'_>) -> Result<Outcome, Failure> {
    let cfg = TubularConfig::new(args.epsilon)?;
    let q = args.nodes.rule(3, ctx.seed)?;
    let (name, matrix) = match (args.input, args.field) {
        (Some(path), _) => (
            format!("matrix {}", path.display()),
            Some(formats::load::<MatrixFile>(path)?.to_matrix()?),
        ),
        (None, SurfaceField::Exemplar) => {
            ("exemplar".to_string(), Some(ComplexMatrix::exemplar(2)?))
        }
        (None, SurfaceField::NorthSouth) => ("north-south".to_string(), None),
    };
    let check = match &matrix {
        Some(m) => {
            if m.order() != 2 {
                return Err(
                    InputError::Invalid("the surface field needs a 2 x 2 matrix".into()).into(),
                );
            }
            let field = |p: &Vec3| cp1_field_on_sphere(m, p).unwrap_or([f64::NAN; 3]);
            hopf_lemma_check(&field, &cfg, &q, ctx.tol.snap_tol)?
        }
        None => hopf_lemma_check(&north_south_field, &cfg, &q, ctx.tol.snap_tol)?,
    };
    let run = report::Tubular::new(name, args.epsilon, &check);
    let summary = format!(
        "boundary degree {} {} index sum {} over {} zeros",
        check.lhs,
        if run.pass { "=" } else { "!=" },
        check.rhs,
        check.zeros.len()
    );
    let pass = run.pass;
    Ok(Outcome::new(summary, &run, pass))
}

pub fn singular_combo(ctx: &Context, input: &Path) -> Result<Outcome, Failure> {
    let t = formats::load::<TripleFile>(input)?;
    let [a, b, c] = [
        t.matrices[0].to_real()?,
        t.matrices[1].to_real()?,
        t.matrices[2].to_real()?,
    ];
    let found = find_singular_combination(&a, &b, &c, ctx.seed, &ctx.tol)?;
    let summary = match &found {
        Some(s) => format!(
            "singular combination ({:.6}, {:.6}, {:.6}), relative det {:.1e}",
            s.coeffs[0], s.coeffs[1], s.coeffs[2], s.relative
        ),
        None => "no singular combination found within the search budget".to_string(),
    };
    Ok(Outcome::new(
        summary,
        &report::Singular::new(a.order(), ctx.seed, found.as_ref()),
        found.is_some(),
    ))
}
