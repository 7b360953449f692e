//! Argument parsing and the exit-status contract: 0 on success, 1 when a
//! verification fails or a computation gives up, 2 on bad input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use axis_core::Tolerances;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::commands::{
    self, Context, Failure, Nodes, Outcome, SphereMap, SurfaceField, TubularArgs,
};
use crate::text;

pub const SEED_ENV: &str = "AXIS_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "axis",
    version,
    about = "Eigenpairs as zeros of a vector field on complex projective space"
)]
pub struct Cli {
    /// Seed for every random choice; AXIS_SEED takes precedence when set.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override a tolerance, e.g. --tol tol_accept=1e-8. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true, value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Leave out version and timing so output depends only on inputs.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    NorthSouth,
    Exemplar,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct NodeArgs {
    /// Trapezoid nodes on the circle.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Gauss–Legendre nodes per polar angle.
    #[arg(long)]
    pub polar: Option<usize>,
    /// Trapezoid nodes in the azimuth.
    #[arg(long)]
    pub azimuth: Option<usize>,
    /// Antithetic sample pairs for Monte Carlo rules.
    #[arg(long)]
    pub pairs: Option<usize>,
}

impl From<NodeArgs> for Nodes {
    fn from(a: NodeArgs) -> Self {
        Nodes {
            circle: a.nodes,
            polar: a.polar,
            azimuth: a.azimuth,
            pairs: a.pairs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots of a monic polynomial through its companion matrix.
    Roots {
        #[arg(long)]
        input: PathBuf,
    },
    /// All eigenpairs of a complex matrix.
    Eigen {
        #[arg(long)]
        input: PathBuf,
    },
    /// Solve random matrices of order n + 1 and check the total index.
    VerifyIndex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Integrate omega over the unit sphere in R^N.
    VerifyStokes {
        #[arg(long = "N")]
        dim: usize,
        #[command(flatten)]
        nodes: NodeArgs,
    },
    /// Degree of a standard map of the unit sphere in R^N.
    Degree {
        /// identity, power:K (N = 2 only) or antipodal.
        #[arg(long)]
        map: SphereMap,
        #[arg(long = "N")]
        dim: usize,
        #[command(flatten)]
        nodes: NodeArgs,
    },
    /// A real eigenpair of a real matrix of odd order.
    Hedgehog {
        #[arg(long)]
        input: PathBuf,
    },
    /// Boundary degree against index sum for a tangent field on S^2.
    VerifyTubular {
        #[arg(long, value_enum, default_value_t = FieldArg::NorthSouth)]
        field: FieldArg,
        /// A 2 x 2 matrix whose field on CP^1 is used instead of --field.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[command(flatten)]
        nodes: NodeArgs,
    },
    /// Search for a singular real combination of three real matrices.
    SingularCombo {
        #[arg(long)]
        input: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Eigen { .. } => "eigen",
            Command::VerifyIndex { .. } => "verify-index",
            Command::VerifyStokes { .. } => "verify-stokes",
            Command::Degree { .. } => "degree",
            Command::Hedgehog { .. } => "hedgehog",
            Command::VerifyTubular { .. } => "verify-tubular",
            Command::SingularCombo { .. } => "singular-combo",
        }
    }
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("{value:?} is not a number"))?;
    let name = name.trim().to_string();
    Tolerances::default()
        .set(&name, value)
        .map_err(|e| e.to_string())?;
    Ok((name, value))
}

/// Everything a run produced: the exit status, stdout and stderr text.
#[derive(Debug)]
pub struct Finished {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Command::Roots { input } => commands::roots(ctx, input),
        Command::Eigen { input } => commands::eigen(ctx, input),
        Command::VerifyIndex { n, trials } => commands::verify_index(ctx, *n, *trials),
        Command::VerifyStokes { dim, nodes } => {
            commands::verify_stokes(ctx, *dim, &(*nodes).into())
        }
        Command::Degree { map, dim, nodes } => commands::degree(ctx, *map, *dim, &(*nodes).into()),
        Command::Hedgehog { input } => commands::hedgehog(ctx, input),
        Command::VerifyTubular {
            field,
            input,
            epsilon,
            nodes,
        } => {
            let field = match field {
                FieldArg::NorthSouth => SurfaceField::NorthSouth,
                FieldArg::Exemplar => SurfaceField::Exemplar,
            };
            let args = TubularArgs {
                field,
                input: input.as_deref(),
                epsilon: *epsilon,
                nodes: (*nodes).into(),
            };
            commands::verify_tubular(ctx, &args)
        }
        Command::SingularCombo { input } => commands::singular_combo(ctx, input),
    }
}

/// Runs a parsed command line. `env_seed` is the raw value of AXIS_SEED.
pub fn run(cli: &Cli, env_seed: Option<&str>) -> Finished {
    let input_error = |msg: String| Finished {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    };
    let seed = match env_seed {
        Some(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => return input_error(format!("{SEED_ENV}={s:?} is not an unsigned integer")),
        },
        None => cli.seed,
    };
    let mut tol = Tolerances::default();
    for (name, value) in &cli.tol {
        if let Err(e) = tol.set(name, *value) {
            return input_error(e.to_string());
        }
    }
    let ctx = Context { seed, tol };
    let started = Instant::now();
    let outcome = match dispatch(&cli.command, &ctx) {
        Ok(o) => o,
        Err(Failure::Input(e)) => return input_error(e.to_string()),
        Err(Failure::Computation(e)) => {
            return Finished {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            };
        }
    };
    let elapsed = started.elapsed();

    let mut doc = Map::new();
    doc.insert("command".into(), json!(cli.command.name()));
    doc.insert("summary".into(), json!(outcome.summary));
    doc.extend(outcome.body);
    doc.insert("pass".into(), json!(outcome.pass));
    if !outcome.warnings.is_empty() {
        doc.insert("warnings".into(), json!(outcome.warnings));
    }
    if !cli.no_meta {
        doc.insert(
            "meta".into(),
            json!({"version": env!("CARGO_PKG_VERSION"), "wall_time_ms": elapsed.as_secs_f64() * 1e3}),
        );
    }
    let doc = Value::Object(doc);
    let stdout = match cli.output {
        Output::Json => serde_json::to_string_pretty(&doc).expect("finite report") + "\n",
        Output::Text => text::render(&doc),
    };
    let stderr: String = outcome
        .warnings
        .iter()
        .map(|w| format!("warning: {w}\n"))
        .collect();
    Finished {
        code: if outcome.pass { 0 } else { 1 },
        stdout,
        stderr,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_seed = std::env::var(SEED_ENV).ok();
    let done = run(&cli, env_seed.as_deref());
    print!("{}", done.stdout);
    eprint!("{}", done.stderr);
    ExitCode::from(done.code)
}
