use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point is outside chart U_{chart} (|z_{chart}| = {modulus:e})")]
    ChartDomain { chart: usize, modulus: f64 },

    #[error("matrix is numerically singular at the evaluation point (|Ay| = {norm:e})")]
    NearSingular { norm: f64 },

    #[error("point lies outside the tube of radius {epsilon} (distance {distance})")]
    OutsideTube { distance: f64, epsilon: f64 },

    #[error("degree integral {raw} is {gap} away from the nearest integer")]
    UnresolvedDegree { raw: f64, gap: f64 },

    #[error("field vanishes on the integration contour")]
    VanishesOnContour,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("search budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
