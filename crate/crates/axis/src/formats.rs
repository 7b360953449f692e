//! JSON interchange formats.
//!
//! Complex numbers are `[re, im]` pairs. Matrices are
//! `{"order": n, "rows": [[[re, im], ...], ...]}`, polynomials
//! `{"degree": d, "coeffs": [[re, im], ...]}` listing `c_0..c_{d-1}` of the
//! monic `x^d + c_{d-1} x^{d-1} + ... + c_0`, and projective points
//! `{"n": n, "homog": [[re, im], ...]}`. Unknown keys are rejected.

use std::path::Path;

use axis_core::{ComplexMatrix, PolynomialCoeffs, ProjectivePoint, RealMatrix, C64};
use serde::{Deserialize, Serialize};

/// Anything wrong with the caller's input. Always maps to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; the fields carry it already.
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        InputError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

impl From<axis_core::Error> for InputError {
    fn from(e: axis_core::Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

pub type Pair = [f64; 2];

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn complex(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub order: usize,
    pub rows: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub degree: usize,
    pub coeffs: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub n: usize,
    pub homog: Vec<Pair>,
}

/// Three real matrices of equal order for the singular-combination search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub matrices: [MatrixFile; 3],
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            order: m.order(),
            rows: m
                .rows()
                .map(|r| r.iter().map(|z| pair(*z)).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, InputError> {
        if self.rows.len() != self.order {
            return Err(InputError::Invalid(format!(
                "\"order\" is {} but {} rows were given",
                self.order,
                self.rows.len()
            )));
        }
        if let Some((k, r)) = self
            .rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.order)
        {
            return Err(InputError::Invalid(format!(
                "row {k} has {} entries, expected {}",
                r.len(),
                self.order
            )));
        }
        let rows: Vec<Vec<C64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(complex).collect())
            .collect();
        Ok(ComplexMatrix::from_rows(&rows)?)
    }

    pub fn to_real(&self) -> Result<RealMatrix, InputError> {
        let m = self.to_matrix()?;
        RealMatrix::try_from_complex(&m)
            .map_err(|_| InputError::Invalid("expected a real matrix (every im = 0)".into()))
    }
}

impl PolynomialFile {
    pub fn to_poly(&self) -> Result<PolynomialCoeffs, InputError> {
        if self.coeffs.len() != self.degree {
            return Err(InputError::Invalid(format!(
                "\"degree\" is {} but {} coefficients were given",
                self.degree,
                self.coeffs.len()
            )));
        }
        Ok(PolynomialCoeffs::new(
            self.coeffs.iter().map(complex).collect(),
        )?)
    }
}

impl PointFile {
    pub fn from_point(p: &ProjectivePoint) -> Self {
        Self {
            n: p.dim(),
            homog: p.homog().iter().map(|z| pair(*z)).collect(),
        }
    }

    pub fn to_point(&self) -> Result<ProjectivePoint, InputError> {
        if self.homog.len() != self.n + 1 {
            return Err(InputError::Invalid(format!(
                "a point of CP^{} needs {} coordinates, got {}",
                self.n,
                self.n + 1,
                self.homog.len()
            )));
        }
        Ok(ProjectivePoint::new(
            self.homog.iter().map(complex).collect(),
        )?)
    }
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    parse(&read_file(path)?)
}
