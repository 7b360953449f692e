//! Numerical thresholds shared by every module.

/// Named tolerances. Every field can be overridden by name through
/// [`Tolerances::set`], which is what the command line uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Pivot threshold factor for rank decisions, scaled by order and the largest row norm.
    pub tol_rank: f64,
    /// Relative residual bound for returned null vectors.
    pub tol_res: f64,
    /// Hermitian symmetry, relative to the Frobenius norm.
    pub tol_herm: f64,
    /// Determinant threshold for the singular-combination search, relative to the product of norms.
    pub tol_det: f64,
    /// Minimum relative modulus of the chart coordinate.
    pub tol_chart: f64,
    /// Projective equality.
    pub tol_proj: f64,
    /// Relative eigen-residual accepted for a zero.
    pub tol_accept: f64,
    /// Projective distance under which two zeros are merged.
    pub tol_dedup: f64,
    /// Relative distance to `mu * I` under which a matrix counts as scalar.
    pub tol_scalar: f64,
    /// Polynomial residual bound, scaled by `(1 + |root|)^degree`.
    pub tol_poly: f64,
    /// Relative Jacobian determinant under which a zero is degenerate.
    pub tol_degen: f64,
    /// Maximum distance from an integer for a degree integral to snap.
    pub snap_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_rank: 1e-10,
            tol_res: 1e-8,
            tol_herm: 1e-12,
            tol_det: 1e-8,
            tol_chart: 1e-8,
            tol_proj: 1e-10,
            tol_accept: 1e-9,
            tol_dedup: 1e-6,
            tol_scalar: 1e-12,
            tol_poly: 1e-8,
            tol_degen: 1e-10,
            snap_tol: 0.01,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 12] = [
        "tol_rank",
        "tol_res",
        "tol_herm",
        "tol_det",
        "tol_chart",
        "tol_proj",
        "tol_accept",
        "tol_dedup",
        "tol_scalar",
        "tol_poly",
        "tol_degen",
        "snap_tol",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "tol_rank" => &mut self.tol_rank,
            "tol_res" => &mut self.tol_res,
            "tol_herm" => &mut self.tol_herm,
            "tol_det" => &mut self.tol_det,
            "tol_chart" => &mut self.tol_chart,
            "tol_proj" => &mut self.tol_proj,
            "tol_accept" => &mut self.tol_accept,
            "tol_dedup" => &mut self.tol_dedup,
            "tol_scalar" => &mut self.tol_scalar,
            "tol_poly" => &mut self.tol_poly,
            "tol_degen" => &mut self.tol_degen,
            "snap_tol" => &mut self.snap_tol,
            _ => return None,
        })
    }

    /// Override one tolerance. Unknown names and values outside `(0, 1)` are rejected.
    pub fn set(&mut self, name: &str, value: f64) -> crate::Result<()> {
        if !(value > 0.0 && value < 1.0) {
            return Err(crate::Error::invalid(alloc::format!(
                "tolerance {name} = {value} is outside (0, 1)"
            )));
        }
        let slot = self
            .slot(name)
            .ok_or_else(|| crate::Error::invalid(alloc::format!("unknown tolerance {name:?}")))?;
        *slot = value;
        Ok(())
    }
}
