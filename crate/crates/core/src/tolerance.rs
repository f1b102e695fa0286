use serde::{Deserialize, Serialize};

use crate::error::{MaxminError, Result};

/// Numerical thresholds behind every rank, multiplicity and range decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Eigenvalues within `eig_multiplicity_tol * max(1, |λ_max|)` of `λ_max`
    /// are treated as the same eigenvalue.
    pub eig_multiplicity_tol: f64,
    /// Singular values at or below `rank_rel_tol * σ_max` count as zero.
    /// `None` means `ε · max(rows, cols)` for the matrix at hand.
    pub rank_rel_tol: Option<f64>,
    /// Relative residual bound for `y ∈ range(B)`.
    pub range_membership_tol: f64,
    /// Cholesky pivots must exceed `spd_tol * ||L||_F`.
    pub spd_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_multiplicity_tol: 1e-12,
            rank_rel_tol: None,
            range_membership_tol: 1e-10,
            spd_tol: 1e-14,
        }
    }
}

impl ToleranceConfig {
    pub fn with_rank_rel_tol(mut self, tol: f64) -> Self {
        self.rank_rel_tol = Some(tol);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name: &'static str, value: f64| {
            if value.is_finite() && value > 0.0 && value < 1.0 {
                Ok(())
            } else {
                Err(MaxminError::InvalidTolerance { name, value })
            }
        };
        check("eig_multiplicity_tol", self.eig_multiplicity_tol)?;
        if let Some(r) = self.rank_rel_tol {
            check("rank_rel_tol", r)?;
        }
        check("range_membership_tol", self.range_membership_tol)?;
        check("spd_tol", self.spd_tol)
    }

    /// Relative rank cut-off for a `rows × cols` matrix.
    pub fn rank_tol_for(&self, rows: usize, cols: usize) -> f64 {
        self.rank_rel_tol.unwrap_or(f64::EPSILON * rows.max(cols) as f64)
    }
}
