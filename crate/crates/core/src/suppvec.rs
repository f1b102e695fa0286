//! Generalized supporting vectors: the unit maximizers of `Σᵢ ||Aᵢ x||²`.
//!
//! The maximum is the largest eigenvalue of `Σᵢ AᵢᵀAᵢ` and the maximizers are
//! the unit vectors of the matching eigenspace.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{MaxminError, Result};
use crate::linalg::sym_eig_max_raw;
use crate::matrix::DenseMatrix;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuppVecResult {
    /// `max Σᵢ ||Aᵢ x||²` over the unit sphere.
    pub lambda_max: f64,
    /// Orthonormal columns spanning the eigenspace at `lambda_max`.
    #[serde(serialize_with = "crate::io::serialize_columns")]
    pub basis: DMatrix<f64>,
    pub used_special_case: bool,
}

impl SuppVecResult {
    pub fn basis_columns(&self) -> Vec<DVector<f64>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }
}

/// Supporting vectors of a finite family of matrices sharing a column count.
///
/// A single `m × 2` matrix whose columns `a₁, a₂` have equal norms takes a
/// closed form: `λ_max = ||a₁||² + |a₁ᵀa₂|`, attained on `{e₁, e₂}` when the
/// columns are orthogonal and on `(1, ±1)/√2` otherwise.
pub fn supporting_vectors(matrices: &[DenseMatrix], tol: &ToleranceConfig) -> Result<SuppVecResult> {
    let first = matrices.first().ok_or(MaxminError::EmptyList("supporting_vectors"))?;
    let n = first.cols();
    if let Some(bad) = matrices.iter().find(|m| m.cols() != n) {
        return Err(MaxminError::DimensionMismatch {
            op: "supporting_vectors",
            expected: format!("{n} columns"),
            found: format!("{} columns", bad.cols()),
        });
    }

    if let [single] = matrices {
        if let Some(res) = equal_norm_pair(single, tol) {
            return Ok(res);
        }
    }

    let mut gram = DMatrix::<f64>::zeros(n, n);
    for m in matrices {
        gram += m.tr_mul(m.as_dmatrix());
    }
    let (lambda, basis) = sym_eig_max_raw(&gram, tol)?;
    Ok(SuppVecResult {
        lambda_max: lambda.max(0.0),
        basis,
        used_special_case: false,
    })
}

fn equal_norm_pair(m: &DenseMatrix, tol: &ToleranceConfig) -> Option<SuppVecResult> {
    if m.cols() != 2 {
        return None;
    }
    let a1 = m.column(0);
    let a2 = m.column(1);
    let norm1 = a1.norm();
    if (norm1 - a2.norm()).abs() >= tol.eig_multiplicity_tol {
        return None;
    }
    let inner = a1.dot(&a2);
    let lambda_max = a1.norm_squared() + inner.abs();
    // The two eigenvalues are ||a₁||² ± a₁ᵀa₂; orthogonality means they are
    // indistinguishable under the multiplicity tolerance. A `floor(a1'*a2)==0`
    // test would also accept any product in [0, 1).
    let basis = if 2.0 * inner.abs() <= tol.eig_multiplicity_tol * lambda_max.max(1.0) {
        DMatrix::identity(2, 2)
    } else if inner > 0.0 {
        DMatrix::from_column_slice(2, 1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2])
    } else {
        DMatrix::from_column_slice(2, 1, &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2])
    };
    Some(SuppVecResult {
        lambda_max,
        basis,
        used_special_case: true,
    })
}
