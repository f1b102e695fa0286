//! `max ||Ax||₂ subject to ||Bx||₂ ≤ 1`.
//!
//! * [`existence_check`]: solvable iff `ker(B) ⊆ ker(A)`.
//! * [`solve_case1`]: `ker(B) = {0}`. Supporting vectors `y` of `A B⁺` that lie
//!   in `range(B)` map back to maximizers `x = B⁺ y`.
//! * [`solve`]: general entry point. A nontrivial kernel is quotiented out by
//!   keeping `rank(B)` independent columns of `B` (and the same columns of
//!   `A`); reduced solutions are padded with zeros at the dropped positions.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{MaxminError, Result};
use crate::linalg::{cols_indep_raw, null_space_raw, pseudoinverse_raw, rank_raw, spectral_norm};
use crate::matrix::DenseMatrix;
use crate::suppvec::supporting_vectors;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveCase {
    /// `ker(B) = {0}`, solved through `B⁺`.
    Case1,
    /// `ker(B) ≠ {0}`, solved on a column-selected reduction.
    Case2,
}

impl SolveCase {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveCase::Case1 => "Case1",
            SolveCase::Case2 => "Case2",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Supporting-vector candidates `y` examined by the range filter.
    pub y_candidates_total: usize,
    /// Candidates found in `range(B)`.
    pub y_candidates_accepted: usize,
    /// Candidates only passed after projection onto `range(B)`.
    pub used_projection_fallback: bool,
    /// The closed-form `m × 2` supporting-vector branch was taken.
    pub used_special_case: bool,
    /// `A` vanishes on the feasible set; the optimum is 0 and `0` is reported.
    pub degenerate: bool,
    pub kernel_dim_b: usize,
    pub rank_b: usize,
}

/// Optimal value and representative maximizers.
///
/// `solutions` holds one representative per eigenbasis column together with
/// its negation. The full maximizer set is the span of the representatives
/// intersected with `{||Bx|| = 1}`, plus `ker(B)` in Case 2.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxminSolution {
    pub optimal_value: f64,
    pub solutions: Vec<DVector<f64>>,
    pub case_used: SolveCase,
    pub selected_indices: Vec<usize>,
    /// `optimal_value²`, the underlying supporting-vector eigenvalue.
    pub lambda_max: f64,
    pub diagnostics: Diagnostics,
}

/// `A` and `B` bundled with the tolerances to solve them under.
#[derive(Debug, Clone)]
pub struct MaxminProblem {
    a: DenseMatrix,
    b: DenseMatrix,
    tol: ToleranceConfig,
}

impl MaxminProblem {
    pub fn new(a: DenseMatrix, b: DenseMatrix, tol: ToleranceConfig) -> Result<Self> {
        check_cols("MaxminProblem", &a, &b)?;
        tol.validate()?;
        Ok(Self { a, b, tol })
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    pub fn tolerances(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn is_solvable(&self) -> bool {
        existence_check(&self.a, &self.b, &self.tol).unwrap_or(false)
    }

    pub fn solve(&self) -> Result<MaxminSolution> {
        solve(&self.a, &self.b, &self.tol)
    }
}

fn check_cols(op: &'static str, a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.cols() != b.cols() {
        return Err(MaxminError::DimensionMismatch {
            op,
            expected: format!("B with {} columns", a.cols()),
            found: format!("{} columns", b.cols()),
        });
    }
    Ok(())
}

/// `true` iff `ker(B) ⊆ ker(A)`, i.e. the problem has a solution.
///
/// Every kernel basis vector `k` of `B` must satisfy
/// `||A k|| ≤ range_membership_tol · max(1, ||A||₂)`.
pub fn existence_check(a: &DenseMatrix, b: &DenseMatrix, tol: &ToleranceConfig) -> Result<bool> {
    check_cols("existence_check", a, b)?;
    let kernel = null_space_raw(b.as_dmatrix(), tol);
    if kernel.ncols() == 0 {
        return Ok(true);
    }
    let bound = tol.range_membership_tol * spectral_norm(a.as_dmatrix()).max(1.0);
    let image = a.as_dmatrix() * &kernel;
    Ok(image.column_iter().all(|c| c.norm() <= bound))
}

/// Case 1: `ker(B) = {0}`.
pub fn solve_case1(a: &DenseMatrix, b: &DenseMatrix, tol: &ToleranceConfig) -> Result<MaxminSolution> {
    check_cols("solve_case1", a, b)?;
    let n = b.cols();
    let rank_b = rank_raw(b.as_dmatrix(), tol);
    if rank_b < n {
        return Err(MaxminError::NontrivialKernel { kernel_dim: n - rank_b });
    }

    let b_pinv = pseudoinverse_raw(b.as_dmatrix(), tol);
    let m = DenseMatrix::new(a.as_dmatrix() * &b_pinv)?;
    let sv = supporting_vectors(std::slice::from_ref(&m), tol)?;

    let mut diagnostics = Diagnostics {
        y_candidates_total: sv.basis.ncols(),
        used_special_case: sv.used_special_case,
        kernel_dim_b: 0,
        rank_b,
        ..Diagnostics::default()
    };

    if sv.lambda_max == 0.0 {
        diagnostics.degenerate = true;
        return Ok(MaxminSolution {
            optimal_value: 0.0,
            solutions: vec![DVector::zeros(n)],
            case_used: SolveCase::Case1,
            selected_indices: Vec::new(),
            lambda_max: 0.0,
            diagnostics,
        });
    }

    let projector = b.as_dmatrix() * &b_pinv;
    let residual = |y: &DVector<f64>| (y - &projector * y).norm() / y.norm();
    let candidates = sv.basis_columns();
    let mut accepted: Vec<DVector<f64>> = candidates
        .iter()
        .filter(|y| residual(y) <= tol.range_membership_tol)
        .cloned()
        .collect();

    if accepted.is_empty() {
        // Multiplicity can mix directions outside range(B) into a computed
        // eigenspace; the projection of a maximizer is still a maximizer.
        accepted = candidates
            .iter()
            .filter_map(|y| {
                let py = &projector * y;
                let norm = py.norm();
                (norm > 0.0).then(|| py / norm)
            })
            .filter(|y| residual(y) <= tol.range_membership_tol)
            .collect();
        diagnostics.used_projection_fallback = true;
    }
    if accepted.is_empty() {
        let min_residual = candidates.iter().map(residual).fold(f64::INFINITY, f64::min);
        return Err(MaxminError::RangeFilter {
            candidates: candidates.len(),
            min_residual,
            tolerance: tol.range_membership_tol,
        });
    }
    diagnostics.y_candidates_accepted = accepted.len();

    let solutions = accepted
        .iter()
        .flat_map(|y| {
            let x = &b_pinv * y;
            let neg = -&x;
            [x, neg]
        })
        .collect();

    Ok(MaxminSolution {
        optimal_value: sv.lambda_max.sqrt(),
        solutions,
        case_used: SolveCase::Case1,
        selected_indices: Vec::new(),
        lambda_max: sv.lambda_max,
        diagnostics,
    })
}

/// Solves `max ||Ax|| s.t. ||Bx|| ≤ 1` whenever it is solvable.
pub fn solve(a: &DenseMatrix, b: &DenseMatrix, tol: &ToleranceConfig) -> Result<MaxminSolution> {
    tol.validate()?;
    if !existence_check(a, b, tol)? {
        return Err(MaxminError::NoSolution);
    }
    let n = b.cols();
    let selection = cols_indep_raw(b.as_dmatrix(), tol);
    let rank_b = selection.indices.len();
    if rank_b == n {
        return solve_case1(a, b, tol);
    }

    let mut diagnostics = Diagnostics {
        kernel_dim_b: n - rank_b,
        rank_b,
        ..Diagnostics::default()
    };
    if rank_b == 0 {
        // B = 0, so A = 0 as well: every point is feasible and optimal.
        diagnostics.degenerate = true;
        return Ok(MaxminSolution {
            optimal_value: 0.0,
            solutions: vec![DVector::zeros(n)],
            case_used: SolveCase::Case2,
            selected_indices: Vec::new(),
            lambda_max: 0.0,
            diagnostics,
        });
    }

    // Whole columns of A; `A(indices)` in MATLAB would linearly index entries.
    let a_reduced = DenseMatrix::new(a.select_columns(&selection.indices))?;
    let b_reduced = DenseMatrix::new(selection.selected)?;
    let reduced = solve_case1(&a_reduced, &b_reduced, tol)?;

    let solutions = reduced
        .solutions
        .iter()
        .map(|y| embed(y, &selection.indices, n))
        .collect();
    diagnostics = Diagnostics {
        kernel_dim_b: n - rank_b,
        rank_b,
        ..reduced.diagnostics
    };
    Ok(MaxminSolution {
        optimal_value: reduced.optimal_value,
        solutions,
        case_used: SolveCase::Case2,
        selected_indices: selection.indices,
        lambda_max: reduced.lambda_max,
        diagnostics,
    })
}

/// Places `y`'s entries at `indices` of a length-`n` zero vector.
fn embed(y: &DVector<f64>, indices: &[usize], n: usize) -> DVector<f64> {
    let mut x = DVector::zeros(n);
    for (&i, &v) in indices.iter().zip(y.iter()) {
        x[i] = v;
    }
    x
}

/// Vertical concatenation, so that `||D x||² = Σᵢ ||Bᵢ x||²`.
pub fn stack_operators(blocks: &[DenseMatrix]) -> Result<DenseMatrix> {
    let first = blocks.first().ok_or(MaxminError::EmptyList("stack_operators"))?;
    let n = first.cols();
    if let Some(bad) = blocks.iter().find(|b| b.cols() != n) {
        return Err(MaxminError::DimensionMismatch {
            op: "stack_operators",
            expected: format!("{n} columns"),
            found: format!("{} columns", bad.cols()),
        });
    }
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut d = DMatrix::zeros(rows, n);
    let mut offset = 0;
    for b in blocks {
        d.view_mut((offset, 0), (b.rows(), n)).copy_from(b.as_dmatrix());
        offset += b.rows();
    }
    DenseMatrix::new(d)
}

/// `||Ax|| / ||Bx||`.
pub fn ratio_value(a: &DenseMatrix, b: &DenseMatrix, x: &DVector<f64>) -> Result<f64> {
    let bx = b.apply(x)?.norm();
    let ax = a.apply(x)?.norm();
    if bx == 0.0 {
        return Err(MaxminError::ZeroDenominator);
    }
    Ok(ax / bx)
}
