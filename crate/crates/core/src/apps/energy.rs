use crate::error::{MaxminError, Result};
use crate::linalg::cholesky;
use crate::matrix::DenseMatrix;
use crate::solver::{solve_case1, stack_operators, MaxminSolution};
use crate::tolerance::ToleranceConfig;

/// Maximizes `||E1 ψ||` subject to `||E2 ψ||² + ψᵀ L ψ ≤ 1`.
///
/// With `L = CᵀC` the constraint is `||D ψ|| ≤ 1` for `D = [E2; C]`, and `D`
/// is injective because `C` is invertible.
pub fn solve_quadratic_energy(
    e1: &DenseMatrix,
    e2: &DenseMatrix,
    l: &DenseMatrix,
    tol: &ToleranceConfig,
) -> Result<MaxminSolution> {
    let n = e1.cols();
    if e2.cols() != n || l.rows() != n || l.cols() != n {
        return Err(MaxminError::DimensionMismatch {
            op: "solve_quadratic_energy",
            expected: format!("E2 with {n} columns and L of shape {n}x{n}"),
            found: format!("E2 with {} columns, L {}x{}", e2.cols(), l.rows(), l.cols()),
        });
    }
    tol.validate()?;
    let c = cholesky(l, tol)?;
    let d = stack_operators(&[e2.clone(), c])?;
    solve_case1(e1, &d, tol)
}
