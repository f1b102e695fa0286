//! Exact solutions of the reformulated maxmin problem
//!
//! ```text
//! max ||A x||_2   subject to   ||B x||_2 <= 1
//! ```
//!
//! for real matrices `A` and `B` sharing a column count.
//!
//! How it works (high level):
//! - A solution exists iff `ker(B) ⊆ ker(A)` ([`solver::existence_check`]).
//! - When `ker(B) = {0}` the problem is pulled back through the Moore-Penrose
//!   inverse: `y ↦ A B⁺ y` over the unit ball, whose maximizers are the
//!   supporting vectors of `A B⁺` ([`suppvec`]). Candidates are filtered to
//!   `range(B)` and mapped back with `x = B⁺ y`.
//! - Otherwise the problem is reduced to `ℝⁿ / ker(B)` by keeping a maximal set
//!   of independent columns of `B` (and the same columns of `A`), solved in the
//!   reduced space and re-embedded with zeros.
//!
//! Two application pipelines sit on top ([`apps`]): a quadratic-energy
//! maxmin lifted through a Cholesky factor and a multivariate geolocation
//! score. [`oracle`] holds independent checks used by the test suites, and
//! [`cli`] is the `maxmin` command-line front end.

pub mod apps;
pub mod cli;
mod error;
pub mod io;
pub mod linalg;
mod matrix;
pub mod oracle;
pub mod solver;
pub mod suppvec;
mod tolerance;

pub use error::{MaxminError, Result};
pub use matrix::DenseMatrix;
pub use tolerance::ToleranceConfig;

pub use apps::{
    solve_geolocation, solve_quadratic_energy, standardize_columns, GeoDataset, GeoScoreReport, SiteScore, Standardized,
};
pub use linalg::{cholesky, cols_indep, null_space, pseudoinverse, rank_of, sym_eig_max};
pub use solver::{
    existence_check, ratio_value, solve, solve_case1, stack_operators, Diagnostics, MaxminProblem, MaxminSolution,
    SolveCase,
};
pub use suppvec::{supporting_vectors, SuppVecResult};
