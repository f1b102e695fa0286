//! Decomposition primitives shared by the solver, the applications and the
//! oracles.
//!
//! Symmetric eigendecompositions come from nalgebra. The SVD (one-sided
//! Jacobi), rank decisions, truncation, sign conventions, the Cholesky factor
//! and the pivoted column selection are implemented here.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{MaxminError, Result};
use crate::matrix::DenseMatrix;
use crate::tolerance::ToleranceConfig;

/// Relative asymmetry accepted (and symmetrized away) before an
/// eigendecomposition or Cholesky factorization.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Largest singular value, `||M||_2`.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    svd(m).singular[0]
}

/// Thin singular value decomposition `M = U diag(σ) Vᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    /// `rows × cols`; columns belonging to zero singular values are zero.
    pub u: DMatrix<f64>,
    /// Descending, one per column of `M`.
    pub singular: DVector<f64>,
    /// Full `cols × cols` orthogonal factor.
    pub v: DMatrix<f64>,
}

const JACOBI_MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD.
///
/// Column pairs of `M V` are rotated until mutually orthogonal, so `V` is
/// always a full orthogonal matrix, including for wide inputs where the
/// trailing columns of `M V` collapse to zero. Singular values come out with
/// high relative accuracy.
pub fn svd(m: &DMatrix<f64>) -> SvdFactors {
    let (rows, n) = m.shape();
    let mut w = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut w, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.column_iter().map(|c| c.norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let mut u = DMatrix::zeros(rows, n);
    let mut v_sorted = DMatrix::zeros(n, n);
    let mut singular = DVector::zeros(n);
    for (k, &j) in order.iter().enumerate() {
        singular[k] = norms[j];
        if norms[j] > 0.0 {
            u.set_column(k, &(w.column(j) / norms[j]));
        }
        v_sorted.set_column(k, &v.column(j));
    }
    SvdFactors {
        u,
        singular,
        v: v_sorted,
    }
}

fn rotate_columns(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..m.nrows() {
        let a = m[(i, p)];
        let b = m[(i, q)];
        m[(i, p)] = c * a - s * b;
        m[(i, q)] = s * a + c * b;
    }
}

/// Flips `v` so its largest-magnitude component (first one on ties) is positive.
pub fn sign_normalize(v: &mut DVector<f64>) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        v.neg_mut();
    }
}

fn symmetrized(m: &DMatrix<f64>, op: &'static str) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(MaxminError::DimensionMismatch {
            op,
            expected: "square matrix".into(),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    let scale = m.amax().max(1.0);
    let asymmetry = (m - m.transpose()).amax();
    if asymmetry > SYMMETRY_TOL * scale {
        return Err(MaxminError::NotSymmetric { asymmetry });
    }
    Ok((m + m.transpose()) * 0.5)
}

/// Largest eigenvalue of a symmetric matrix and an orthonormal basis of its
/// eigenspace.
///
/// Eigenvalues within `eig_multiplicity_tol * max(1, |λ_max|)` of the maximum
/// belong to the eigenspace. Basis columns keep the order in which the
/// eigendecomposition produced them and are sign-normalized with
/// [`sign_normalize`].
pub fn sym_eig_max(m: &DenseMatrix, tol: &ToleranceConfig) -> Result<(f64, DMatrix<f64>)> {
    sym_eig_max_raw(m.as_dmatrix(), tol)
}

pub(crate) fn sym_eig_max_raw(m: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<(f64, DMatrix<f64>)> {
    let sym = symmetrized(m, "sym_eig_max")?;
    let eig = SymmetricEigen::new(sym);
    let lambda_max = eig.eigenvalues.max();
    let cutoff = tol.eig_multiplicity_tol * lambda_max.abs().max(1.0);
    let columns: Vec<DVector<f64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lam)| (lam - lambda_max).abs() <= cutoff)
        .map(|(i, _)| {
            let mut v = eig.eigenvectors.column(i).into_owned();
            sign_normalize(&mut v);
            v
        })
        .collect();
    Ok((lambda_max, DMatrix::from_columns(&columns)))
}

fn rank_cutoff(m: &DMatrix<f64>, singular: &DVector<f64>, tol: &ToleranceConfig) -> f64 {
    let sigma_max = singular.iter().copied().fold(0.0, f64::max);
    tol.rank_tol_for(m.nrows(), m.ncols()) * sigma_max
}

/// Moore-Penrose inverse via a truncated SVD.
pub fn pseudoinverse(b: &DenseMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    DenseMatrix::new(pseudoinverse_raw(b.as_dmatrix(), tol))
}

pub(crate) fn pseudoinverse_raw(b: &DMatrix<f64>, tol: &ToleranceConfig) -> DMatrix<f64> {
    let f = svd(b);
    let cutoff = rank_cutoff(b, &f.singular, tol);
    let mut pinv = DMatrix::zeros(b.ncols(), b.nrows());
    for (i, &s) in f.singular.iter().enumerate() {
        if s > cutoff {
            pinv += (f.v.column(i) * f.u.column(i).transpose()) / s;
        }
    }
    pinv
}

/// Numerical rank: singular values above `rank_rel_tol * σ_max`.
pub fn rank_of(m: &DenseMatrix, tol: &ToleranceConfig) -> usize {
    rank_raw(m.as_dmatrix(), tol)
}

pub(crate) fn rank_raw(m: &DMatrix<f64>, tol: &ToleranceConfig) -> usize {
    if m.is_empty() {
        return 0;
    }
    let singular = svd(m).singular;
    let cutoff = rank_cutoff(m, &singular, tol);
    singular.iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis of `ker(B)` as columns; `cols × 0` when the kernel is
/// trivial.
pub fn null_space(b: &DenseMatrix, tol: &ToleranceConfig) -> DMatrix<f64> {
    null_space_raw(b.as_dmatrix(), tol)
}

pub(crate) fn null_space_raw(b: &DMatrix<f64>, tol: &ToleranceConfig) -> DMatrix<f64> {
    let n = b.ncols();
    let f = svd(b);
    let cutoff = rank_cutoff(b, &f.singular, tol);
    let columns: Vec<DVector<f64>> = f
        .singular
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| {
            let mut v = f.v.column(i).into_owned();
            sign_normalize(&mut v);
            v
        })
        .collect();
    if columns.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&columns)
    }
}

/// Upper-triangular `C` with positive diagonal and `CᵀC = L`.
pub fn cholesky(l: &DenseMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    let a = symmetrized(l.as_dmatrix(), "cholesky")?;
    let n = a.nrows();
    let floor = tol.spd_tol * a.norm();
    let mut c = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= c[(k, j)] * c[(k, j)];
        }
        if d.is_nan() || d <= floor {
            return Err(MaxminError::NotPositiveDefinite { pivot: j, value: d });
        }
        let cjj = d.sqrt();
        c[(j, j)] = cjj;
        for i in (j + 1)..n {
            let mut s = a[(j, i)];
            for k in 0..j {
                s -= c[(k, j)] * c[(k, i)];
            }
            c[(j, i)] = s / cjj;
        }
    }
    DenseMatrix::new(c)
}

/// A maximal linearly independent set of columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSelection {
    /// The chosen columns, in ascending index order (`rows × rank`).
    pub selected: DMatrix<f64>,
    /// Ascending column indices.
    pub indices: Vec<usize>,
}

/// Picks `rank(D)` independent columns with a Householder QR with column
/// pivoting, then sorts the pivot indices.
pub fn cols_indep(d: &DenseMatrix, tol: &ToleranceConfig) -> ColumnSelection {
    cols_indep_raw(d.as_dmatrix(), tol)
}

pub(crate) fn cols_indep_raw(d: &DMatrix<f64>, tol: &ToleranceConfig) -> ColumnSelection {
    let rank = rank_raw(d, tol);
    let mut pivots = pivoted_qr_order(d, rank);
    pivots.sort_unstable();
    ColumnSelection {
        selected: d.select_columns(&pivots),
        indices: pivots,
    }
}

/// First `count` pivot columns of a Householder QR with column pivoting.
fn pivoted_qr_order(d: &DMatrix<f64>, count: usize) -> Vec<usize> {
    let (m, n) = d.shape();
    let mut w = d.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..count.min(m).min(n) {
        // Recomputed each step; matrices here are small and downdating loses accuracy.
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let norm = w.view((k, j), (m - k, 1)).norm();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        w.swap_columns(k, best);
        perm.swap(k, best);

        let x = w.view((k, k), (m - k, 1)).into_owned();
        let alpha = if x[0] >= 0.0 { -x.norm() } else { x.norm() };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.norm();
        if vnorm == 0.0 {
            continue;
        }
        v /= vnorm;
        let mut block = w.view_mut((k, k), (m - k, n - k));
        let proj = v.transpose() * &block;
        block -= (&v * proj) * 2.0;
    }
    perm.truncate(count);
    perm
}
