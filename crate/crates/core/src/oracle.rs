//! Independent checks for the solver.
//!
//! Nothing here touches [`crate::solver`] or [`crate::suppvec`]: the
//! generalized-eigenvalue oracle goes through a QR factor of `B` instead of a
//! pseudoinverse and eigendecomposition, and the sampling oracle only
//! evaluates the ratio `||Ax|| / ||Bx||`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{MaxminError, Result};
use crate::matrix::DenseMatrix;

pub const DEFAULT_SEED: u64 = 0x5EED_2021;

/// `√λ_max` of the pencil `AᵀA x = λ BᵀB x`.
///
/// `B = QR` gives `RᵀR = BᵀB`, so the pencil reduces to the ordinary problem
/// for `W = A R⁻¹`; the answer is the square root of the largest eigenvalue
/// of `WᵀW`, found with [`jacobi_eigenvalues`].
pub fn oracle_generalized_eig(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    let n = b.cols();
    if a.cols() != n {
        return Err(MaxminError::DimensionMismatch {
            op: "oracle_generalized_eig",
            expected: format!("A with {n} columns"),
            found: format!("{} columns", a.cols()),
        });
    }
    if b.rows() < n {
        return Err(MaxminError::Singular(format!(
            "B is {}x{n}, so BᵀB has rank below {n}",
            b.rows()
        )));
    }
    let r = b.as_dmatrix().clone().qr().r();
    let diag_max = r.diagonal().amax();
    if r.diagonal().iter().any(|d| d.abs() <= 1e-12 * diag_max) || diag_max == 0.0 {
        return Err(MaxminError::Singular("R factor has a vanishing pivot".into()));
    }
    // Wᵀ = R⁻ᵀ Aᵀ
    let w_t = r
        .transpose()
        .solve_lower_triangular(&a.transpose())
        .ok_or_else(|| MaxminError::Singular("triangular solve failed".into()))?;
    let gram = &w_t * w_t.transpose();
    let top = jacobi_eigenvalues(&gram).into_iter().fold(0.0, f64::max);
    Ok(top.max(0.0).sqrt())
}

/// Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi rotations,
/// in descending order.
pub fn jacobi_eigenvalues(sym: &DMatrix<f64>) -> Vec<f64> {
    let n = sym.nrows();
    assert_eq!(n, sym.ncols(), "square matrix required");
    let mut a = (sym + sym.transpose()) * 0.5;
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off <= (f64::EPSILON * a.norm()).powi(2) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = a.diagonal().iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingResult {
    /// Best `||Ax||` found with `||Bx|| = 1`; a lower bound on the optimum.
    pub value_lower_bound: f64,
    /// The corresponding point, scaled so `||Bx|| = 1`. Empty if nothing feasible was drawn.
    pub best_x: DVector<f64>,
    pub seed: u64,
}

/// [`oracle_sphere_sampling_seeded`] with [`DEFAULT_SEED`].
pub fn oracle_sphere_sampling(a: &DenseMatrix, b: &DenseMatrix, samples: usize, refine_steps: usize) -> SamplingResult {
    oracle_sphere_sampling_seeded(a, b, samples, refine_steps, DEFAULT_SEED)
}

/// Random search for `max ||Ax|| / ||Bx||` followed by coordinate-wise hill
/// climbing from the best sample.
///
/// Each refinement step sweeps every coordinate in both directions with the
/// current step length, halving it after a sweep without improvement.
pub fn oracle_sphere_sampling_seeded(
    a: &DenseMatrix,
    b: &DenseMatrix,
    samples: usize,
    refine_steps: usize,
    seed: u64,
) -> SamplingResult {
    let n = a.cols();
    let a = a.as_dmatrix();
    let b = b.as_dmatrix();
    let b_scale = b.norm().max(1.0);
    let ratio = |x: &DVector<f64>| -> Option<f64> {
        let bx = (b * x).norm();
        (bx > 1e-12 * b_scale * x.norm()).then(|| (a * x).norm() / bx)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, DVector<f64>)> = None;
    for _ in 0..samples {
        let x = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
        if let Some(r) = ratio(&x) {
            if best.as_ref().is_none_or(|(v, _)| r > *v) {
                best = Some((r, x));
            }
        }
    }

    let Some((mut value, mut x)) = best else {
        return SamplingResult {
            value_lower_bound: 0.0,
            best_x: DVector::zeros(0),
            seed,
        };
    };

    let mut step = 0.1 * x.norm();
    for _ in 0..refine_steps {
        let mut improved = false;
        for i in 0..n {
            for dir in [1.0, -1.0] {
                let mut trial = x.clone();
                trial[i] += dir * step;
                if let Some(r) = ratio(&trial) {
                    if r > value {
                        value = r;
                        x = trial;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let bx = (b * &x).norm();
    SamplingResult {
        value_lower_bound: value,
        best_x: x / bx,
        seed,
    }
}

/// Brute-force `max ||Ax||` over `||Bx|| = 1` for two-column problems by
/// walking the unit circle in `steps` equal angles.
pub fn oracle_circle_scan(a: &DMatrix<f64>, b: &DMatrix<f64>, steps: usize) -> (f64, DVector<f64>) {
    assert_eq!(a.ncols(), 2, "circle scan needs two columns");
    let mut best = (0.0, DVector::zeros(2));
    for k in 0..steps {
        let t = std::f64::consts::PI * k as f64 / steps as f64;
        let x = DVector::from_vec(vec![t.cos(), t.sin()]);
        let bx = (b * &x).norm();
        if bx == 0.0 {
            continue;
        }
        let r = (a * &x).norm() / bx;
        if r > best.0 {
            best = (r, x / bx);
        }
    }
    best
}
