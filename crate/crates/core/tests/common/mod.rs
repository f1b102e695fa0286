#![allow(dead_code)]

use maxmin_core::DenseMatrix;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

pub fn integers(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i32) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| f64::from(rng.random_range(-bound..=bound)))
}

pub fn dense(m: DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::new(m).unwrap()
}

/// Gaussian `B` with at least as many rows as columns (injective almost surely)
/// and Gaussian `A`.
pub fn case1_instance(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> (DenseMatrix, DenseMatrix) {
    let n = rng.random_range(1..=max_n);
    let m_b = rng.random_range(n..=max_m);
    let m_a = rng.random_range(1..=max_m);
    (dense(gaussian(rng, m_a, n)), dense(gaussian(rng, m_b, n)))
}

/// Integer-valued `B = G H` of rank `r < n` and `A = R B`, so that
/// `ker(B) ⊆ ker(A)` holds exactly in floating point.
pub fn planted_kernel_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (DenseMatrix, DenseMatrix, usize) {
    loop {
        let n = rng.random_range(2..=max_n);
        let r = rng.random_range(1..n);
        let m_b = rng.random_range(r..=max_n + 2);
        let g = integers(rng, m_b, r, 3);
        let h = integers(rng, r, n, 3);
        let b = &g * &h;
        let m_a = rng.random_range(1..=max_n + 2);
        let a = integers(rng, m_a, m_b, 3) * &b;
        let rank_b = b.clone().svd(false, false).rank(1e-9 * b.norm().max(1.0));
        if rank_b == r && a.norm() > 0.0 {
            return (dense(a), dense(b), r);
        }
    }
}

/// Like [`planted_kernel_instance`] but with `A` nonzero on some kernel vector of `B`.
pub fn violated_kernel_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (DenseMatrix, DenseMatrix) {
    let (_, b, _) = planted_kernel_instance(rng, max_n);
    // diagonally dominant for n ≤ 6, hence injective
    let n = b.cols();
    let a = DMatrix::identity(n, n) + integers(rng, n, n, 3) * 0.05;
    (dense(a), b)
}

/// Angle between the lines spanned by `u` and `v`.
pub fn line_angle(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let c = (u.dot(v) / (u.norm() * v.norm())).abs().min(1.0);
    c.acos()
}

/// Largest principal angle between two column spans of equal dimension.
pub fn subspace_gap(u: &DMatrix<f64>, v: &DMatrix<f64>) -> f64 {
    assert_eq!(u.ncols(), v.ncols());
    let qu = u.clone().qr().q();
    let qv = v.clone().qr().q();
    // ||(I - Qu Quᵀ) Qv||₂ = sin of the largest principal angle
    let residual = &qv - &qu * (qu.transpose() * &qv);
    residual.singular_values().max().min(1.0).asin()
}

/// Scratch directory plus a handle on the built `maxmin` binary.
pub struct CliHarness {
    pub dir: tempfile::TempDir,
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliHarness {
    pub fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    pub fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    pub fn write_matrix<R: AsRef<[f64]>>(&self, name: &str, rows: &[R]) -> String {
        let m = DenseMatrix::from_rows(rows).unwrap();
        let path = self.path(name);
        maxmin_core::io::write_matrix_csv(&path, m.as_dmatrix()).unwrap();
        path
    }

    pub fn run(&self, args: &[&str]) -> CliRun {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_maxmin"))
            .args(args)
            .output()
            .unwrap();
        CliRun {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8(out.stdout).unwrap(),
            stderr: String::from_utf8(out.stderr).unwrap(),
        }
    }

    pub fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }
}

/// Value following `key: ` in CLI text output.
pub fn field<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}: ");
    stdout.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}
