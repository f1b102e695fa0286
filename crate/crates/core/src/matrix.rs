use std::fmt;
use std::ops::Deref;

use nalgebra::{DMatrix, DVector};

use crate::error::{MaxminError, Result};

/// A real, finite, non-empty dense matrix.
///
/// Thin validated wrapper over [`nalgebra::DMatrix`]; it dereferences to the
/// underlying matrix so the full nalgebra API is available for reading.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<f64>);

impl DenseMatrix {
    pub fn new(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(MaxminError::InvalidMatrix(format!(
                "shape {}x{} has an empty dimension",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if let Some(pos) = inner.iter().position(|v| !v.is_finite()) {
            // column-major storage
            let (r, c) = (pos % inner.nrows(), pos / inner.nrows());
            return Err(MaxminError::InvalidMatrix(format!("non-finite entry at ({r}, {c})")));
        }
        Ok(Self(inner))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(MaxminError::DimensionMismatch {
                op: "from_row_major",
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Self::new(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != ncols) {
            return Err(MaxminError::DimensionMismatch {
                op: "from_rows",
                expected: format!("{ncols} columns"),
                found: format!("{} columns in row {bad}", rows[bad].as_ref().len()),
            });
        }
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_row_major(nrows, ncols, &flat)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(DMatrix::zeros(rows, cols))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// `self · x`, checking the length of `x`.
    pub fn apply(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.cols() {
            return Err(MaxminError::DimensionMismatch {
                op: "apply",
                expected: format!("vector of length {}", self.cols()),
                found: format!("length {}", x.len()),
            });
        }
        Ok(&self.0 * x)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(&self.0 * c)
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> DMatrix<f64> {
        self.0.select_columns(indices)
    }
}

impl Deref for DenseMatrix {
    type Target = DMatrix<f64>;

    fn deref(&self) -> &DMatrix<f64> {
        &self.0
    }
}

impl TryFrom<DMatrix<f64>> for DenseMatrix {
    type Error = MaxminError;

    fn try_from(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m)
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix{:?}", self.to_rows())
    }
}
