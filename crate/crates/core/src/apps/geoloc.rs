//! Multivariate site scoring.
//!
//! Each site carries three climate variables measured in two seasons. With
//! both seasons standardized into `A` (winter) and `B` (summer), the weights
//! solve
//!
//! ```text
//! max ||A x||  subject to  ||B x||² + ||x||² ≤ 1
//! ```
//!
//! Sites are then placed at `(aᵢ·x, bᵢ·x)` and scored by their signed
//! coordinate along `(1, −1)/√2`: high winter projection and low summer
//! projection score best.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{MaxminError, Result};
use crate::io::read_geo_dataset;
use crate::matrix::DenseMatrix;
use crate::solver::{solve_case1, stack_operators};
use crate::tolerance::ToleranceConfig;

/// Standard deviations use the `n − 1` divisor.
pub const STD_CONVENTION: &str = "sample";

const TABLE1_CSV: &str = include_str!("../../data/table1.csv");

/// Site names with winter and summer `(temperature, radiation, evapotranspiration)` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoDataset {
    site_names: Vec<String>,
    winter: DenseMatrix,
    summer: DenseMatrix,
}

impl GeoDataset {
    pub fn new(site_names: Vec<String>, winter: DenseMatrix, summer: DenseMatrix) -> Result<Self> {
        let n = site_names.len();
        for (label, m) in [("winter", &winter), ("summer", &summer)] {
            if m.rows() != n || m.cols() != 3 {
                return Err(MaxminError::DimensionMismatch {
                    op: "GeoDataset::new",
                    expected: format!("{label} matrix of shape {n}x3"),
                    found: format!("{}x{}", m.rows(), m.cols()),
                });
            }
        }
        Ok(Self {
            site_names,
            winter,
            summer,
        })
    }

    /// Five-year January/July means for sixteen Andalusian sites
    /// (high temperature °C, radiation MJ/m², evapotranspiration mm/day).
    pub fn table1() -> Self {
        read_geo_dataset(TABLE1_CSV.as_bytes()).expect("packaged fixture is valid")
    }

    pub fn site_names(&self) -> &[String] {
        &self.site_names
    }

    pub fn winter(&self) -> &DenseMatrix {
        &self.winter
    }

    pub fn summer(&self) -> &DenseMatrix {
        &self.summer
    }

    pub fn len(&self) -> usize {
        self.site_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.site_names.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub z: DenseMatrix,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

/// Centers each column and scales it to unit sample standard deviation.
pub fn standardize_columns(m: &DenseMatrix) -> Result<Standardized> {
    let rows = m.rows();
    if rows < 2 {
        return Err(MaxminError::DimensionMismatch {
            op: "standardize_columns",
            expected: "at least 2 rows".into(),
            found: format!("{rows} rows"),
        });
    }
    let mut z = DMatrix::zeros(rows, m.cols());
    let mut means = Vec::with_capacity(m.cols());
    let mut stds = Vec::with_capacity(m.cols());
    for (j, col) in m.column_iter().enumerate() {
        let mean = col.sum() / rows as f64;
        let centered = col.add_scalar(-mean);
        let std = (centered.norm_squared() / (rows - 1) as f64).sqrt();
        if std <= 4.0 * f64::EPSILON * col.amax() {
            return Err(MaxminError::DegenerateColumn { column: j });
        }
        z.set_column(j, &(centered / std));
        means.push(mean);
        stds.push(std);
    }
    Ok(Standardized {
        z: DenseMatrix::new(z)?,
        means,
        stds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiteScore {
    pub name: String,
    /// Winter projection `aᵢ·x`.
    pub ax: f64,
    /// Summer projection `bᵢ·x`.
    pub bx: f64,
    /// `(ax − bx)/√2`.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeoScoreReport {
    pub weights: Vec<f64>,
    pub optimal_value: f64,
    /// In input order.
    pub sites: Vec<SiteScore>,
    /// Site names by descending score; ties keep input order.
    pub ranking: Vec<String>,
    pub std_convention: &'static str,
}

pub fn solve_geolocation(data: &GeoDataset, tol: &ToleranceConfig) -> Result<GeoScoreReport> {
    let a = standardize_columns(&data.winter)?.z;
    let b = standardize_columns(&data.summer)?.z;
    let d = stack_operators(&[b.clone(), DenseMatrix::identity(a.cols())?])?;
    let solution = solve_case1(&a, &d, tol)?;
    let mut x = solution.solutions[0].clone();

    // Standardized columns make mean(Ax) vanish identically, so orient x by
    // the winter aggregate instead: Ax must correlate non-negatively with the
    // row sums of A.
    let ax = a.as_dmatrix() * &x;
    let aggregate = DVector::from_iterator(a.rows(), a.row_iter().map(|r| r.sum()));
    if ax.dot(&aggregate) < 0.0 {
        x.neg_mut();
    }
    let ax = a.as_dmatrix() * &x;
    let bx = b.as_dmatrix() * &x;

    let sites: Vec<SiteScore> = data
        .site_names
        .iter()
        .enumerate()
        .map(|(i, name)| SiteScore {
            name: name.clone(),
            ax: ax[i],
            bx: bx[i],
            score: (ax[i] - bx[i]) * FRAC_1_SQRT_2,
        })
        .collect();
    let mut order: Vec<usize> = (0..sites.len()).collect();
    order.sort_by(|&i, &j| sites[j].score.total_cmp(&sites[i].score));
    let ranking = order.iter().map(|&i| sites[i].name.clone()).collect();

    Ok(GeoScoreReport {
        weights: x.iter().copied().collect(),
        optimal_value: solution.optimal_value,
        sites,
        ranking,
        std_convention: STD_CONVENTION,
    })
}
