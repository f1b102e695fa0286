//! Application pipelines built on the solver.

mod energy;
mod geoloc;

pub use energy::solve_quadratic_energy;
pub use geoloc::{
    solve_geolocation, standardize_columns, GeoDataset, GeoScoreReport, SiteScore, Standardized, STD_CONVENTION,
};
