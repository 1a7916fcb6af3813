//! Elastic functional data analysis on `[0, 1]`.
//!
//! Functions are piecewise-linear on arbitrary grids. Their square-root
//! slope functions (SRSFs) are step functions, warps act on them exactly,
//! and the elastic distance is found by a dynamic program over lattice
//! warps whose segment costs are integrated in closed form.
//!
//! ```
//! use elastic_core::{elastic_distance, srsf_of, DpConfig, Grid, SampledFunction};
//!
//! let grid = Grid::uniform(33).unwrap();
//! let f = SampledFunction::from_fn(grid.clone(), |t| (3.0 * t).sin()).unwrap();
//! let g = SampledFunction::from_fn(grid, |t| (3.0 * t * t).sin()).unwrap();
//! let r = elastic_distance(&srsf_of(&f), &srsf_of(&g), &DpConfig::new(32)).unwrap();
//! assert!(r.distance < srsf_of(&f).q().l2_distance(srsf_of(&g).q()).unwrap());
//! ```

pub mod align;
pub mod error;
pub mod fixtures;
pub mod fnspace;
pub mod measurelab;
pub mod metric;
pub mod srsf;
pub mod warp;

pub use align::{
    constant_convention, elastic_distance, elastic_distance_total, fisher_rao_distance,
    geodesic_path, scalar_invariance_check, shape_distance, AlignmentResult, DpConfig, LatticePath,
    DEFAULT_SLOPES,
};
pub use error::{Error, Result};
pub use fnspace::{
    bounded_variation, cumulative_integral, cumulative_integral_from, derivative, integrate_cells,
    l2_norm, neumaier_sum, resample, CellFunction, Grid, SampledFunction,
};
pub use metric::{
    fisher_rao_inner, isometry_check, srsf_pushforward, IsometryReport, TangentVector,
};
pub use srsf::{
    constant_speed, length, normalize, reconstruct, srsf_of, standard_form, ConstantSpeed, Srsf,
    StandardFormPair,
};
pub use warp::{
    action, action_algebra_check, compose, compose_function, identity_warp, invert,
    warped_derivative, AlgebraReport, Warp,
};
