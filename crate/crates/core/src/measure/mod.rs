//! Compactly supported measures: shapes, cube grids, median intervals and the
//! refining solver.

pub mod directions;
pub mod grid;
pub mod median;
pub mod shape;
pub mod solver;

pub use grid::{discretize, GridMeasure};
pub use median::median_offset_interval;
pub use shape::{rasterize, Component, ShapeSpec, DEFAULT_SUPERSAMPLE};
pub use solver::{
    cell_size_for, plane_change, solve_measure_cut, ConvergenceTrace, LevelMeasure, LevelTrace,
    MeasureConfig, MeasureInput, MeasureSolution, Strategy,
};
