//! Touching ham-sandwich cuts.
//!
//! Given `n` measures in `ℝⁿ`, find one hyperplane that leaves at most half of
//! every measure's mass in each open half-space and also meets every measure:
//! it carries an atom of each (atomic measures) or passes through each support
//! (compactly supported measures, approximated on refining cube grids).

pub mod bisection;
pub mod discrete;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod oracle;
pub mod parallel;
pub mod scalar;

pub use bisection::{
    bisects, evaluate_cut, side_masses, touches, Atom, AtomicMeasure, CutReport, MeasureCut,
    SideMasses,
};
pub use discrete::{
    enumerate_all_cuts, perturb_masses, solve_touching_cut, Instance, Solution, SolverConfig,
};
pub use error::{Error, Result};
pub use geometry::{
    canonicalize, distance_point_hyperplane, hyperplane_through, side_of, Hyperplane, Point, Side,
    Span,
};
pub use measure::{
    discretize, median_offset_interval, rasterize, solve_measure_cut, ConvergenceTrace,
    GridMeasure, MeasureConfig, MeasureInput, MeasureSolution, ShapeSpec, Strategy,
};
pub use oracle::{gen_saltpepper, verify, verify_grids, VerifyReport};
pub use parallel::Parallelism;
pub use scalar::{Rational, Scalar};
