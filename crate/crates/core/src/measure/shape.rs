//! Constructive shapes with piecewise-constant density, and their rasterization.

use crate::error::{Error, Result};
use crate::measure::grid::GridMeasure;

#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    /// Euclidean ball (a disk in the plane).
    Ball {
        center: Vec<f64>,
        radius: f64,
        density: f64,
    },
    /// Axis-aligned box between two corners.
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
        density: f64,
    },
}

impl Component {
    pub fn dim(&self) -> usize {
        match self {
            Component::Ball { center, .. } => center.len(),
            Component::Box { min, .. } => min.len(),
        }
    }

    pub fn density(&self) -> f64 {
        match self {
            Component::Ball { density, .. } | Component::Box { density, .. } => *density,
        }
    }

    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Component::Ball { center, radius, .. } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            Component::Box { min, max, .. } => (min.clone(), max.clone()),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Component::Ball { center, radius, .. } => {
                center
                    .iter()
                    .zip(x)
                    .map(|(c, v)| (v - c) * (v - c))
                    .sum::<f64>()
                    <= radius * radius
            }
            Component::Box { min, max, .. } => x
                .iter()
                .zip(min.iter().zip(max))
                .all(|(v, (a, b))| a <= v && v <= b),
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            Component::Ball {
                center,
                radius,
                density,
            } => {
                if center.is_empty() || !finite(center) || !radius.is_finite() {
                    return Err(Error::InvalidShape(
                        "ball must have a finite center and radius".into(),
                    ));
                }
                if *radius <= 0.0 {
                    return Err(Error::InvalidShape(format!(
                        "ball radius {radius} is not positive"
                    )));
                }
                check_density(*density)
            }
            Component::Box { min, max, density } => {
                if min.is_empty() || min.len() != max.len() || !finite(min) || !finite(max) {
                    return Err(Error::InvalidShape(
                        "box corners must be finite and of equal dimension".into(),
                    ));
                }
                if min.iter().zip(max).any(|(a, b)| a >= b) {
                    return Err(Error::InvalidShape(
                        "box min corner must be below max corner".into(),
                    ));
                }
                check_density(*density)
            }
        }
    }
}

fn check_density(d: f64) -> Result<()> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!(
            "density {d} must be finite and nonnegative"
        )))
    }
}

/// Union of components. Where components overlap the larger density wins,
/// so unit densities give the indicator of the union. Open versus closed
/// boundaries carry no mass and are not modeled.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    name: String,
    components: Vec<Component>,
}

impl ShapeSpec {
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Result<Self> {
        let name = name.into();
        let first = components.first().ok_or(Error::Empty("shape components"))?;
        let dim = first.dim();
        for c in &components {
            c.validate()?;
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        if components.iter().all(|c| c.density() == 0.0) {
            return Err(Error::InvalidShape(format!(
                "{name}: no component has positive density"
            )));
        }
        Ok(ShapeSpec { name, components })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim()];
        let mut hi = vec![f64::NEG_INFINITY; self.dim()];
        for c in self.components.iter().filter(|c| c.density() > 0.0) {
            let (a, b) = c.bounds();
            for k in 0..lo.len() {
                lo[k] = lo[k].min(a[k]);
                hi[k] = hi[k].max(b[k]);
            }
        }
        (lo, hi)
    }

    pub fn density_at(&self, x: &[f64]) -> f64 {
        self.components
            .iter()
            .filter(|c| c.contains(x))
            .map(Component::density)
            .fold(0.0, f64::max)
    }
}

pub const DEFAULT_SUPERSAMPLE: usize = 4;

/// Rasterize onto half-open cubes of side `h`, with the grid origin snapped to
/// a multiple of `h` so grids at dyadic scales nest. A cell overlapped by one
/// box and nothing else gets its exact overlap mass; every other cell uses the
/// midpoint rule on `s^n` subcells.
pub fn rasterize(shape: &ShapeSpec, h: f64, supersample: usize) -> Result<GridMeasure> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidShape(format!(
            "cell size {h} must be positive"
        )));
    }
    if supersample == 0 {
        return Err(Error::InvalidShape(
            "supersampling factor must be positive".into(),
        ));
    }
    let n = shape.dim();
    let (lo, hi) = shape.bounds();
    let origin: Vec<f64> = lo.iter().map(|x| (x / h).floor() * h).collect();
    let dims: Vec<usize> = (0..n)
        .map(|k| (((hi[k] - origin[k]) / h).ceil() as usize).max(1))
        .collect();
    let cells: usize = dims.iter().product();
    let active: Vec<(&Component, Vec<f64>, Vec<f64>)> = shape
        .components
        .iter()
        .filter(|c| c.density() > 0.0)
        .map(|c| {
            let (a, b) = c.bounds();
            (c, a, b)
        })
        .collect();

    let cell_volume = h.powi(n as i32);
    let sample_volume = cell_volume / (supersample as f64).powi(n as i32);
    let samples = supersample.pow(n as u32);
    let mut masses = vec![0.0; cells];
    let mut index = vec![0usize; n];
    let mut cell_lo = vec![0.0; n];
    let mut cell_hi = vec![0.0; n];
    let mut x = vec![0.0; n];
    for mass in masses.iter_mut() {
        for k in 0..n {
            cell_lo[k] = origin[k] + index[k] as f64 * h;
            cell_hi[k] = origin[k] + (index[k] + 1) as f64 * h;
        }
        let hits: Vec<&(&Component, Vec<f64>, Vec<f64>)> = active
            .iter()
            .filter(|(_, a, b)| (0..n).all(|k| a[k] < cell_hi[k] && b[k] > cell_lo[k]))
            .collect();
        *mass = match hits.as_slice() {
            [] => 0.0,
            [(Component::Box { min, max, density }, _, _)] => {
                let overlap: f64 = (0..n)
                    .map(|k| (max[k].min(cell_hi[k]) - min[k].max(cell_lo[k])).max(0.0))
                    .product();
                density * overlap
            }
            _ => {
                let mut density_sum = 0.0;
                for s in 0..samples {
                    let mut rest = s;
                    for k in 0..n {
                        let sub = rest % supersample;
                        rest /= supersample;
                        x[k] = origin[k]
                            + (index[k] as f64 + (sub as f64 + 0.5) / supersample as f64) * h;
                    }
                    density_sum += hits
                        .iter()
                        .filter(|(c, _, _)| c.contains(&x))
                        .map(|(c, _, _)| c.density())
                        .fold(0.0, f64::max);
                }
                density_sum * sample_volume
            }
        };
        for k in 0..n {
            index[k] += 1;
            if index[k] < dims[k] {
                break;
            }
            index[k] = 0;
        }
    }
    GridMeasure::new(shape.name(), origin, h, dims, masses)
}
