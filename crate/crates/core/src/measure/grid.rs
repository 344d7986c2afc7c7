//! Cube-grid measures: half-open cells `[origin + i·h, origin + (i+1)·h)` per
//! axis, linear index with axis 0 varying fastest.

use crate::bisection::{Atom, AtomicMeasure};
use crate::error::{Error, Result};
use crate::geometry::{Hyperplane, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct GridMeasure {
    name: String,
    origin: Vec<f64>,
    h: f64,
    dims: Vec<usize>,
    masses: Vec<f64>,
}

impl GridMeasure {
    /// Masses must be finite and nonnegative; an all-zero grid is representable
    /// but cannot be discretized.
    pub fn new(
        name: impl Into<String>,
        origin: Vec<f64>,
        h: f64,
        dims: Vec<usize>,
        masses: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if origin.is_empty() || origin.len() != dims.len() {
            return Err(Error::InvalidMeasure(format!(
                "{name}: origin and dims disagree on dimension"
            )));
        }
        if !(h.is_finite() && h > 0.0) || origin.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidMeasure(format!(
                "{name}: cell size and origin must be finite, h > 0"
            )));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidMeasure(format!(
                "{name}: every axis needs at least one cell"
            )));
        }
        let cells: usize = dims.iter().product();
        if masses.len() != cells {
            return Err(Error::InvalidMeasure(format!(
                "{name}: {} masses for {cells} cells",
                masses.len()
            )));
        }
        if masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidMeasure(format!(
                "{name}: cell masses must be finite and nonnegative"
            )));
        }
        Ok(GridMeasure {
            name,
            origin,
            h,
            dims,
            masses,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn cell_size(&self) -> f64 {
        self.h
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `h·√n`, the resolution parameter.
    pub fn cell_diameter(&self) -> f64 {
        self.h * (self.dim() as f64).sqrt()
    }

    /// Sum over cells in index order.
    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn cell_index(&self, mut linear: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|&d| {
                let i = linear % d;
                linear /= d;
                i
            })
            .collect()
    }

    pub fn centroid(&self, linear: usize) -> Vec<f64> {
        self.cell_index(linear)
            .iter()
            .zip(&self.origin)
            .map(|(&i, o)| o + (i as f64 + 0.5) * self.h)
            .collect()
    }

    pub fn cell_bounds(&self, linear: usize) -> (Vec<f64>, Vec<f64>) {
        let idx = self.cell_index(linear);
        let lo = idx
            .iter()
            .zip(&self.origin)
            .map(|(&i, o)| o + i as f64 * self.h)
            .collect();
        let hi = idx
            .iter()
            .zip(&self.origin)
            .map(|(&i, o)| o + (i + 1) as f64 * self.h)
            .collect();
        (lo, hi)
    }

    /// Linear indices of cells with positive mass.
    pub fn support_cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0.0)
            .map(|(i, _)| i)
    }

    /// Range of `⟨u, x⟩` over the closed cell.
    pub fn cell_projection(&self, linear: usize, u: &[f64]) -> (f64, f64) {
        let center: f64 = self
            .centroid(linear)
            .iter()
            .zip(u)
            .map(|(x, v)| x * v)
            .sum();
        let half: f64 = 0.5 * self.h * u.iter().map(|v| v.abs()).sum::<f64>();
        (center - half, center + half)
    }

    /// Distance from a unit-normal hyperplane to the closed cell.
    pub fn cell_distance(&self, linear: usize, plane: &Hyperplane<f64>) -> f64 {
        let (lo, hi) = self.cell_projection(linear, plane.normal());
        let c = *plane.offset();
        (lo - c).max(c - hi).max(0.0)
    }

    /// Distance from the hyperplane to the nearest closed cell of positive mass.
    pub fn support_distance(&self, plane: &Hyperplane<f64>) -> f64 {
        self.support_cells()
            .map(|i| self.cell_distance(i, plane))
            .fold(f64::INFINITY, f64::min)
    }

    /// Mass of cells whose closure lies within distance `< eps` of the hyperplane.
    pub fn slab_mass(&self, plane: &Hyperplane<f64>, eps: f64) -> f64 {
        self.support_cells()
            .filter(|&i| self.cell_distance(i, plane) < eps)
            .map(|i| self.masses[i])
            .sum()
    }

    /// Upper bounds `(minus, plus)` on the measure of each open half-space:
    /// the mass of every cell that meets it.
    pub fn side_mass_bounds(&self, plane: &Hyperplane<f64>) -> (f64, f64) {
        let c = *plane.offset();
        let (mut minus, mut plus) = (0.0, 0.0);
        for i in self.support_cells() {
            let (lo, hi) = self.cell_projection(i, plane.normal());
            if lo < c {
                minus += self.masses[i];
            }
            if hi > c {
                plus += self.masses[i];
            }
        }
        (minus, plus)
    }

    /// Union of the projections of positive-mass cells onto `u`, as sorted disjoint intervals.
    pub fn support_intervals(&self, u: &[f64]) -> Vec<(f64, f64)> {
        let mut spans: Vec<(f64, f64)> = self
            .support_cells()
            .map(|i| self.cell_projection(i, u))
            .collect();
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in spans {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        merged
    }
}

/// One atom per positive-mass cell, at the cell centroid, carrying the cell mass.
pub fn discretize(grid: &GridMeasure) -> Result<AtomicMeasure<f64>> {
    let atoms: Vec<Atom<f64>> = grid
        .support_cells()
        .map(|i| Atom {
            point: Point::new(grid.centroid(i)),
            mass: grid.masses[i],
        })
        .collect();
    if atoms.is_empty() {
        return Err(Error::InvalidMeasure(format!(
            "{}: grid carries no mass",
            grid.name
        )));
    }
    AtomicMeasure::new(grid.name.clone(), atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::shape::{rasterize, Component, ShapeSpec};

    #[test]
    fn discretize_two_cells() {
        let g = GridMeasure::new("g", vec![0.0, 0.0], 1.0, vec![2, 1], vec![3.0, 5.0]).unwrap();
        let m = discretize(&g).unwrap();
        let atoms: Vec<_> = m
            .atoms()
            .iter()
            .map(|a| (a.point.coords().to_vec(), a.mass))
            .collect();
        assert_eq!(atoms, vec![(vec![0.5, 0.5], 3.0), (vec![1.5, 0.5], 5.0)]);
    }

    #[test]
    fn discretize_single_cell() {
        let g = GridMeasure::new(
            "g",
            vec![-1.0, 2.0],
            0.5,
            vec![2, 2],
            vec![0.0, 0.0, 7.0, 0.0],
        )
        .unwrap();
        let m = discretize(&g).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.atoms()[0].point.coords(), &[-0.75, 2.75]);
        assert_eq!(m.atoms()[0].mass, 7.0);
    }

    #[test]
    fn discretize_conserves_mass_exactly() {
        let shape = ShapeSpec::new(
            "disk",
            vec![Component::Ball {
                center: vec![0.0, 0.0],
                radius: 1.0,
                density: 1.0,
            }],
        )
        .unwrap();
        let g = rasterize(&shape, 1.0 / 8.0, 4).unwrap();
        let m = discretize(&g).unwrap();
        assert_eq!(*m.total(), g.total());
        assert!(m.len() <= g.masses().len());
    }

    #[test]
    fn discretize_rejects_empty_grid() {
        let g = GridMeasure::new("z", vec![0.0], 1.0, vec![3], vec![0.0; 3]).unwrap();
        assert!(matches!(discretize(&g), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn grid_validation() {
        assert!(GridMeasure::new("g", vec![0.0], 0.0, vec![1], vec![1.0]).is_err());
        assert!(GridMeasure::new("g", vec![0.0], 1.0, vec![2], vec![1.0]).is_err());
        assert!(GridMeasure::new("g", vec![0.0], 1.0, vec![1], vec![-1.0]).is_err());
        assert!(GridMeasure::new("g", vec![0.0, 0.0], 1.0, vec![1], vec![1.0]).is_err());
    }

    #[test]
    fn cell_geometry() {
        let g =
            GridMeasure::new("g", vec![0.0, 0.0], 1.0, vec![3, 1], vec![1.0, 0.0, 2.0]).unwrap();
        let x1 = Hyperplane::new(vec![1.0, 0.0], 1.0).unwrap();
        // Cell 0 is [0,1]x[0,1]: its closure touches x = 1.
        assert_eq!(g.cell_distance(0, &x1), 0.0);
        assert_eq!(g.cell_distance(2, &x1), 1.0);
        assert_eq!(g.support_distance(&x1), 0.0);
        assert_eq!(g.slab_mass(&x1, 0.5), 1.0);
        assert_eq!(g.side_mass_bounds(&x1), (1.0, 2.0));
        assert_eq!(
            g.support_intervals(&[1.0, 0.0]),
            vec![(0.0, 1.0), (2.0, 3.0)]
        );
    }
}
