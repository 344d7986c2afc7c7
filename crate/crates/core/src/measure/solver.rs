//! Touching bisectors of compactly supported measures by grid refinement.
//!
//! Each level rasterizes the inputs at a cell diameter below `ε_k`, moves each
//! cell's mass to its centroid and solves the atomic problem, either exactly
//! (`Enumerate`) or by scanning directions for a common median offset
//! (`Sweep`). The per-level trace carries the bounds that transfer back to the
//! original measures: side masses exceed half the total by at most the mass of
//! the `ε_k`-slab, and the plane passes within `ε_k` of every support.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::bisection::{evaluate_cut, side_masses, Atom, AtomicMeasure, CutReport, SideMasses};
use crate::discrete::{solve_touching_cut, Instance, SolverConfig};
use crate::error::{Error, Result};
use crate::geometry::Hyperplane;
use crate::measure::directions::{
    angle_direction, circle_directions, cross3, in_upper_hemisphere, normalize3, GeodesicSphere,
};
use crate::measure::grid::{discretize, GridMeasure};
use crate::measure::median::weighted_median_interval;
use crate::measure::shape::{rasterize, ShapeSpec, DEFAULT_SUPERSAMPLE};
use crate::parallel::Parallelism;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureInput {
    Shape(ShapeSpec),
    /// Used as given at every level; its cell diameter must be below each `ε_k`.
    Grid(GridMeasure),
}

impl MeasureInput {
    pub fn name(&self) -> &str {
        match self {
            MeasureInput::Shape(s) => s.name(),
            MeasureInput::Grid(g) => g.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MeasureInput::Shape(s) => s.dim(),
            MeasureInput::Grid(g) => g.dim(),
        }
    }

    /// Grid for a level with tolerance `eps`.
    pub fn grid_for(&self, eps: f64, supersample: usize) -> Result<GridMeasure> {
        match self {
            MeasureInput::Shape(s) => rasterize(s, cell_size_for(eps, s.dim()), supersample),
            MeasureInput::Grid(g) if g.cell_diameter() < eps => Ok(g.clone()),
            MeasureInput::Grid(g) => Err(Error::InvalidSchedule(format!(
                "grid {} has cell diameter {} which is not below ε = {eps}",
                g.name(),
                g.cell_diameter()
            ))),
        }
    }
}

/// `ε / 2^m` with the smallest `m` such that `2^m > √n`, so `h·√n < ε` and
/// successive dyadic levels nest.
pub fn cell_size_for(eps: f64, dim: usize) -> f64 {
    let root = (dim as f64).sqrt();
    let mut scale = 1.0;
    while scale <= root {
        scale *= 2.0;
    }
    eps / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Direction scan over median intervals.
    #[default]
    Sweep,
    /// Exact atomic solve on the centroid atoms.
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConfig {
    pub parallelism: Parallelism,
    /// Angle grid size in the plane.
    pub circle_directions: usize,
    /// Icosahedron subdivisions in space.
    pub sphere_subdivisions: usize,
    /// Local refinement factor around the best direction.
    pub refine_factor: usize,
    pub supersample: usize,
    /// Slack allowed when intersecting median intervals and classifying atoms.
    pub interval_tol: f64,
    /// Angle and offset agreement required between the last two levels.
    pub convergence_tol: f64,
    /// Atom cap per measure for `Strategy::Enumerate`.
    pub enumerate_atom_cap: usize,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            parallelism: Parallelism::default(),
            circle_directions: 720,
            sphere_subdivisions: 4,
            refine_factor: 3,
            supersample: DEFAULT_SUPERSAMPLE,
            interval_tol: 1e-9,
            convergence_tol: 1e-3,
            enumerate_atom_cap: 400,
        }
    }
}

/// One measure at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMeasure {
    pub name: String,
    pub total: f64,
    /// Side masses of the centroid atoms.
    pub atom_masses: SideMasses<f64>,
    /// Upper bounds on the open half-space masses: cells meeting each side.
    pub minus_bound: f64,
    pub plus_bound: f64,
    /// Mass of cells within distance `< ε` of the plane.
    pub slab_mass: f64,
    /// Distance to the nearest closed cell of positive mass.
    pub support_distance: f64,
}

impl LevelMeasure {
    /// `bound ≤ total/2 + slab` on both sides, up to float summation error.
    pub fn within_slab_bound(&self) -> bool {
        let limit = self.total / 2.0 + self.slab_mass + 1e-9 * self.total;
        self.minus_bound <= limit && self.plus_bound <= limit
    }

    /// A centroid atom lies on the plane (within the classification tolerance).
    pub fn atom_on_plane(&self) -> bool {
        self.atom_masses.on > 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    pub eps: f64,
    pub cell_size: f64,
    pub hyperplane: Hyperplane<f64>,
    pub measures: Vec<LevelMeasure>,
    pub atom_counts: Vec<usize>,
    pub directions_examined: usize,
}

impl LevelTrace {
    pub fn within_slab_bounds(&self) -> bool {
        self.measures.iter().all(LevelMeasure::within_slab_bound)
    }

    pub fn touches_within_eps(&self) -> bool {
        self.measures.iter().all(|m| m.support_distance < self.eps)
    }

    /// Every measure has a centroid atom on the plane, not just nearby support.
    pub fn atom_incidence(&self) -> bool {
        self.measures.iter().all(LevelMeasure::atom_on_plane)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub levels: Vec<LevelTrace>,
    pub limit: Hyperplane<f64>,
    pub converged: bool,
    /// Angle between the last two normals, sign-matched; `None` with one level.
    pub angle_change: Option<f64>,
    pub offset_change: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSolution {
    pub hyperplane: Hyperplane<f64>,
    /// Cut report against the finest level's centroid atoms.
    pub report: CutReport<f64>,
    pub trace: ConvergenceTrace,
}

/// Solve along a decreasing schedule of tolerances `ε_1 > ε_2 > …`.
pub fn solve_measure_cut(
    inputs: &[MeasureInput],
    schedule: &[f64],
    strategy: Strategy,
    config: &MeasureConfig,
) -> Result<MeasureSolution> {
    let n = inputs.first().ok_or(Error::Empty("measure inputs"))?.dim();
    if inputs.len() != n {
        return Err(Error::InvalidInstance(format!(
            "{} measures given in dimension {n}; the count must equal the dimension",
            inputs.len()
        )));
    }
    for input in inputs {
        if input.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: input.dim(),
            });
        }
    }
    check_schedule(schedule)?;
    if strategy == Strategy::Sweep && n > 3 {
        return Err(Error::SweepUnsupported(n));
    }

    let mut levels = Vec::with_capacity(schedule.len());
    let mut last_atoms = Vec::new();
    for (k, &eps) in schedule.iter().enumerate() {
        let grids = inputs
            .iter()
            .map(|i| i.grid_for(eps, config.supersample))
            .collect::<Result<Vec<_>>>()?;
        let atoms = grids.iter().map(discretize).collect::<Result<Vec<_>>>()?;
        let (plane, examined) = match strategy {
            Strategy::Sweep => {
                let level = SweepLevel::new(&grids, &atoms, config);
                let best = level.solve()?.filter(|b| b.distance < eps);
                let best = best.ok_or(Error::NoAdmissibleDirection { level: k, eps })?;
                (Hyperplane::new(best.u, best.c)?, level.examined())
            }
            Strategy::Enumerate => (enumerate_level(&atoms, config)?, 0),
        };
        levels.push(trace_level(
            eps,
            &grids,
            &atoms,
            plane,
            examined,
            config.interval_tol,
        )?);
        last_atoms = atoms;
    }

    let last = levels.last().expect("schedule is nonempty");
    let hyperplane = last.hyperplane.clone();
    let (angle_change, offset_change) = match levels.len() {
        0 | 1 => (None, None),
        len => {
            let (a, o) = plane_change(&levels[len - 2].hyperplane, &hyperplane);
            (Some(a), Some(o))
        }
    };
    let converged = matches!((angle_change, offset_change), (Some(a), Some(o)) if a < config.convergence_tol && o < config.convergence_tol);
    let report = evaluate_cut(&last_atoms, &hyperplane, config.interval_tol)?;
    Ok(MeasureSolution {
        hyperplane: hyperplane.clone(),
        report,
        trace: ConvergenceTrace {
            levels,
            limit: hyperplane,
            converged,
            angle_change,
            offset_change,
        },
    })
}

fn check_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidSchedule("schedule is empty".into()));
    }
    if schedule.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidSchedule(
            "every ε must be finite and positive".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSchedule(
            "schedule must be strictly decreasing".into(),
        ));
    }
    Ok(())
}

/// Angle between unit normals and offset difference, after matching signs.
pub fn plane_change(a: &Hyperplane<f64>, b: &Hyperplane<f64>) -> (f64, f64) {
    let d: f64 = a.normal().iter().zip(b.normal()).map(|(x, y)| x * y).sum();
    let sign = if d < 0.0 { -1.0 } else { 1.0 };
    let angle = (sign * d).clamp(-1.0, 1.0).acos();
    (angle, (a.offset() - sign * b.offset()).abs())
}

fn trace_level(
    eps: f64,
    grids: &[GridMeasure],
    atoms: &[AtomicMeasure<f64>],
    plane: Hyperplane<f64>,
    examined: usize,
    tol: f64,
) -> Result<LevelTrace> {
    let mut measures = Vec::with_capacity(grids.len());
    for (grid, nu) in grids.iter().zip(atoms) {
        let (minus_bound, plus_bound) = grid.side_mass_bounds(&plane);
        measures.push(LevelMeasure {
            name: grid.name().to_string(),
            total: grid.total(),
            atom_masses: side_masses(nu, &plane, tol)?,
            minus_bound,
            plus_bound,
            slab_mass: grid.slab_mass(&plane, eps),
            support_distance: grid.support_distance(&plane),
        });
    }
    Ok(LevelTrace {
        eps,
        cell_size: grids[0].cell_size(),
        hyperplane: plane,
        measures,
        atom_counts: atoms.iter().map(AtomicMeasure::len).collect(),
        directions_examined: examined,
    })
}

fn enumerate_level(
    atoms: &[AtomicMeasure<f64>],
    config: &MeasureConfig,
) -> Result<Hyperplane<f64>> {
    let mut exact = Vec::with_capacity(atoms.len());
    for nu in atoms {
        if nu.len() > config.enumerate_atom_cap {
            return Err(Error::CapExceeded {
                what: "centroid atoms per measure",
                size: nu.len() as u128,
                cap: config.enumerate_atom_cap as u128,
            });
        }
        let converted = nu
            .atoms()
            .iter()
            .map(|a| Atom {
                point: a.point.to_exact(),
                mass: Rational::from_f64(a.mass),
            })
            .collect();
        exact.push(AtomicMeasure::new(nu.name(), converted)?);
    }
    let solver = SolverConfig {
        parallelism: config.parallelism,
        ..SolverConfig::default()
    };
    Ok(solve_touching_cut(&Instance::new(exact)?, &solver)?
        .hyperplane
        .to_f64())
}

/// A scored direction: the offset minimizes the largest support distance.
#[derive(Debug, Clone)]
struct Scored {
    u: Vec<f64>,
    c: f64,
    distance: f64,
    width: f64,
}

fn better(a: &Scored, b: &Scored) -> bool {
    match a.distance.total_cmp(&b.distance) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.width > b.width,
    }
}

/// Flattened centroid atoms and support cells of one level.
struct Flat {
    points: Vec<f64>,
    masses: Vec<f64>,
    total: f64,
    support: Vec<f64>,
    half_cell: f64,
}

struct SweepLevel<'a> {
    dim: usize,
    measures: Vec<Flat>,
    config: &'a MeasureConfig,
    examined: AtomicUsize,
}

impl<'a> SweepLevel<'a> {
    fn new(grids: &[GridMeasure], atoms: &[AtomicMeasure<f64>], config: &'a MeasureConfig) -> Self {
        let measures = grids
            .iter()
            .zip(atoms)
            .map(|(g, nu)| Flat {
                points: nu
                    .atoms()
                    .iter()
                    .flat_map(|a| a.point.coords().iter().copied())
                    .collect(),
                masses: nu.atoms().iter().map(|a| a.mass).collect(),
                total: *nu.total(),
                support: g.support_cells().flat_map(|i| g.centroid(i)).collect(),
                half_cell: 0.5 * g.cell_size(),
            })
            .collect();
        SweepLevel {
            dim: grids[0].dim(),
            measures,
            config,
            examined: AtomicUsize::new(0),
        }
    }

    fn examined(&self) -> usize {
        self.examined.load(AtomicOrdering::Relaxed)
    }

    fn intervals(&self, u: &[f64]) -> Vec<(f64, f64)> {
        self.measures
            .iter()
            .map(|m| {
                let mut pairs: Vec<(f64, f64)> = m
                    .points
                    .chunks_exact(self.dim)
                    .zip(&m.masses)
                    .map(|(p, w)| (dot(p, u), *w))
                    .collect();
                weighted_median_interval(&mut pairs, &m.total)
            })
            .collect()
    }

    /// Midpoint differences against the last measure; odd under `u ↦ −u`.
    fn residual(&self, u: &[f64]) -> Vec<f64> {
        let mids: Vec<f64> = self
            .intervals(u)
            .iter()
            .map(|(l, r)| 0.5 * (l + r))
            .collect();
        let last = mids[mids.len() - 1];
        mids[..mids.len() - 1].iter().map(|m| m - last).collect()
    }

    /// Common offset interval, with a small slack for float noise.
    fn common(&self, intervals: &[(f64, f64)]) -> Option<(f64, f64)> {
        let lo = intervals
            .iter()
            .map(|i| i.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let hi = intervals.iter().map(|i| i.1).fold(f64::INFINITY, f64::min);
        let scale = 1.0 + lo.abs().max(hi.abs());
        if lo <= hi {
            Some((lo, hi))
        } else if lo - hi <= 2.0 * self.config.interval_tol * scale {
            let mid = 0.5 * (lo + hi);
            Some((mid, mid))
        } else {
            None
        }
    }

    fn support_intervals(&self, m: &Flat, u: &[f64]) -> Vec<(f64, f64)> {
        let half = m.half_cell * u.iter().map(|x| x.abs()).sum::<f64>();
        let mut spans: Vec<(f64, f64)> = m
            .support
            .chunks_exact(self.dim)
            .map(|p| {
                let t = dot(p, u);
                (t - half, t + half)
            })
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

    fn score(&self, u: Vec<f64>) -> Option<Scored> {
        let (a, b) = self.common(&self.intervals(&u))?;
        let supports: Vec<Vec<(f64, f64)>> = self
            .measures
            .iter()
            .map(|m| self.support_intervals(m, &u))
            .collect();
        let distance_at = |c: f64| {
            supports
                .iter()
                .map(|spans| {
                    spans
                        .iter()
                        .map(|&(lo, hi)| (lo - c).max(c - hi).max(0.0))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        };
        let mid = 0.5 * (a + b);
        let ends: Vec<f64> = supports
            .iter()
            .flatten()
            .flat_map(|&(lo, hi)| [lo, hi])
            .collect();
        let mut candidates = vec![mid, a, b];
        candidates.extend(ends.iter().copied().filter(|t| (a..=b).contains(t)));
        for (i, x) in ends.iter().enumerate() {
            for y in &ends[i + 1..] {
                let t = 0.5 * (x + y);
                if (a..=b).contains(&t) {
                    candidates.push(t);
                }
            }
        }
        let mut best = (f64::INFINITY, f64::INFINITY, mid);
        for c in candidates {
            let key = (distance_at(c), (c - mid).abs(), c);
            if key.0 < best.0 || (key.0 == best.0 && key.1 < best.1) {
                best = key;
            }
        }
        Some(Scored {
            u,
            c: best.2,
            distance: best.0,
            width: b - a,
        })
    }

    /// Best scored direction among `dirs`; ties go to the earliest.
    fn best_of(&self, dirs: Vec<Vec<f64>>) -> Option<Scored> {
        self.examined.fetch_add(dirs.len(), AtomicOrdering::Relaxed);
        let scored = self
            .config
            .parallelism
            .map_collect(dirs.len(), |i| self.score(dirs[i].clone()));
        scored
            .into_iter()
            .flatten()
            .fold(None, |acc: Option<Scored>, s| match acc {
                Some(b) if !better(&s, &b) => Some(b),
                _ => Some(s),
            })
    }

    fn solve(&self) -> Result<Option<Scored>> {
        let (grid, roots) = match self.dim {
            1 => (vec![vec![1.0]], Vec::new()),
            2 => self.circle_candidates(),
            3 => self.sphere_candidates(),
            n => return Err(Error::SweepUnsupported(n)),
        };
        let mut dirs = grid;
        dirs.extend(roots);
        let best = self.best_of(dirs);
        let refined = match &best {
            Some(b) if self.dim > 1 => self.best_of(self.neighborhood(&b.u)),
            _ => None,
        };
        Ok(match (best, refined) {
            (Some(b), Some(r)) if better(&r, &b) => Some(r),
            (b, _) => b,
        })
    }

    fn step(&self) -> f64 {
        match self.dim {
            2 => PI / self.config.circle_directions.max(1) as f64,
            _ => GeodesicSphere::new(self.config.sphere_subdivisions).spacing(),
        }
    }

    /// Directions within one grid step of `u`, spaced by `step / refine_factor`.
    fn neighborhood(&self, u: &[f64]) -> Vec<Vec<f64>> {
        let f = self.config.refine_factor.max(1) as i64;
        let fine = self.step() / f as f64;
        if self.dim == 2 {
            let theta = u[1].atan2(u[0]);
            return (-f..=f)
                .filter(|k| *k != 0)
                .map(|k| angle_direction(theta + k as f64 * fine))
                .collect();
        }
        let p = [u[0], u[1], u[2]];
        let seed = if p[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let e1 = normalize3(&cross3(&p, &seed));
        let e2 = cross3(&p, &e1);
        let mut out = Vec::new();
        for i in -f..=f {
            for j in -f..=f {
                if i == 0 && j == 0 {
                    continue;
                }
                let (a, b) = (i as f64 * fine, j as f64 * fine);
                out.push(normalize3(&[0, 1, 2].map(|k| p[k] + a * e1[k] + b * e2[k])).to_vec());
            }
        }
        out
    }

    /// Angle grid on `[0, π)` plus roots of the midpoint difference, found by
    /// bisecting every sign change (the residual at `π` is minus that at `0`).
    fn circle_candidates(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let count = self.config.circle_directions.max(1);
        let grid = circle_directions(count);
        let step = PI / count as f64;
        let g: Vec<f64> = self
            .config
            .parallelism
            .map_collect(count, |j| self.residual(&grid[j])[0]);
        let brackets: Vec<(f64, f64, f64)> = (0..count)
            .filter_map(|j| {
                let (a, b) = (g[j], if j + 1 < count { g[j + 1] } else { -g[0] });
                (a * b < 0.0).then_some((j as f64 * step, (j + 1) as f64 * step, a))
            })
            .collect();
        let roots = self.config.parallelism.map_collect(brackets.len(), |i| {
            let (mut lo, mut hi, g_lo) = brackets[i];
            for _ in 0..64 {
                if hi - lo < 1e-14 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let v = self.residual(&angle_direction(mid))[0];
                if v == 0.0 {
                    return angle_direction(mid);
                }
                if (v < 0.0) == (g_lo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            angle_direction(0.5 * (lo + hi))
        });
        self.examined.fetch_add(count, AtomicOrdering::Relaxed);
        (grid, roots)
    }

    /// Geodesic grid on the upper hemisphere plus zeros of the two-component
    /// residual, located by following faces whose residual triangle contains
    /// the origin through repeated 4-way subdivision.
    fn sphere_candidates(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let sphere = GeodesicSphere::new(self.config.sphere_subdivisions);
        let anti = sphere.antipodes();
        let upper: Vec<usize> = (0..sphere.vertices.len())
            .filter(|&i| in_upper_hemisphere(&sphere.vertices[i]))
            .collect();
        let values = self
            .config
            .parallelism
            .map_collect(upper.len(), |k| self.residual(&sphere.vertices[upper[k]]));
        let mut g = vec![[0.0; 2]; sphere.vertices.len()];
        for (k, &i) in upper.iter().enumerate() {
            g[i] = [values[k][0], values[k][1]];
            g[anti[i]] = [-values[k][0], -values[k][1]];
        }
        self.examined
            .fetch_add(upper.len(), AtomicOrdering::Relaxed);
        let faces: Vec<[usize; 3]> = sphere
            .faces
            .iter()
            .copied()
            .filter(|f| contains_origin(&f.map(|v| g[v])))
            .filter(|f| in_upper_hemisphere(&centroid3(&f.map(|v| sphere.vertices[v]))))
            .collect();
        let roots = self.config.parallelism.map_collect(faces.len(), |i| {
            let mut tri = faces[i].map(|v| sphere.vertices[v]);
            let mut vals = faces[i].map(|v| g[v]);
            for _ in 0..40 {
                let mids = [(0, 1), (1, 2), (2, 0)].map(|(a, b)| {
                    normalize3(&[
                        tri[a][0] + tri[b][0],
                        tri[a][1] + tri[b][1],
                        tri[a][2] + tri[b][2],
                    ])
                });
                let mvals = mids.map(|m| {
                    let r = self.residual(&m);
                    [r[0], r[1]]
                });
                let subs = [
                    ([tri[0], mids[0], mids[2]], [vals[0], mvals[0], mvals[2]]),
                    ([mids[0], tri[1], mids[1]], [mvals[0], vals[1], mvals[1]]),
                    ([mids[2], mids[1], tri[2]], [mvals[2], mvals[1], vals[2]]),
                    ([mids[0], mids[1], mids[2]], [mvals[0], mvals[1], mvals[2]]),
                ];
                match subs.into_iter().find(|(_, v)| contains_origin(v)) {
                    Some((t, v)) => {
                        tri = t;
                        vals = v;
                    }
                    None => break,
                }
            }
            normalize3(&centroid3(&tri)).to_vec()
        });
        let grid = upper.iter().map(|&i| sphere.vertices[i].to_vec()).collect();
        (grid, roots)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn centroid3(t: &[[f64; 3]; 3]) -> [f64; 3] {
    [0, 1, 2].map(|k| (t[0][k] + t[1][k] + t[2][k]) / 3.0)
}

/// Closed triangle test for the origin in the plane.
fn contains_origin(v: &[[f64; 2]; 3]) -> bool {
    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    let s = [cross(v[0], v[1]), cross(v[1], v[2]), cross(v[2], v[0])];
    s.iter().all(|x| *x >= 0.0) || s.iter().all(|x| *x <= 0.0)
}
