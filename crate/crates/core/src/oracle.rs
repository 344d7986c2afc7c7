//! Independent re-checking of cuts and seeded instance generators.
//!
//! `verify` recomputes everything from [`side_of`] alone and never touches
//! solver code, so a solver defect not shared by `side_of` shows up here.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisection::AtomicMeasure;
use crate::discrete::Instance;
use crate::error::{Error, Result};
use crate::geometry::{distance_point_hyperplane, side_of, Hyperplane, Point, Side};
use crate::measure::grid::GridMeasure;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVerdict<S> {
    pub name: String,
    pub minus: S,
    pub on: S,
    pub plus: S,
    pub total: S,
    pub bisected: bool,
    pub touched: bool,
    /// Index of the first atom on the hyperplane.
    pub witness: Option<usize>,
    /// Distance to the nearest atom; zero when touched.
    pub nearest_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<S> {
    pub measures: Vec<MeasureVerdict<S>>,
    pub verdict: bool,
}

impl<S> VerifyReport<S> {
    pub fn all_bisected(&self) -> bool {
        self.measures.iter().all(|m| m.bisected)
    }

    pub fn all_touched(&self) -> bool {
        self.measures.iter().all(|m| m.touched)
    }
}

/// Re-check "bisects and touches" for every measure of an exact instance.
pub fn verify(
    inst: &Instance,
    plane: &Hyperplane<Rational>,
    tol: f64,
) -> Result<VerifyReport<Rational>> {
    verify_measures(inst.measures(), plane, tol)
}

pub fn verify_measures<S: Scalar>(
    measures: &[AtomicMeasure<S>],
    plane: &Hyperplane<S>,
    tol: f64,
) -> Result<VerifyReport<S>> {
    let mut out = Vec::with_capacity(measures.len());
    for m in measures {
        let (mut minus, mut on, mut plus, mut total) = (S::zero(), S::zero(), S::zero(), S::zero());
        let mut witness = None;
        let mut nearest = f64::INFINITY;
        for (i, atom) in m.atoms().iter().enumerate() {
            total = total + atom.mass.clone();
            match side_of(&atom.point, plane, tol)? {
                Side::Minus => minus = minus + atom.mass.clone(),
                Side::Plus => plus = plus + atom.mass.clone(),
                Side::On => {
                    on = on + atom.mass.clone();
                    witness.get_or_insert(i);
                }
            }
            nearest = nearest.min(distance_point_hyperplane(&atom.point, plane)?);
        }
        if witness.is_some() {
            nearest = 0.0;
        }
        let half = total.clone() / (S::one() + S::one());
        out.push(MeasureVerdict {
            name: m.name().to_string(),
            bisected: plus <= half && minus <= half,
            touched: on > S::zero(),
            minus,
            on,
            plus,
            total,
            witness,
            nearest_distance: nearest,
        });
    }
    let verdict = out.iter().all(|m| m.bisected && m.touched);
    Ok(VerifyReport {
        measures: out,
        verdict,
    })
}

/// Grid measure checked against a hyperplane from cell corners alone.
#[derive(Debug, Clone, PartialEq)]
pub struct GridVerdict {
    pub name: String,
    pub total: f64,
    /// Mass of cells meeting each open side.
    pub minus_bound: f64,
    pub plus_bound: f64,
    /// Mass of cells within distance `< eps`.
    pub slab_mass: f64,
    /// Distance to the nearest closed cell of positive mass.
    pub nearest_distance: f64,
    /// Both bounds are at most `total/2 + slab_mass`.
    pub bisected: bool,
    /// `nearest_distance ≤ eps`.
    pub touched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridVerifyReport {
    pub measures: Vec<GridVerdict>,
    pub verdict: bool,
}

/// Re-check a cut of rasterized measures at resolution `eps`: bisection up to
/// the slab mass, and a support cell within `eps` of the plane.
pub fn verify_grids(
    grids: &[GridMeasure],
    plane: &Hyperplane<f64>,
    eps: f64,
) -> Result<GridVerifyReport> {
    let mut out = Vec::with_capacity(grids.len());
    for g in grids {
        if g.dim() != plane.dim() {
            return Err(Error::DimensionMismatch {
                expected: plane.dim(),
                found: g.dim(),
            });
        }
        let (mut minus, mut plus, mut slab, mut total) = (0.0, 0.0, 0.0, 0.0);
        let mut nearest = f64::INFINITY;
        for (i, &mass) in g.masses().iter().enumerate() {
            total += mass;
            if mass <= 0.0 {
                continue;
            }
            let (lo, hi) = g.cell_bounds(i);
            let (mut below, mut above, mut on) = (false, false, false);
            let mut corner_min = f64::INFINITY;
            for mask in 0..1usize << g.dim() {
                let corner: Vec<f64> = (0..g.dim())
                    .map(|k| if mask >> k & 1 == 1 { hi[k] } else { lo[k] })
                    .collect();
                let corner = Point::new(corner);
                match side_of(&corner, plane, 0.0)? {
                    Side::Minus => below = true,
                    Side::Plus => above = true,
                    Side::On => on = true,
                }
                corner_min = corner_min.min(distance_point_hyperplane(&corner, plane)?);
            }
            let distance = if on || (below && above) {
                0.0
            } else {
                corner_min
            };
            if below {
                minus += mass;
            }
            if above {
                plus += mass;
            }
            if distance < eps {
                slab += mass;
            }
            nearest = nearest.min(distance);
        }
        let limit = total / 2.0 + slab + 1e-9 * total;
        out.push(GridVerdict {
            name: g.name().to_string(),
            total,
            minus_bound: minus,
            plus_bound: plus,
            slab_mass: slab,
            nearest_distance: nearest,
            bisected: minus <= limit && plus <= limit,
            touched: nearest <= eps,
        });
    }
    let verdict = out.iter().all(|m| m.bisected && m.touched);
    Ok(GridVerifyReport {
        measures: out,
        verdict,
    })
}

/// Denominator of generated coordinates.
pub const COORD_DENOM_BITS: u32 = 16;

const DEDUP_ATTEMPTS: usize = 100;

/// Axis-aligned box with rational corners.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl BoundingBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::InvalidBox(
                "corner dimensions differ or are empty".into(),
            ));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidBox(
                "every lower corner coordinate must be below the upper one".into(),
            ));
        }
        Ok(BoundingBox { lo, hi })
    }

    pub fn unit(dim: usize) -> Self {
        BoundingBox {
            lo: vec![Rational::zero(); dim],
            hi: vec![Rational::from_i64(1); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Lattice index ranges `[ceil(lo·2^16), floor(hi·2^16)]` per axis.
    fn lattice(&self) -> Result<Vec<(i64, i64)>> {
        let scale = Rational::from_integer(BigInt::from(1u64 << COORD_DENOM_BITS));
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| {
                let lo = (a * &scale).ceil().to_integer().to_i64();
                let hi = (b * &scale).floor().to_integer().to_i64();
                match (lo, hi) {
                    (Some(lo), Some(hi)) if lo <= hi => Ok((lo, hi)),
                    _ => Err(Error::InvalidBox(
                        "no representable coordinates inside the box".into(),
                    )),
                }
            })
            .collect()
    }
}

/// Unit-mass measures with `sizes[i]` distinct random lattice points each,
/// drawn uniformly in `bbox` with coordinates on the `2^-16` grid. Points are
/// distinct across all measures. Identical seeds give identical instances.
pub fn gen_instance(
    seed: u64,
    sizes: &[usize],
    names: &[&str],
    bbox: &BoundingBox,
) -> Result<Instance> {
    if sizes.contains(&0) {
        return Err(Error::Empty("generated measure"));
    }
    let lattice = bbox.lattice()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let denom = BigInt::from(1u64 << COORD_DENOM_BITS);
    let mut measures = Vec::with_capacity(sizes.len());
    for (i, &count) in sizes.iter().enumerate() {
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let mut drawn = None;
            for _ in 0..DEDUP_ATTEMPTS {
                let cell: Vec<i64> = lattice
                    .iter()
                    .map(|&(lo, hi)| rng.random_range(lo..=hi))
                    .collect();
                if used.insert(cell.clone()) {
                    drawn = Some(cell);
                    break;
                }
            }
            let cell = drawn
                .ok_or_else(|| Error::InvalidBox("box too small for distinct points".into()))?;
            points.push(Point::new(
                cell.into_iter()
                    .map(|k| Rational::new(BigInt::from(k), denom.clone()))
                    .collect(),
            ));
        }
        let name = names
            .get(i)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("set{i}"));
        measures.push(AtomicMeasure::counting(name, points)?);
    }
    Instance::new(measures)
}

/// Two planar unit-mass sets, "salt" and "pepper".
pub fn gen_saltpepper(
    seed: u64,
    salt: usize,
    pepper: usize,
    bbox: &BoundingBox,
) -> Result<Instance> {
    if salt == 0 || pepper == 0 {
        return Err(Error::Empty("salt or pepper count"));
    }
    if bbox.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: bbox.dim(),
        });
    }
    gen_instance(seed, &[salt, pepper], &["salt", "pepper"], bbox)
}

/// Instance in `[0,1]ⁿ` whose set sizes are drawn from `1..=max_size` by the same seed.
pub fn gen_random_instance(seed: u64, dim: usize, max_size: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_5e75);
    let sizes: Vec<usize> = (0..dim).map(|_| rng.random_range(1..=max_size)).collect();
    gen_instance(seed, &sizes, &[], &BoundingBox::unit(dim))
}

/// Random positive rational masses `p/q` with `1 ≤ p ≤ 40`, `1 ≤ q ≤ 12`.
pub fn gen_masses(seed: u64, len: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let p: i64 = rng.random_range(1..=40);
            let q: i64 = rng.random_range(1..=12);
            Rational::new(p.into(), q.into())
        })
        .filter(|m| m.is_positive())
        .collect()
}
