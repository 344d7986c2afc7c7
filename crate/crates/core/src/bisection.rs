//! Side-mass accounting for atomic measures and the bisect/touch predicates.
//!
//! A hyperplane bisects a measure when each OPEN half-space carries at most half
//! of the total mass; mass lying on the hyperplane counts toward neither side.
//! Finite point sets are measures with unit masses.

use crate::error::{Error, Result};
use crate::geometry::{distance_point_hyperplane, side_of, Hyperplane, Point, Side};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub point: Point<S>,
    pub mass: S,
}

/// A finitely supported positive measure.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<S> {
    name: String,
    atoms: Vec<Atom<S>>,
    total: S,
}

impl<S: Scalar> AtomicMeasure<S> {
    /// Validates: nonempty, positive masses, uniform dimension, pairwise distinct points.
    pub fn new(name: impl Into<String>, atoms: Vec<Atom<S>>) -> Result<Self> {
        let name = name.into();
        let first = atoms.first().ok_or(Error::Empty("atomic measure"))?;
        let dim = first.point.dim();
        if dim == 0 {
            return Err(Error::InvalidMeasure(format!(
                "{name}: zero-dimensional points"
            )));
        }
        for (i, atom) in atoms.iter().enumerate() {
            if atom.point.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: atom.point.dim(),
                });
            }
            if !atom.mass.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "{name}: atom {i} has non-positive mass {}",
                    atom.mass
                )));
            }
        }
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&a, &b| cmp_coords(atoms[a].point.coords(), atoms[b].point.coords()));
        if let Some(w) = order
            .windows(2)
            .find(|w| atoms[w[0]].point == atoms[w[1]].point)
        {
            return Err(Error::InvalidMeasure(format!(
                "{name}: atoms {} and {} coincide",
                w[0], w[1]
            )));
        }
        let total = atoms.iter().fold(S::zero(), |acc, a| acc + a.mass.clone());
        Ok(AtomicMeasure { name, atoms, total })
    }

    /// Unit mass on every point.
    pub fn counting(name: impl Into<String>, points: Vec<Point<S>>) -> Result<Self> {
        Self::new(
            name,
            points
                .into_iter()
                .map(|point| Atom {
                    point,
                    mass: S::one(),
                })
                .collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].point.dim()
    }

    pub fn total(&self) -> &S {
        &self.total
    }

    /// Same measure with masses replaced, keeping order and validation.
    pub fn with_masses(&self, masses: Vec<S>) -> Result<Self> {
        if masses.len() != self.atoms.len() {
            return Err(Error::InvalidMeasure(format!(
                "{}: mass count mismatch",
                self.name
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .zip(masses)
            .map(|(a, mass)| Atom {
                point: a.point.clone(),
                mass,
            })
            .collect();
        Self::new(self.name.clone(), atoms)
    }
}

fn cmp_coords<S: Scalar>(a: &[S], b: &[S]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}

#[derive(Debug, Clone, PartialEq)]
pub struct SideMasses<S> {
    pub minus: S,
    pub on: S,
    pub plus: S,
}

impl<S: Scalar> SideMasses<S> {
    pub fn total(&self) -> S {
        self.minus.clone() + self.on.clone() + self.plus.clone()
    }

    /// Open-half-space median condition against the given total.
    pub fn is_bisection(&self, total: &S) -> bool {
        let half = total.halve();
        self.plus <= half && self.minus <= half
    }
}

/// Masses of atoms classified `Minus`, `On`, `Plus` by [`side_of`].
pub fn side_masses<S: Scalar>(
    measure: &AtomicMeasure<S>,
    plane: &Hyperplane<S>,
    tol: f64,
) -> Result<SideMasses<S>> {
    let mut out = SideMasses {
        minus: S::zero(),
        on: S::zero(),
        plus: S::zero(),
    };
    for atom in measure.atoms() {
        let slot = match side_of(&atom.point, plane, tol)? {
            Side::Minus => &mut out.minus,
            Side::On => &mut out.on,
            Side::Plus => &mut out.plus,
        };
        *slot = slot.clone() + atom.mass.clone();
    }
    Ok(out)
}

/// At most half the mass in each open half-space.
pub fn bisects<S: Scalar>(
    measure: &AtomicMeasure<S>,
    plane: &Hyperplane<S>,
    tol: f64,
) -> Result<bool> {
    Ok(side_masses(measure, plane, tol)?.is_bisection(measure.total()))
}

/// Positive mass on the hyperplane.
pub fn touches<S: Scalar>(
    measure: &AtomicMeasure<S>,
    plane: &Hyperplane<S>,
    tol: f64,
) -> Result<bool> {
    Ok(side_masses(measure, plane, tol)?.on.is_positive())
}

/// Per-measure section of a [`CutReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureCut<S> {
    pub name: String,
    pub total: S,
    pub masses: SideMasses<S>,
    /// Index and location of the first atom lying on the hyperplane.
    pub touch_witness: Option<(usize, Point<S>)>,
    /// Distance from the hyperplane to the nearest atom (or support cell in grid mode).
    pub support_distance: f64,
    pub bisected: bool,
    pub touched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutReport<S> {
    pub hyperplane: Hyperplane<S>,
    pub measures: Vec<MeasureCut<S>>,
    pub all_bisected: bool,
    pub all_touched: bool,
}

impl<S: Scalar> CutReport<S> {
    pub fn from_parts(hyperplane: Hyperplane<S>, measures: Vec<MeasureCut<S>>) -> Self {
        let all_bisected = measures.iter().all(|m| m.bisected);
        let all_touched = measures.iter().all(|m| m.touched);
        CutReport {
            hyperplane,
            measures,
            all_bisected,
            all_touched,
        }
    }

    pub fn passes(&self) -> bool {
        self.all_bisected && self.all_touched
    }
}

pub(crate) fn check_uniform_dim<S: Scalar>(
    measures: &[AtomicMeasure<S>],
    expected: usize,
) -> Result<()> {
    for m in measures {
        if m.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: m.dim(),
            });
        }
    }
    Ok(())
}

/// Per-measure side masses, witnesses and flags for one hyperplane.
pub fn evaluate_cut<S: Scalar>(
    measures: &[AtomicMeasure<S>],
    plane: &Hyperplane<S>,
    tol: f64,
) -> Result<CutReport<S>> {
    if measures.is_empty() {
        return Err(Error::Empty("measure list"));
    }
    check_uniform_dim(measures, plane.dim())?;
    let mut cuts = Vec::with_capacity(measures.len());
    for m in measures {
        let mut masses = SideMasses {
            minus: S::zero(),
            on: S::zero(),
            plus: S::zero(),
        };
        let mut witness = None;
        let mut support_distance = f64::INFINITY;
        for (i, atom) in m.atoms().iter().enumerate() {
            let side = side_of(&atom.point, plane, tol)?;
            let slot = match side {
                Side::Minus => &mut masses.minus,
                Side::On => &mut masses.on,
                Side::Plus => &mut masses.plus,
            };
            *slot = slot.clone() + atom.mass.clone();
            if side == Side::On {
                support_distance = 0.0;
                if witness.is_none() {
                    witness = Some((i, atom.point.clone()));
                }
            } else if support_distance > 0.0 {
                support_distance =
                    support_distance.min(distance_point_hyperplane(&atom.point, plane)?);
            }
        }
        let bisected = masses.is_bisection(m.total());
        let touched = masses.on.is_positive();
        cuts.push(MeasureCut {
            name: m.name().to_string(),
            total: m.total().clone(),
            masses,
            touch_witness: witness,
            support_distance,
            bisected,
            touched,
        });
    }
    Ok(CutReport::from_parts(plane.clone(), cuts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn measure(name: &str, atoms: &[(&[i64], i64)]) -> AtomicMeasure<Rational> {
        AtomicMeasure::new(
            name,
            atoms
                .iter()
                .map(|(p, m)| Atom {
                    point: Point::new(p.iter().map(|&x| q(x)).collect()),
                    mass: q(*m),
                })
                .collect(),
        )
        .unwrap()
    }

    fn plane(u: &[i64], c: i64) -> Hyperplane<Rational> {
        Hyperplane::new(u.iter().map(|&x| q(x)).collect(), q(c)).unwrap()
    }

    fn masses(m: &SideMasses<Rational>) -> (Rational, Rational, Rational) {
        (m.minus.clone(), m.on.clone(), m.plus.clone())
    }

    #[test]
    fn side_masses_examples() {
        let y0 = plane(&[0, 1], 0);
        let x0 = plane(&[1, 0], 0);
        let pair = measure("pair", &[(&[0, 1], 1), (&[0, -1], 1)]);
        assert_eq!(
            masses(&side_masses(&pair, &y0, 0.0).unwrap()),
            (q(1), q(0), q(1))
        );
        let b = measure("B", &[(&[-3, 0], 1), (&[3, 0], 1)]);
        assert_eq!(
            masses(&side_masses(&b, &x0, 0.0).unwrap()),
            (q(1), q(0), q(1))
        );
        let single = measure("s", &[(&[0, 0], 5)]);
        assert_eq!(
            masses(&side_masses(&single, &x0, 0.0).unwrap()),
            (q(0), q(5), q(0))
        );
    }

    #[test]
    fn bisects_examples() {
        let y0 = plane(&[0, 1], 0);
        let tri = measure("t", &[(&[0, 0], 1), (&[2, 0], 1), (&[1, 3], 1)]);
        assert!(bisects(&tri, &y0, 0.0).unwrap());
        let above = measure("a", &[(&[0, 1], 1), (&[0, 2], 1), (&[0, 3], 1)]);
        assert!(!bisects(&above, &y0, 0.0).unwrap());
        let ex10: Vec<(Vec<i64>, i64)> = (1..=5)
            .flat_map(|k| [(vec![k, 1], 1), (vec![k, -1], 1)])
            .collect();
        let ex10: Vec<(&[i64], i64)> = ex10.iter().map(|(p, m)| (p.as_slice(), *m)).collect();
        assert!(bisects(&measure("mu1", &ex10), &y0, 0.0).unwrap());
    }

    #[test]
    fn touches_examples() {
        let x0 = plane(&[1, 0], 0);
        assert!(touches(&measure("o", &[(&[0, 0], 1)]), &x0, 0.0).unwrap());
        assert!(!touches(&measure("p", &[(&[1, 1], 2)]), &x0, 0.0).unwrap());
        let mu2: Vec<(Vec<i64>, i64)> = (1..=5)
            .flat_map(|k| [(vec![-k, 2], 1), (vec![-k, -2], 1)])
            .collect();
        let mu2: Vec<(&[i64], i64)> = mu2.iter().map(|(p, m)| (p.as_slice(), *m)).collect();
        assert!(!touches(&measure("mu2", &mu2), &plane(&[0, 1], 0), 0.0).unwrap());
    }

    fn example9_atoms() -> Vec<AtomicMeasure<Rational>> {
        vec![
            measure(
                "A",
                &[
                    (&[0, 0], 1),
                    (&[-1, 0], 1),
                    (&[1, 0], 1),
                    (&[0, 1], 1),
                    (&[0, -1], 1),
                ],
            ),
            measure(
                "B",
                &[(&[-3, 0], 1), (&[3, 0], 1), (&[-3, 1], 1), (&[3, -1], 1)],
            ),
        ]
    }

    #[test]
    fn evaluate_cut_examples() {
        let fixture = example9_atoms();
        let r = evaluate_cut(&fixture, &plane(&[0, 1], 0), 0.0).unwrap();
        assert!(r.all_bisected && r.all_touched);
        let r = evaluate_cut(&fixture, &plane(&[1, 0], 0), 0.0).unwrap();
        assert!(r.all_bisected);
        assert!(!r.all_touched);
        assert!(r.measures[0].touched && !r.measures[1].touched);
        assert_eq!(r.measures[1].support_distance, 3.0);

        let singles = [measure("a", &[(&[0, 0], 1)]), measure("b", &[(&[1, 0], 1)])];
        let r = evaluate_cut(&singles, &plane(&[0, 1], 0), 0.0).unwrap();
        assert!(r.passes());
        assert_eq!(r.measures[1].touch_witness.as_ref().unwrap().0, 0);
    }

    #[test]
    fn evaluate_cut_errors() {
        assert_eq!(
            evaluate_cut::<Rational>(&[], &plane(&[0, 1], 0), 0.0),
            Err(Error::Empty("measure list"))
        );
        let m = measure("3d", &[(&[0, 0, 0], 1)]);
        assert!(matches!(
            evaluate_cut(&[m], &plane(&[0, 1], 0), 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::<Rational>::new("e", vec![]).is_err());
        let dup = [(&[1i64, 1][..], 1), (&[1, 1][..], 2)];
        let atoms = dup
            .iter()
            .map(|(p, m)| Atom {
                point: Point::new(p.iter().map(|&x| q(x)).collect()),
                mass: q(*m),
            })
            .collect();
        assert!(matches!(
            AtomicMeasure::new("d", atoms),
            Err(Error::InvalidMeasure(_))
        ));
        let zero = vec![Atom {
            point: Point::new(vec![q(0)]),
            mass: q(0),
        }];
        assert!(matches!(
            AtomicMeasure::new("z", zero),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn float_mass_conservation() {
        let m = AtomicMeasure::new(
            "f",
            (0..50)
                .map(|i| Atom {
                    point: Point::new(vec![i as f64 * 0.1, (i * i) as f64 * 0.01]),
                    mass: 0.1 + i as f64 * 0.013,
                })
                .collect(),
        )
        .unwrap();
        let h = Hyperplane::new(vec![0.3, -1.0], 0.2).unwrap();
        let s = side_masses(&m, &h, 1e-9).unwrap();
        assert!((s.total() - m.total()).abs() <= 1e-12 * m.total());
    }
}
