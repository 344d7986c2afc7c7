//! Points, hyperplanes and the predicates built on them.
//!
//! A hyperplane is stored as `(normal, offset)` with `x ∈ H ⇔ ⟨normal, x⟩ = offset`.
//! Every constructor returns the canonical representative, so structural
//! equality is geometric equality:
//!
//! * exact mode: integer normal with unit content, first nonzero component positive;
//! * approximate mode: unit normal, positive offset (or zero offset and first
//!   nonzero component positive).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    On,
    Plus,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::On => Side::On,
            Side::Plus => Side::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.coords.iter().map(Scalar::to_f64).collect())
    }

    pub fn sub(&self, other: &Point<S>) -> Vec<S> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect()
    }
}

impl Point<f64> {
    pub fn to_exact(&self) -> Point<crate::scalar::Rational> {
        Point::new(
            self.coords
                .iter()
                .map(|x| crate::scalar::Rational::from_f64(*x))
                .collect(),
        )
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane<S> {
    normal: Vec<S>,
    offset: S,
}

impl<S: Scalar> Hyperplane<S> {
    /// Build and canonicalize `{x : ⟨normal, x⟩ = offset}`.
    pub fn new(normal: Vec<S>, offset: S) -> Result<Self> {
        if normal.is_empty() {
            return Err(Error::Empty("hyperplane normal"));
        }
        if normal.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroNormal);
        }
        let (normal, offset) = S::canonical_plane(normal, offset);
        Ok(Hyperplane { normal, offset })
    }

    /// Canonical hyperplane with the given normal through `point`.
    pub fn through_point(normal: Vec<S>, point: &Point<S>) -> Result<Self> {
        check_dim(normal.len(), point.dim())?;
        let offset = dot(&normal, point.coords());
        Self::new(normal, offset)
    }

    pub fn normal(&self) -> &[S] {
        &self.normal
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `⟨normal, p⟩ − offset`.
    pub fn residual(&self, p: &Point<S>) -> Result<S> {
        check_dim(self.dim(), p.dim())?;
        Ok(dot(&self.normal, p.coords()) - self.offset.clone())
    }

    pub fn to_f64(&self) -> Hyperplane<f64> {
        let normal = self.normal.iter().map(Scalar::to_f64).collect();
        Hyperplane::new(normal, self.offset.to_f64()).expect("nonzero normal stays nonzero")
    }
}

impl Hyperplane<f64> {
    /// Exact representative of a float hyperplane (normal components are taken literally).
    pub fn to_exact(&self) -> Hyperplane<crate::scalar::Rational> {
        use crate::scalar::Rational;
        let normal = self.normal.iter().map(|x| Rational::from_f64(*x)).collect();
        Hyperplane::new(normal, Rational::from_f64(self.offset)).expect("nonzero normal")
    }
}

impl<S: Scalar> fmt::Display for Hyperplane<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u=")?;
        for (i, c) in self.normal.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ";c={}", self.offset)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Canonical representative of `(normal, offset)`; identical for `(u, c)` and `(−u, −c)`.
pub fn canonicalize<S: Scalar>(normal: Vec<S>, offset: S) -> Result<Hyperplane<S>> {
    Hyperplane::new(normal, offset)
}

/// Side of `p` relative to `plane`, with `On` covering residuals within `tol·|u|`.
/// Exact mode rejects any nonzero tolerance.
pub fn side_of<S: Scalar>(p: &Point<S>, plane: &Hyperplane<S>, tol: f64) -> Result<Side> {
    let value = plane.residual(p)?;
    S::classify(&value, plane.normal(), tol)
}

/// Euclidean distance from `p` to `plane`. The residual is computed in `S` and
/// only the final division by `|u|` happens in floating point.
pub fn distance_point_hyperplane<S: Scalar>(p: &Point<S>, plane: &Hyperplane<S>) -> Result<f64> {
    let value = plane.residual(p)?;
    if value.is_zero() {
        return Ok(0.0);
    }
    let norm = plane
        .normal()
        .iter()
        .map(|x| x.to_f64().powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(value.to_f64().abs() / norm)
}

/// Result of fitting a hyperplane through a point tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Span<S> {
    /// The tuple spans an (n−1)-flat; this is its unique hyperplane.
    Plane(Hyperplane<S>),
    /// The affine hull has the given dimension `< n−1`.
    Deficient(usize),
}

/// Row-reduced difference matrix of a point tuple.
#[derive(Debug, Clone)]
pub(crate) struct Reduced<S> {
    /// Reduced rows, one per pivot.
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
    dim: usize,
}

impl<S: Scalar> Reduced<S> {
    /// Reduced row echelon form of the given row vectors.
    pub(crate) fn from_rows(mut rows: Vec<Vec<S>>, dim: usize) -> Self {
        let scale = rows
            .iter()
            .flat_map(|r| r.iter().map(|x| x.to_f64().abs()))
            .fold(0.0, f64::max);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..dim {
            if rank == rows.len() {
                break;
            }
            // Largest magnitude pivot keeps the float path stable; exact mode just needs nonzero.
            let pick = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_negligible(scale))
                .max_by(|&a, &b| {
                    let (x, y) = (rows[a][col].abs(), rows[b][col].abs());
                    x.partial_cmp(&y)
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(b.cmp(&a))
                });
            let Some(pick) = pick else { continue };
            rows.swap(rank, pick);
            let inv = S::one() / rows[rank][col].clone();
            for x in rows[rank].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for r in 0..rows.len() {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in 0..dim {
                    let delta = factor.clone() * rows[rank][c].clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
                rows[r][col] = S::zero();
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Reduced { rows, pivots, dim }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the orthogonal complement of the row space, one vector per free column.
    pub(crate) fn null_space(&self) -> Vec<Vec<S>> {
        (0..self.dim)
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut v = vec![S::zero(); self.dim];
                v[free] = S::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

/// Difference vectors `p_i − p_0` of a tuple, after validating dimensions.
pub(crate) fn reduce_tuple<S: Scalar>(points: &[&Point<S>]) -> Result<Reduced<S>> {
    let first = points.first().ok_or(Error::Empty("point tuple"))?;
    let n = first.dim();
    for p in points {
        check_dim(n, p.dim())?;
    }
    let rows = points[1..].iter().map(|p| p.sub(first)).collect();
    Ok(Reduced::from_rows(rows, n))
}

/// The hyperplane spanned by `1 ≤ k ≤ n` points, or the hull dimension when
/// they do not determine a unique hyperplane.
pub fn hyperplane_through<S: Scalar>(points: &[Point<S>]) -> Result<Span<S>> {
    let refs: Vec<&Point<S>> = points.iter().collect();
    hyperplane_through_refs(&refs)
}

pub(crate) fn hyperplane_through_refs<S: Scalar>(points: &[&Point<S>]) -> Result<Span<S>> {
    let first = points.first().ok_or(Error::Empty("point tuple"))?;
    let n = first.dim();
    if points.len() > n {
        return Err(Error::TooManyPoints {
            given: points.len(),
            max: n,
        });
    }
    let reduced = reduce_tuple(points)?;
    let rank = reduced.rank();
    if rank + 1 < n {
        return Ok(Span::Deficient(rank));
    }
    let normal = reduced.null_space().swap_remove(0);
    Ok(Span::Plane(Hyperplane::through_point(normal, first)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn qp(c: &[i64]) -> Point<Rational> {
        Point::new(c.iter().map(|&x| q(x)).collect())
    }

    fn qh(u: &[i64], c: i64) -> Hyperplane<Rational> {
        Hyperplane::new(u.iter().map(|&x| q(x)).collect(), q(c)).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let h = canonicalize(vec![q(0), q(-2)], q(-4)).unwrap();
        assert_eq!((h.normal(), h.offset()), (&[q(0), q(1)][..], &q(2)));
        let h = canonicalize(vec![q(3), q(0)], q(0)).unwrap();
        assert_eq!((h.normal(), h.offset()), (&[q(1), q(0)][..], &q(0)));
        let h = canonicalize(vec![q(-1), q(0), q(0)], q(5)).unwrap();
        assert_eq!((h.normal(), h.offset()), (&[q(1), q(0), q(0)][..], &q(-5)));

        let f = canonicalize(vec![0.0, -2.0], -4.0).unwrap();
        assert_eq!((f.normal(), *f.offset()), (&[0.0, 1.0][..], 2.0));
    }

    #[test]
    fn canonicalize_rejects_zero_normal() {
        assert_eq!(canonicalize(vec![q(0), q(0)], q(1)), Err(Error::ZeroNormal));
        assert_eq!(canonicalize(vec![0.0, 0.0], 0.0), Err(Error::ZeroNormal));
    }

    #[test]
    fn side_of_examples() {
        let x0 = qh(&[1, 0], 0);
        assert_eq!(side_of(&qp(&[3, 0]), &x0, 0.0).unwrap(), Side::Plus);
        assert_eq!(side_of(&qp(&[0, 5]), &x0, 0.0).unwrap(), Side::On);
        assert_eq!(
            side_of(&qp(&[1, 1]), &qh(&[1, 1], 3), 0.0).unwrap(),
            Side::Minus
        );
    }

    #[test]
    fn side_of_errors() {
        let x0 = qh(&[1, 0], 0);
        assert!(matches!(
            side_of(&qp(&[1, 2, 3]), &x0, 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            side_of(&qp(&[1, 2]), &x0, 1e-9),
            Err(Error::NonzeroExactTolerance(1e-9))
        );
    }

    #[test]
    fn side_of_float_tolerance() {
        let h = Hyperplane::new(vec![0.0, 2.0], 0.0).unwrap();
        let p = Point::new(vec![7.0, 1e-10]);
        assert_eq!(side_of(&p, &h, 1e-9).unwrap(), Side::On);
        assert_eq!(side_of(&p, &h, 0.0).unwrap(), Side::Plus);
    }

    #[test]
    fn hyperplane_through_examples() {
        assert_eq!(
            hyperplane_through(&[qp(&[0, 0]), qp(&[1, 0])]).unwrap(),
            Span::Plane(qh(&[0, 1], 0))
        );
        assert_eq!(
            hyperplane_through(&[qp(&[0, 0, 0]), qp(&[1, 0, 0]), qp(&[2, 0, 0])]).unwrap(),
            Span::Deficient(1)
        );
        assert_eq!(
            hyperplane_through(&[qp(&[1, 0]), qp(&[0, 1])]).unwrap(),
            Span::Plane(qh(&[1, 1], 1))
        );
        assert_eq!(
            hyperplane_through(&[qp(&[2, 2]), qp(&[2, 2])]).unwrap(),
            Span::Deficient(0)
        );
    }

    #[test]
    fn hyperplane_through_errors() {
        assert_eq!(
            hyperplane_through::<Rational>(&[]),
            Err(Error::Empty("point tuple"))
        );
        assert_eq!(
            hyperplane_through(&[qp(&[0, 0]), qp(&[1, 0]), qp(&[0, 1])]),
            Err(Error::TooManyPoints { given: 3, max: 2 })
        );
    }

    #[test]
    fn hyperplane_through_float() {
        let pts = [
            Point::new(vec![0.0, 0.0, 1.0]),
            Point::new(vec![1.0, 0.0, 1.0]),
            Point::new(vec![0.0, 1.0, 1.0]),
        ];
        let Span::Plane(h) = hyperplane_through(&pts).unwrap() else {
            panic!("expected plane")
        };
        assert_eq!(h.normal(), &[0.0, 0.0, 1.0]);
        assert_eq!(*h.offset(), 1.0);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(
            distance_point_hyperplane(&qp(&[0, 3]), &qh(&[0, 1], 0)).unwrap(),
            3.0
        );
        assert_eq!(
            distance_point_hyperplane(&qp(&[5, 0]), &qh(&[1, 0], 5)).unwrap(),
            0.0
        );
        let d = distance_point_hyperplane(&qp(&[1, 1]), &qh(&[1, 1], 0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }
}
