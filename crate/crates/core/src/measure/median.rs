//! Weighted median intervals along a direction.

use crate::bisection::AtomicMeasure;
use crate::error::{Error, Result};
use crate::geometry::dot;
use crate::scalar::Scalar;

/// Closed interval `[lo, hi]` of offsets `c` for which `(u, c)` bisects the
/// measure. Offsets are in the scale of `u`; for a unit `u` they are signed
/// distances along `u`. The endpoints are atom projections `⟨u, p⟩`.
pub fn median_offset_interval<S: Scalar>(measure: &AtomicMeasure<S>, u: &[S]) -> Result<(S, S)> {
    if u.len() != measure.dim() {
        return Err(Error::DimensionMismatch {
            expected: measure.dim(),
            found: u.len(),
        });
    }
    if u.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroDirection);
    }
    let mut pairs: Vec<(S, S)> = measure
        .atoms()
        .iter()
        .map(|a| (dot(u, a.point.coords()), a.mass.clone()))
        .collect();
    Ok(weighted_median_interval(&mut pairs, measure.total()))
}

/// `pairs` holds `(position, mass)`; it is sorted in place.
///
/// `hi` is the smallest position whose cumulative mass from below exceeds
/// half the total, `lo` the largest whose cumulative mass from above does.
pub(crate) fn weighted_median_interval<S: Scalar>(pairs: &mut [(S, S)], total: &S) -> (S, S) {
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let half = total.halve();

    let mut acc = S::zero();
    let mut hi = pairs[pairs.len() - 1].0.clone();
    for (i, (t, m)) in pairs.iter().enumerate() {
        acc = acc + m.clone();
        let group_ends = pairs.get(i + 1).is_none_or(|next| next.0 != *t);
        if group_ends && acc > half {
            hi = t.clone();
            break;
        }
    }

    let mut acc = S::zero();
    let mut lo = pairs[0].0.clone();
    for (i, (t, m)) in pairs.iter().enumerate().rev() {
        acc = acc + m.clone();
        let group_ends = i == 0 || pairs[i - 1].0 != *t;
        if group_ends && acc > half {
            lo = t.clone();
            break;
        }
    }
    (lo, hi)
}
