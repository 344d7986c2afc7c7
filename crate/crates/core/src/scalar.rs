//! Numeric modes. Exact mode runs on `BigRational`, approximate mode on `f64`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::Side;

pub type Rational = BigRational;

/// Scalar field shared by points, hyperplanes and masses.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Signed + Send + Sync + 'static {
    const EXACT: bool;

    /// Normal-form representative of the hyperplane `(normal, offset)`.
    /// `normal` must be nonzero.
    fn canonical_plane(normal: Vec<Self>, offset: Self) -> (Vec<Self>, Self);

    /// Classify a signed plane residual `value` against `tol * |normal|`.
    fn classify(value: &Self, normal: &[Self], tol: f64) -> Result<Side>;

    /// True when a pivot candidate should be treated as zero during elimination.
    fn is_negligible(&self, scale: f64) -> bool;

    fn to_f64(&self) -> f64;

    /// Exact for `Rational`: every finite double is a dyadic rational.
    fn from_f64(value: f64) -> Self;

    fn from_i64(value: i64) -> Self;

    fn halve(&self) -> Self;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn canonical_plane(normal: Vec<Self>, offset: Self) -> (Vec<Self>, Self) {
        // Clear denominators of the normal, then strip the common factor.
        let lcm = normal
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = normal
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let mut gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            gcd = -gcd;
        }
        let factor = BigRational::new(lcm, gcd.clone());
        let normal = ints
            .into_iter()
            .map(|x| BigRational::from_integer(x / &gcd))
            .collect();
        (normal, offset * factor)
    }

    fn classify(value: &Self, _normal: &[Self], tol: f64) -> Result<Side> {
        if tol != 0.0 {
            return Err(Error::NonzeroExactTolerance(tol));
        }
        Ok(if value.is_positive() {
            Side::Plus
        } else if value.is_negative() {
            Side::Minus
        } else {
            Side::On
        })
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(value: f64) -> Self {
        BigRational::from_float(value).expect("finite value")
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn halve(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn canonical_plane(normal: Vec<Self>, offset: Self) -> (Vec<Self>, Self) {
        let norm = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut normal: Vec<f64> = normal.into_iter().map(|x| x / norm).collect();
        let mut offset = offset / norm;
        let flip = if offset != 0.0 {
            offset < 0.0
        } else {
            normal.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0)
        };
        if flip {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        // No signed zeros in canonical output.
        normal
            .iter_mut()
            .filter(|x| **x == 0.0)
            .for_each(|x| *x = 0.0);
        if offset == 0.0 {
            offset = 0.0;
        }
        (normal, offset)
    }

    fn classify(value: &Self, normal: &[Self], tol: f64) -> Result<Side> {
        let bound = tol * normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok(if *value > bound {
            Side::Plus
        } else if *value < -bound {
            Side::Minus
        } else {
            Side::On
        })
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.max(1.0)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(value: f64) -> Self {
        value
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn halve(&self) -> Self {
        self * 0.5
    }
}

/// Parse `p/q`, an integer, or a plain decimal literal into an exact rational.
/// Decimals convert digit by digit, so `0.1` becomes `1/10`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Some(if negative { -value } else { value })
}

/// Render a rational as `p` or `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals_literally() {
        assert_eq!(parse_rational("3/4"), Some(q(3, 4)));
        assert_eq!(parse_rational("-6/8"), Some(q(-3, 4)));
        assert_eq!(parse_rational("0.1"), Some(q(1, 10)));
        assert_eq!(parse_rational("-2.50"), Some(q(-5, 2)));
        assert_eq!(parse_rational("1e-3"), Some(q(1, 1000)));
        assert_eq!(parse_rational("12"), Some(q(12, 1)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn exact_canonical_plane_clears_denominators() {
        let (n, c) = Rational::canonical_plane(vec![q(-1, 2), q(1, 3)], q(1, 1));
        assert_eq!(n, vec![q(3, 1), q(-2, 1)]);
        assert_eq!(c, q(-6, 1));
    }

    #[test]
    fn float_canonical_plane_prefers_positive_offset() {
        let (n, c) = f64::canonical_plane(vec![0.0, -2.0], -4.0);
        assert_eq!(n, vec![0.0, 1.0]);
        assert_eq!(c, 2.0);
        let (n, c) = f64::canonical_plane(vec![-3.0, 0.0], 0.0);
        assert_eq!(n, vec![1.0, 0.0]);
        assert_eq!(c, 0.0);
    }

    #[test]
    fn format_round_trips() {
        for v in [q(7, 3), q(-1, 2), q(5, 1), q(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&v)), Some(v));
        }
    }
}
