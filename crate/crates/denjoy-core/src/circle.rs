//! Points and arcs on the circle `R/Z`.

use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::real::Real;

/// A point of the circle, represented by its unique representative in
/// `[0, 1)`. For enclosure-valued reals the representative satisfies
/// `0 <= lo < 1`; the upper endpoint may spill slightly past 1 when the
/// value sits next to the wrap-around.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePoint {
    value: Real,
}

/// Reduces a real modulo 1 onto `[0, 1)`.
///
/// Exact for exact inputs. Enclosure inputs whose floor is ambiguous are
/// rejected (the point cannot be separated from the wrap-around).
pub fn normalize(x: &Real) -> Result<CirclePoint, Error> {
    let f = x.try_frac().ok_or(Error::PrecisionCeiling {
        bits: x.eval(64).precision_bits(),
    })?;
    Ok(CirclePoint { value: f })
}

impl CirclePoint {
    pub fn zero() -> Self {
        CirclePoint { value: Real::zero() }
    }

    /// Wraps a real that already lies in `[0, 1)`. Exact inputs are
    /// normalized; enclosure inputs are taken as-is (their intervals are
    /// assumed to sit inside the fundamental domain).
    pub fn try_from_real(value: Real) -> Result<CirclePoint, Error> {
        if value.is_exact() {
            return normalize(&value);
        }
        Ok(CirclePoint { value })
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        normalize(&Real::ratio(num, den)).expect("rational input")
    }

    /// The representative in `[0, 1)`.
    pub fn value(&self) -> &Real {
        &self.value
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_exact()
    }

    /// Rotation by `delta` (mod 1).
    pub fn rotate(&self, delta: &Real) -> Result<CirclePoint, Error> {
        normalize(&self.value.add(delta))
    }

    /// Oriented distance from `self` forward to `other`, in `[0, 1)`.
    pub fn distance_to(&self, other: &CirclePoint) -> Result<Real, Error> {
        if self.value == other.value {
            return Ok(Real::zero());
        }
        let diff = other.value.sub(&self.value);
        diff.try_frac().ok_or(Error::PrecisionCeiling {
            bits: diff.eval(64).precision_bits(),
        })
    }

    /// Total order of exact representatives; `None` for undecidable
    /// enclosures.
    pub fn try_cmp(&self, other: &CirclePoint) -> Option<Ordering> {
        if self.value == other.value {
            return Some(Ordering::Equal);
        }
        self.value.try_cmp(&other.value)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A positively oriented arc from `start` to `end`.
///
/// The default closure convention is half-open `(start, end]`, the shape in
/// which arcs of the form `(x, gx]` arise. `start == end` denotes the empty
/// arc unless `full` is set, in which case the arc is the whole circle.
#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    pub start: CirclePoint,
    pub end: CirclePoint,
    pub left_open: bool,
    pub right_closed: bool,
    full: bool,
}

impl Arc {
    /// The half-open arc `(start, end]`.
    pub fn half_open(start: CirclePoint, end: CirclePoint) -> Self {
        Arc {
            start,
            end,
            left_open: true,
            right_closed: true,
            full: false,
        }
    }

    pub fn with_flags(
        start: CirclePoint,
        end: CirclePoint,
        left_open: bool,
        right_closed: bool,
    ) -> Self {
        Arc {
            start,
            end,
            left_open,
            right_closed,
            full: false,
        }
    }

    /// The whole circle.
    pub fn full_circle() -> Self {
        Arc {
            start: CirclePoint::zero(),
            end: CirclePoint::zero(),
            left_open: true,
            right_closed: true,
            full: true,
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }
}

/// Oriented length `end - start` (mod 1); exact for exact endpoints, `1` for
/// the full circle and `0` for the empty arc.
pub fn arc_length(a: &Arc) -> Result<Real, Error> {
    if a.full {
        return Ok(Real::one());
    }
    a.start.distance_to(&a.end)
}

/// Whether three exact points appear in this circular (counterclockwise)
/// order, strictly.
pub fn in_circular_order(a: &CirclePoint, b: &CirclePoint, c: &CirclePoint) -> Option<bool> {
    let ab = a.distance_to(b).ok()?;
    let ac = a.distance_to(c).ok()?;
    if ab.is_zero_exact() || ac.is_zero_exact() {
        return Some(false);
    }
    match ab.try_cmp(&ac)? {
        Ordering::Less => Some(true),
        _ => Some(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ratio;

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize(&Real::ratio(5, 4)).unwrap(),
            CirclePoint::from_ratio(1, 4)
        );
        assert_eq!(
            normalize(&Real::ratio(-1, 10)).unwrap(),
            CirclePoint::from_ratio(9, 10)
        );
        assert_eq!(normalize(&Real::from_integer(3)).unwrap(), CirclePoint::zero());
    }

    #[test]
    fn normalize_is_periodic() {
        let x = Real::sqrt_of(2).scale(&ratio(3, 7));
        let a = normalize(&x).unwrap();
        for n in [-5i64, -1, 1, 12] {
            let b = normalize(&x.add(&Real::from_integer(n))).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn arc_lengths() {
        let a = Arc::half_open(CirclePoint::from_ratio(1, 5), CirclePoint::from_ratio(7, 10));
        assert_eq!(arc_length(&a).unwrap(), Real::ratio(1, 2));
        // Wrapping arc.
        let b = Arc::half_open(CirclePoint::from_ratio(9, 10), CirclePoint::from_ratio(1, 10));
        assert_eq!(arc_length(&b).unwrap(), Real::ratio(1, 5));
        // Empty arc.
        let c = Arc::half_open(CirclePoint::from_ratio(1, 3), CirclePoint::from_ratio(1, 3));
        assert!(arc_length(&c).unwrap().is_zero_exact());
        assert_eq!(arc_length(&Arc::full_circle()).unwrap(), Real::one());
    }

    #[test]
    fn complementary_arcs_sum_to_one() {
        let p = normalize(&Real::sqrt_of(2)).unwrap();
        let q = CirclePoint::from_ratio(1, 3);
        let ab = arc_length(&Arc::half_open(p.clone(), q.clone())).unwrap();
        let ba = arc_length(&Arc::half_open(q, p)).unwrap();
        assert_eq!(ab.add(&ba), Real::one());
    }
}
