//! Directed-rounding interval arithmetic over arbitrary-precision rationals.
//!
//! Endpoints are kept as exact rationals and coarsened outward onto dyadic
//! grids, so every interval produced here is a true enclosure of the real
//! number it stands for. Refinement of the same expression at a higher
//! precision always yields a sub-interval of the lower-precision one.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Precision and enumeration budgets threaded through certified operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resources {
    /// Working precision in bits for interval evaluations.
    pub precision_bits: u32,
    /// Hard ceiling for refinement loops; beyond this, queries return
    /// `Undecided` rather than continuing.
    pub max_precision_bits: u32,
    /// Maximum number of lattice points enumerated by geometric realizations.
    pub enum_budget: u64,
}

impl Default for Resources {
    fn default() -> Self {
        Resources {
            precision_bits: 128,
            max_precision_bits: 1024,
            enum_budget: 4_000_000,
        }
    }
}

impl Resources {
    pub fn with_precision(bits: u32) -> Self {
        Resources {
            precision_bits: bits,
            ..Resources::default()
        }
    }
}

/// Outcome of a certified comparison of two (refinable) reals.
///
/// `Undecided` means the two enclosures could not be separated at the
/// precision ceiling; it is deliberately not an error, and it is the only
/// possible answer when both arguments denote the same real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    Undecided,
}

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// `precision_bits` records the dyadic grid the endpoints were last rounded
/// onto; arithmetic keeps the minimum of the operands' precisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigInterval {
    lo: BigRational,
    hi: BigRational,
    precision_bits: u32,
}

/// `floor(x * 2^bits) / 2^bits`, computed gcd-free on the integer parts.
pub(crate) fn round_down(x: &BigRational, bits: u32) -> BigRational {
    use num_integer::Integer;
    let q = (x.numer() << bits).div_floor(x.denom());
    BigRational::new_raw(q, BigInt::one() << bits)
}

/// `ceil(x * 2^bits) / 2^bits`, computed gcd-free on the integer parts.
pub(crate) fn round_up(x: &BigRational, bits: u32) -> BigRational {
    use num_integer::Integer;
    let q = (x.numer() << bits).div_ceil(x.denom());
    BigRational::new_raw(q, BigInt::one() << bits)
}

impl BigInterval {
    /// Builds an interval from exact endpoints. Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational, precision_bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        BigInterval {
            lo,
            hi,
            precision_bits,
        }
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: BigRational, precision_bits: u32) -> Self {
        BigInterval {
            lo: x.clone(),
            hi: x,
            precision_bits,
        }
    }

    pub fn zero(precision_bits: u32) -> Self {
        Self::point(BigRational::zero(), precision_bits)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &BigInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Rounds both endpoints outward onto the dyadic grid `2^-bits`.
    pub fn coarsen(&self, bits: u32) -> BigInterval {
        BigInterval {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
            precision_bits: bits,
        }
    }

    pub fn neg(&self) -> BigInterval {
        BigInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
            precision_bits: self.precision_bits,
        }
    }

    pub fn add(&self, other: &BigInterval) -> BigInterval {
        BigInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            precision_bits: self.precision_bits.min(other.precision_bits),
        }
    }

    pub fn sub(&self, other: &BigInterval) -> BigInterval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigInterval) -> BigInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        BigInterval {
            lo,
            hi,
            precision_bits: self.precision_bits.min(other.precision_bits),
        }
    }

    /// Multiplies by an exact rational.
    pub fn scale(&self, c: &BigRational) -> BigInterval {
        if c.is_negative() {
            BigInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
                precision_bits: self.precision_bits,
            }
        } else {
            BigInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
                precision_bits: self.precision_bits,
            }
        }
    }

    /// Adds an exact rational shift.
    pub fn shift(&self, c: &BigRational) -> BigInterval {
        BigInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
            precision_bits: self.precision_bits,
        }
    }

    /// Interval division; the divisor must not straddle zero.
    pub fn div(&self, other: &BigInterval) -> Result<BigInterval, crate::Error> {
        if other.contains_zero() {
            return Err(crate::Error::DivisorStraddlesZero);
        }
        let inv_lo = BigRational::one() / other.hi.clone();
        let inv_hi = BigRational::one() / other.lo.clone();
        Ok(self.mul(&BigInterval {
            lo: inv_lo,
            hi: inv_hi,
            precision_bits: other.precision_bits,
        }))
    }

    pub fn intersect(&self, other: &BigInterval) -> Option<BigInterval> {
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi <= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        if lo <= hi {
            Some(BigInterval {
                lo,
                hi,
                precision_bits: self.precision_bits.max(other.precision_bits),
            })
        } else {
            None
        }
    }

    /// Strict comparison of disjoint intervals; `None` when they overlap.
    pub fn cmp_disjoint(&self, other: &BigInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified sign: `Some(Greater)` if `lo > 0`, `Some(Less)` if `hi < 0`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// `log2` of the width, rounded up; `None` for exact intervals.
    pub fn width_log2(&self) -> Option<i64> {
        let w = self.width();
        if w.is_zero() {
            return None;
        }
        let num_bits = w.numer().bits() as i64;
        let den_bits = w.denom().bits() as i64;
        Some(num_bits - den_bits + 1)
    }
}

impl fmt::Display for BigInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Exact decimal rendering of a rational, truncated toward minus infinity,
/// with `digits` fractional digits. Used for report output.
pub fn decimal_of_rational(x: &BigRational, digits: u32) -> alloc::string::String {
    use alloc::string::ToString;
    let pow = BigInt::from(10u32).pow(digits);
    let scaled = (x * BigRational::from_integer(pow.clone())).floor().to_integer();
    let negative = scaled.is_negative();
    let mut abs = scaled.magnitude().clone();
    let pow_mag = pow.magnitude();
    let frac = &abs % pow_mag;
    abs /= pow_mag;
    let mut frac_digits = frac.to_string();
    while (frac_digits.len() as u32) < digits {
        frac_digits.insert(0, '0');
    }
    let mut out = alloc::string::String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&abs.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&frac_digits);
    }
    out
}

/// Convenience: the rational `p / 2^bits` grid value of an integer `p`.
pub fn dyadic(p: impl Into<BigInt>, bits: u32) -> BigRational {
    BigRational::new(p.into(), BigInt::one() << bits)
}

/// Shorthand for building a `BigRational` from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A vector of intervals; used by batched certificates.
pub type IntervalVec = Vec<BigInterval>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_brackets_value() {
        let x = ratio(1, 3);
        let lo = round_down(&x, 16);
        let hi = round_up(&x, 16);
        assert!(lo < x && x < hi);
        assert_eq!(&hi - &lo, dyadic(1, 16));
    }

    #[test]
    fn coarsen_nests() {
        let iv = BigInterval::new(ratio(1, 3), ratio(2, 3), 128);
        let coarse = iv.coarsen(8);
        let fine = iv.coarsen(64);
        assert!(coarse.contains_interval(&fine));
        assert!(fine.contains_interval(&iv));
    }

    #[test]
    fn mul_signs() {
        let a = BigInterval::new(ratio(-2, 1), ratio(3, 1), 64);
        let b = BigInterval::new(ratio(-1, 1), ratio(5, 1), 64);
        let p = a.mul(&b);
        assert_eq!(p.lo(), &ratio(-10, 1));
        assert_eq!(p.hi(), &ratio(15, 1));
    }

    #[test]
    fn division_rejects_zero_straddle() {
        let a = BigInterval::new(ratio(1, 1), ratio(2, 1), 64);
        let b = BigInterval::new(ratio(-1, 1), ratio(1, 1), 64);
        assert_eq!(a.div(&b), Err(crate::Error::DivisorStraddlesZero));
        let c = BigInterval::new(ratio(1, 2), ratio(1, 1), 64);
        let q = a.div(&c).unwrap();
        assert!(q.contains(&ratio(2, 1)));
    }

    #[test]
    fn decimal_rendering_truncates() {
        assert_eq!(decimal_of_rational(&ratio(1, 3), 5), "0.33333");
        assert_eq!(decimal_of_rational(&ratio(-1, 3), 5), "-0.33334");
        assert_eq!(decimal_of_rational(&ratio(5, 4), 3), "1.250");
    }
}
