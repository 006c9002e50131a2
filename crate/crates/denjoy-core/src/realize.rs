//! Geometric realization of a blown-up action on the standard circle.
//!
//! The symbolic circle is laid out geometrically by placing, at each orbit
//! code `y`, a gap of the prescribed length, and rescaling total mass to 1:
//!
//! `psi(p) = ( y(p) + sum_{codes < y(p)} l_g + t * l_{gap(p)} ) / (1 + L)`.
//!
//! The sum over codes below `y(p)` is infinite; it is enclosed by
//! enumerating lattice shells until the closed-form tail of the length
//! family is below the target resolution. A `GapTable` holds one such
//! enumeration (sorted by circle position, with exact prefix sums) so that
//! many evaluations and inversions can share it.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::action::{CantorSide, DenjoyAction, DenjoyPoint, GapLabel};
use crate::circle::CirclePoint;
use crate::error::Error;
use crate::interval::BigInterval;
use crate::lattice;
use crate::real::Real;

struct TableEntry {
    label: GapLabel,
    /// Exact collapsed code in `[0, 1)`.
    code: Real,
    /// Cached enclosure of `code`, used as a sort/search key.
    key: BigInterval,
    length: BigRational,
    /// Total length of enumerated gaps strictly below this one.
    prefix: BigRational,
}

/// A sorted enumeration of the gaps of a Denjoy action, sufficient to
/// evaluate the realization map to `resolution_bits` of certified width.
pub struct GapTable {
    entries: Vec<TableEntry>,
    /// Exact total mass of all gaps that were not enumerated.
    tail: BigRational,
    /// `1 + L`, the exact total circumference before rescaling.
    denom: BigRational,
    resolution_bits: u32,
    shells: u64,
}

impl GapTable {
    /// Enumerates enough shells that the unenumerated gap mass is below
    /// `2^-(bits+2) * (1 + L)`, so realized widths stay below `2^-bits`.
    pub fn build(action: &DenjoyAction, bits: u32, enum_budget: u64) -> Result<Self, Error> {
        if !action.is_denjoy() {
            return Err(Error::DenjoyActionRequired);
        }
        let d = action.dim();
        let total: BigRational = action
            .blowups()
            .iter()
            .map(|b| b.family.total_mass(d))
            .sum();
        let denom = BigRational::one() + &total;
        let target = {
            let grid = BigRational::new(BigInt::one(), BigInt::one() << (bits + 2));
            grid * &denom
        };
        let mut remaining = total.clone();
        let mut entries: Vec<TableEntry> = Vec::new();
        let key_bits = bits + 16;
        let mut shells = 0u64;
        let mut count = 0u64;
        while remaining > target {
            let shell_points = lattice::shell(d, shells);
            count += shell_points.len() as u64 * action.blowups().len() as u64;
            if count > enum_budget {
                let achieved = (&remaining / &denom).to_f64_log2();
                return Err(Error::BudgetExceeded {
                    achieved_width_log2: achieved,
                });
            }
            for g in &shell_points {
                for orbit in 0..action.blowups().len() {
                    let label = GapLabel::new(orbit, g.clone());
                    let code = action.orbit_code(&label)?.value().clone();
                    let key = code.eval(key_bits);
                    let length = action.gap_length(&label)?;
                    remaining -= &length;
                    entries.push(TableEntry {
                        label,
                        code,
                        key,
                        length,
                        prefix: BigRational::zero(),
                    });
                }
            }
            shells += 1;
        }
        entries.sort_unstable_by(|a, b| match a.key.cmp_disjoint(&b.key) {
            Some(o) => o,
            None => a
                .code
                .try_cmp(&b.code)
                .expect("orbit codes are exact and distinct"),
        });
        let mut acc = BigRational::zero();
        for e in entries.iter_mut() {
            e.prefix = acc.clone();
            acc += &e.length;
        }
        Ok(GapTable {
            entries,
            tail: remaining,
            denom,
            resolution_bits: bits,
            shells,
        })
    }

    pub fn resolution_bits(&self) -> u32 {
        self.resolution_bits
    }

    pub fn shells(&self) -> u64 {
        self.shells
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// `1 + L`.
    pub fn circumference(&self) -> &BigRational {
        &self.denom
    }

    /// Number of enumerated gaps whose code lies strictly below `y`.
    fn rank(&self, y: &Real) -> usize {
        self.entries.partition_point(|e| {
            match e.key.cmp_disjoint(&y.eval(self.resolution_bits + 16)) {
                Some(Ordering::Less) => true,
                Some(_) => false,
                None => matches!(e.code.try_cmp(y), Some(Ordering::Less)),
            }
        })
    }

    /// Enumerated gap mass strictly below code `y`, as an exact value plus
    /// the global unenumerated tail.
    fn mass_below(&self, y: &Real) -> (BigRational, BigRational) {
        let r = self.rank(y);
        let exact = if r == 0 {
            BigRational::zero()
        } else {
            self.entries[r - 1].prefix.clone() + &self.entries[r - 1].length
        };
        (exact, self.tail.clone())
    }

    /// The realization `psi(p)` as a certified interval of width at most
    /// `2^-resolution_bits` (for exact points).
    pub fn realize(&self, action: &DenjoyAction, p: &DenjoyPoint) -> Result<BigInterval, Error> {
        let bits = self.resolution_bits;
        let y = action.point_code(p)?.value().clone();
        let (below, tail) = self.mass_below(&y);
        // Gap-interior and right-endpoint contributions of p's own gap.
        let own = match p {
            DenjoyPoint::Gap { label, t } => {
                let l = action.gap_length(label)?;
                t.eval(bits + 4).scale(&l)
            }
            DenjoyPoint::Cantor {
                side: CantorSide::RightOf(label),
                ..
            } => {
                let l = action.gap_length(label)?;
                BigInterval::point(l, bits + 4)
            }
            DenjoyPoint::Cantor { .. } => BigInterval::zero(bits + 4),
        };
        let numerator = y
            .eval(bits + 4)
            .shift(&below)
            .add(&BigInterval::new(BigRational::zero(), tail, bits + 4))
            .add(&own);
        let scaled = numerator.scale(&(BigRational::one() / &self.denom));
        Ok(scaled.coarsen(bits + 2))
    }

    /// Inverts the realization: returns the symbolic point whose image
    /// contains `x`. Points inside an enumerated gap come back as exact gap
    /// coordinates; Cantor points come back as codes enclosed to the table
    /// resolution.
    pub fn realize_inverse(
        &self,
        action: &DenjoyAction,
        x: &CirclePoint,
    ) -> Result<DenjoyPoint, Error> {
        let bits = self.resolution_bits;
        let target = x.value().mul(&Real::from_rational(self.denom.clone()));
        // Find the first enumerated gap whose left edge is >= target.
        let left_edge = |e: &TableEntry| e.code.add(&Real::from_rational(e.prefix.clone()));
        let idx = self.entries.partition_point(|e| {
            matches!(left_edge(e).try_cmp(&target), Some(Ordering::Less))
        });
        // Check membership in the preceding gap [left, left + length].
        if idx > 0 {
            let e = &self.entries[idx - 1];
            let left = left_edge(e);
            let offset = target.sub(&left);
            let l = Real::from_rational(e.length.clone());
            match offset.try_cmp(&l) {
                Some(Ordering::Less) => {
                    let t = offset.checked_div(&l)?;
                    if t.is_zero_exact() {
                        return Ok(DenjoyPoint::Cantor {
                            code: CirclePoint::try_from_real(e.code.clone())?,
                            side: CantorSide::LeftOf(e.label.clone()),
                        });
                    }
                    return action.gap_point(e.label.clone(), t);
                }
                Some(Ordering::Equal) => {
                    return Ok(DenjoyPoint::Cantor {
                        code: CirclePoint::try_from_real(e.code.clone())?,
                        side: CantorSide::RightOf(e.label.clone()),
                    });
                }
                Some(Ordering::Greater) => {}
                None => {
                    return Err(Error::PrecisionCeiling { bits });
                }
            }
        }
        if idx < self.entries.len() {
            let e = &self.entries[idx];
            if target.try_cmp(&left_edge(e)).is_none() {
                return Err(Error::PrecisionCeiling { bits });
            }
            if matches!(left_edge(e).try_cmp(&target), Some(Ordering::Equal)) {
                return Ok(DenjoyPoint::Cantor {
                    code: CirclePoint::try_from_real(e.code.clone())?,
                    side: CantorSide::LeftOf(e.label.clone()),
                });
            }
        }
        // Cantor window between gap idx-1 and gap idx: y = target - S(y)
        // with S(y) between the enumerated prefix and prefix + tail.
        let below = if idx == 0 {
            BigRational::zero()
        } else {
            self.entries[idx - 1].prefix.clone() + &self.entries[idx - 1].length
        };
        let t_iv = target.eval(bits + 4);
        let mut lo = t_iv.lo() - &below - &self.tail;
        let hi = t_iv.hi() - &below;
        // Clip into the open code window when the slack dips past it.
        if idx > 0 {
            let floor_code = self.entries[idx - 1].code.eval(bits + 4);
            if &lo < floor_code.lo() {
                lo = floor_code.lo().clone();
            }
        } else if lo < BigRational::zero() {
            lo = BigRational::zero();
        }
        let enclosure = BigInterval::new(lo, hi, bits + 2);
        Ok(DenjoyPoint::Cantor {
            code: CirclePoint::try_from_real(Real::from_enclosure(enclosure))?,
            side: CantorSide::Plain,
        })
    }
}

/// One-shot realization at the given precision; builds a throwaway table.
pub fn realize(
    action: &DenjoyAction,
    p: &DenjoyPoint,
    bits: u32,
    enum_budget: u64,
) -> Result<BigInterval, Error> {
    GapTable::build(action, bits, enum_budget)?.realize(action, p)
}

/// One-shot inversion at the given precision; builds a throwaway table.
pub fn realize_inverse(
    action: &DenjoyAction,
    x: &CirclePoint,
    bits: u32,
    enum_budget: u64,
) -> Result<DenjoyPoint, Error> {
    GapTable::build(action, bits, enum_budget)?.realize_inverse(action, x)
}

trait RationalLog2 {
    fn to_f64_log2(&self) -> i64;
}

impl RationalLog2 for BigRational {
    fn to_f64_log2(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.numer().bits() as i64 - self.denom().bits() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{BlowUpData, GapFamily, RotationVector};
    use crate::interval::ratio;
    use crate::lattice::LatticeVector;

    fn d2_action() -> DenjoyAction {
        let rho = RotationVector::new(alloc::vec![
            Real::sqrt_of(2).sub(&Real::one()),
            Real::sqrt_of(3).sub(&Real::one()),
        ])
        .unwrap();
        let family = GapFamily::geometric(ratio(1, 4), ratio(1, 2)).unwrap();
        let blow = BlowUpData::new(CirclePoint::zero(), family).unwrap();
        DenjoyAction::new(rho, alloc::vec![blow]).unwrap()
    }

    #[test]
    fn anchor_realizes_to_zero() {
        let action = d2_action();
        let table = GapTable::build(&action, 64, 1_000_000).unwrap();
        let anchor = DenjoyPoint::cantor(CirclePoint::zero());
        let iv = table.realize(&action, &anchor).unwrap();
        assert!(iv.contains(&BigRational::zero()));
        assert!(iv.width() <= crate::interval::dyadic(1, 64));
    }

    #[test]
    fn realized_widths_meet_the_contract() {
        let action = d2_action();
        let table = GapTable::build(&action, 80, 1_000_000).unwrap();
        let pts = [
            DenjoyPoint::cantor(CirclePoint::from_ratio(1, 3)),
            action
                .gap_point(GapLabel::new(0, LatticeVector(alloc::vec![1, -1])), Real::ratio(1, 2))
                .unwrap(),
            action
                .gap_point(GapLabel::base(0, 2), Real::ratio(1, 7))
                .unwrap(),
        ];
        for p in &pts {
            let iv = table.realize(&action, p).unwrap();
            assert!(iv.width() <= crate::interval::dyadic(1, 80));
        }
    }

    #[test]
    fn gap_image_width_is_scaled_length() {
        let action = d2_action();
        let table = GapTable::build(&action, 96, 1_000_000).unwrap();
        let label = GapLabel::new(0, LatticeVector(alloc::vec![1, 0]));
        let left = action.gap_point(label.clone(), Real::zero()).unwrap();
        let right = action.gap_point(label.clone(), Real::one()).unwrap();
        let a = table.realize(&action, &left).unwrap();
        let b = table.realize(&action, &right).unwrap();
        let width = b.sub(&a);
        let expected = action.gap_length(&label).unwrap() / table.circumference();
        assert!(width.contains(&expected));
        assert!(width.width() <= crate::interval::dyadic(1, 94));
    }

    #[test]
    fn monotone_on_circular_order() {
        let action = d2_action();
        let table = GapTable::build(&action, 64, 1_000_000).unwrap();
        // Three Cantor codes in increasing order map to increasing psi.
        let codes = [ratio(1, 10), ratio(1, 3), ratio(9, 10)];
        let mut last: Option<BigInterval> = None;
        for c in codes {
            let p = DenjoyPoint::cantor(CirclePoint::try_from_real(Real::from_rational(c)).unwrap());
            let iv = table.realize(&action, &p).unwrap();
            if let Some(prev) = &last {
                assert_eq!(prev.cmp_disjoint(&iv), Some(Ordering::Less));
            }
            last = Some(iv);
        }
    }

    #[test]
    fn round_trip_through_a_gap() {
        let action = d2_action();
        let table = GapTable::build(&action, 96, 1_000_000).unwrap();
        let label = GapLabel::base(0, 2);
        let p = action.gap_point(label.clone(), Real::ratio(1, 2)).unwrap();
        let iv = table.realize(&action, &p).unwrap();
        let x = CirclePoint::try_from_real(Real::from_rational(iv.midpoint())).unwrap();
        match table.realize_inverse(&action, &x).unwrap() {
            DenjoyPoint::Gap { label: l, t } => {
                assert_eq!(l, label);
                let err = t.sub(&Real::ratio(1, 2));
                assert!(err.eval(64).width() < ratio(1, 1 << 20));
                assert!(t.eval(64).contains(&ratio(1, 2)) || err.eval(90).contains_zero());
            }
            p => panic!("expected the base gap, got {p:?}"),
        }
    }

    #[test]
    fn inverse_of_zero_is_the_anchor_endpoint() {
        let action = d2_action();
        let table = GapTable::build(&action, 64, 1_000_000).unwrap();
        match table.realize_inverse(&action, &CirclePoint::zero()).unwrap() {
            DenjoyPoint::Cantor { code, side } => {
                assert_eq!(code, CirclePoint::zero());
                assert_eq!(side, CantorSide::LeftOf(GapLabel::base(0, 2)));
            }
            p => panic!("expected the anchor, got {p:?}"),
        }
    }

    #[test]
    fn inverse_lands_on_cantor_part() {
        let action = d2_action();
        let table = GapTable::build(&action, 72, 1_000_000).unwrap();
        // psi(Cantor(1/3)) has an irrational preimage structure; the inverse
        // of its midpoint must be a Cantor enclosure containing 1/3.
        let p = DenjoyPoint::cantor(CirclePoint::from_ratio(1, 3));
        let iv = table.realize(&action, &p).unwrap();
        let x = CirclePoint::try_from_real(Real::from_rational(iv.midpoint())).unwrap();
        match table.realize_inverse(&action, &x).unwrap() {
            DenjoyPoint::Cantor { code, .. } => {
                let enclosure = code.value().eval(64);
                // Widen by the realize width to absorb the midpoint shift.
                let wide = enclosure.add(&BigInterval::new(
                    -crate::interval::dyadic(1, 70),
                    crate::interval::dyadic(1, 70),
                    64,
                ));
                assert!(wide.contains(&ratio(1, 3)));
            }
            p => panic!("expected a Cantor code, got {p:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_width() {
        let action = d2_action();
        match GapTable::build(&action, 128, 50) {
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => panic!("expected budget error, got {e:?}"),
            Ok(_) => panic!("expected budget error, got a table"),
        }
    }
}
