//! The primitive ideal space of the crossed product of a Denjoy action:
//! `k` disjoint open intervals (one per orbit of gaps, each parametrized
//! by `(0,1)`) together with one extra point `J` lying in the closure of
//! every non-empty subset. Ideals correspond to open subsets; `J`'s only
//! neighbourhood is the whole space, since `J` lies in the closure of any
//! non-empty complement.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Number of gap orbits, finite or symbolic infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitCount {
    Finite(u64),
    Infinite,
}

impl fmt::Display for OrbitCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitCount::Finite(n) => write!(f, "{n}"),
            OrbitCount::Infinite => write!(f, "oo"),
        }
    }
}

/// The space `Y_0 u {J}`: `k` abstract open-interval components plus the
/// dense point `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimSpace {
    pub k: OrbitCount,
}

impl PrimSpace {
    pub fn new(k: OrbitCount) -> Result<Self, Error> {
        if k == OrbitCount::Finite(0) {
            return Err(Error::EmptyInput);
        }
        Ok(PrimSpace { k })
    }

    fn component_in_range(&self, c: u64) -> bool {
        match self.k {
            OrbitCount::Finite(n) => c < n,
            OrbitCount::Infinite => true,
        }
    }
}

/// A subinterval of the open component `(0, 1)` with rational endpoints.
/// Endpoints at 0 or 1 are necessarily open (they are not in the space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RatInterval {
    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        RatInterval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        RatInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn point(q: BigRational) -> Self {
        RatInterval {
            lo: q.clone(),
            hi: q,
            lo_closed: true,
            hi_closed: true,
        }
    }

    fn full() -> Self {
        RatInterval::open(BigRational::zero(), BigRational::one())
    }

    fn is_full(&self) -> bool {
        self.lo.is_zero() && self.hi.is_one() && !self.lo_closed && !self.hi_closed
    }

    /// Empty after clipping into `(0, 1)`.
    fn is_empty(&self) -> bool {
        if self.lo > self.hi {
            return true;
        }
        if self.lo == self.hi {
            return !(self.lo_closed && self.hi_closed)
                || self.lo.is_zero()
                || self.hi.is_one();
        }
        false
    }

    /// Clamps endpoint flags so 0 and 1 are never included.
    fn clip(mut self) -> Self {
        if self.lo < BigRational::zero() {
            self.lo = BigRational::zero();
            self.lo_closed = false;
        }
        if self.hi > BigRational::one() {
            self.hi = BigRational::one();
            self.hi_closed = false;
        }
        if self.lo.is_zero() {
            self.lo_closed = false;
        }
        if self.hi.is_one() {
            self.hi_closed = false;
        }
        self
    }

    fn closure(&self) -> RatInterval {
        RatInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: true,
            hi_closed: true,
        }
        .clip()
    }

    fn is_open(&self) -> bool {
        !self.lo_closed && !self.hi_closed
    }

    /// Whether `self` and `next` (with `self.lo <= next.lo`) overlap or
    /// touch so that their union is a single interval.
    fn merges_with(&self, next: &RatInterval) -> bool {
        if next.lo < self.hi {
            return true;
        }
        if next.lo == self.hi {
            return self.hi_closed || next.lo_closed;
        }
        false
    }

    fn merge(&mut self, next: RatInterval) {
        if next.hi > self.hi || (next.hi == self.hi && next.hi_closed) {
            self.hi = next.hi;
            self.hi_closed = next.hi_closed;
        }
        if next.lo == self.lo && next.lo_closed {
            self.lo_closed = true;
        }
    }

    fn contains_interval(&self, other: &RatInterval) -> bool {
        let lo_ok = self.lo < other.lo
            || (self.lo == other.lo && (self.lo_closed || !other.lo_closed));
        let hi_ok = self.hi > other.hi
            || (self.hi == other.hi && (self.hi_closed || !other.hi_closed));
        lo_ok && hi_ok
    }

    fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo.clone(), self.lo_closed)
        } else if self.lo < other.lo {
            (other.lo.clone(), other.lo_closed)
        } else {
            (self.lo.clone(), self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi.clone(), self.hi_closed)
        } else if self.hi > other.hi {
            (other.hi.clone(), other.hi_closed)
        } else {
            (self.hi.clone(), self.hi_closed && other.hi_closed)
        };
        let candidate = RatInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
        .clip();
        if candidate.is_empty() {
            None
        } else {
            Some(candidate)
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { "[" } else { "(" },
            self.lo,
            self.hi,
            if self.hi_closed { "]" } else { ")" }
        )
    }
}

/// A point of the space, used for witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimPoint {
    Component(u64, BigRational),
    J,
}

impl fmt::Display for PrimPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimPoint::Component(c, q) => write!(f, "component {c}, point {q}"),
            PrimPoint::J => write!(f, "J"),
        }
    }
}

/// A finitely described subset: finitely many named components carrying
/// unions of rational intervals, an optional "everything else is full"
/// background (needed to describe the whole space when `k` is infinite),
/// and the `J` flag. Kept in canonical form: intervals sorted, disjoint,
/// maximal; full named components folded into the background where
/// possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimSubset {
    background_full: bool,
    components: BTreeMap<u64, Vec<RatInterval>>,
    pub contains_j: bool,
}

impl PrimSubset {
    pub fn empty() -> Self {
        PrimSubset {
            background_full: false,
            components: BTreeMap::new(),
            contains_j: false,
        }
    }

    pub fn whole() -> Self {
        PrimSubset {
            background_full: true,
            components: BTreeMap::new(),
            contains_j: true,
        }
    }

    /// All components full, without `J` (the maximal ideal's open set).
    pub fn all_components() -> Self {
        PrimSubset {
            background_full: true,
            components: BTreeMap::new(),
            contains_j: false,
        }
    }

    pub fn just_j() -> Self {
        PrimSubset {
            background_full: false,
            components: BTreeMap::new(),
            contains_j: true,
        }
    }

    pub fn point(space: &PrimSpace, component: u64, q: BigRational) -> Result<Self, Error> {
        PrimSubset::from_parts(
            space,
            false,
            alloc::vec![(component, alloc::vec![RatInterval::point(q)])],
            false,
        )
    }

    /// General constructor; canonicalizes and validates component indices.
    pub fn from_parts(
        space: &PrimSpace,
        background_full: bool,
        parts: Vec<(u64, Vec<RatInterval>)>,
        contains_j: bool,
    ) -> Result<Self, Error> {
        let mut components: BTreeMap<u64, Vec<RatInterval>> = BTreeMap::new();
        for (c, intervals) in parts {
            if !space.component_in_range(c) {
                return Err(Error::UnknownOrbit(c as usize));
            }
            components
                .entry(c)
                .or_default()
                .extend(intervals.into_iter().map(RatInterval::clip));
        }
        let mut out = PrimSubset {
            background_full,
            components,
            contains_j,
        };
        out.canonicalize(space);
        Ok(out)
    }

    fn canonicalize(&mut self, space: &PrimSpace) {
        for intervals in self.components.values_mut() {
            canonical_union(intervals);
        }
        // Fold named components that match the background.
        self.components.retain(|_, intervals| {
            let full = intervals.len() == 1 && intervals[0].is_full();
            let empty = intervals.is_empty();
            if self.background_full {
                !full
            } else {
                !empty
            }
        });
        // A finite space with every component explicitly full becomes
        // background-full.
        if !self.background_full {
            if let OrbitCount::Finite(n) = space.k {
                let all_full = n > 0
                    && (0..n).all(|c| {
                        self.components
                            .get(&c)
                            .map(|v| v.len() == 1 && v[0].is_full())
                            .unwrap_or(false)
                    });
                if all_full {
                    self.background_full = true;
                    self.components.clear();
                }
            }
        }
    }

    pub fn background_full(&self) -> bool {
        self.background_full
    }

    pub fn named_components(&self) -> &BTreeMap<u64, Vec<RatInterval>> {
        &self.components
    }

    /// The interval list of a component under the background convention.
    fn component(&self, c: u64) -> Vec<RatInterval> {
        match self.components.get(&c) {
            Some(v) => v.clone(),
            None => {
                if self.background_full {
                    alloc::vec![RatInterval::full()]
                } else {
                    Vec::new()
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.contains_j && !self.background_full && self.components.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.contains_j && self.background_full && self.components.is_empty()
    }

    /// Set inclusion.
    pub fn contains_subset(&self, other: &PrimSubset) -> bool {
        if other.contains_j && !self.contains_j {
            return false;
        }
        if other.background_full && !self.background_full {
            return false;
        }
        let names: Vec<u64> = self
            .components
            .keys()
            .chain(other.components.keys())
            .copied()
            .collect();
        for c in names {
            let mine = self.component(c);
            for iv in other.component(c) {
                if !mine.iter().any(|m| m.contains_interval(&iv)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn union(&self, space: &PrimSpace, other: &PrimSubset) -> PrimSubset {
        let mut components: BTreeMap<u64, Vec<RatInterval>> = BTreeMap::new();
        for c in self.components.keys().chain(other.components.keys()) {
            let mut merged = self.component(*c);
            merged.extend(other.component(*c));
            components.insert(*c, merged);
        }
        let mut out = PrimSubset {
            background_full: self.background_full || other.background_full,
            components,
            contains_j: self.contains_j || other.contains_j,
        };
        out.canonicalize(space);
        out
    }

    pub fn intersect(&self, space: &PrimSpace, other: &PrimSubset) -> PrimSubset {
        let mut components: BTreeMap<u64, Vec<RatInterval>> = BTreeMap::new();
        for c in self.components.keys().chain(other.components.keys()) {
            let mut pieces = Vec::new();
            for a in self.component(*c) {
                for b in other.component(*c) {
                    if let Some(i) = a.intersect(&b) {
                        pieces.push(i);
                    }
                }
            }
            components.insert(*c, pieces);
        }
        let mut out = PrimSubset {
            background_full: self.background_full && other.background_full,
            components,
            contains_j: self.contains_j && other.contains_j,
        };
        out.canonicalize(space);
        out
    }

    /// Whether every component part is open (in the interval components);
    /// openness of the whole subset additionally constrains `J`.
    fn component_parts_open(&self) -> bool {
        self.components
            .values()
            .flatten()
            .all(RatInterval::is_open)
    }

    /// A witness against openness, if any: a closed endpoint, or `J` when
    /// present without the rest of the space.
    pub fn openness_witness(&self, _space: &PrimSpace) -> Option<PrimPoint> {
        for (c, intervals) in &self.components {
            for iv in intervals {
                if iv.lo_closed {
                    return Some(PrimPoint::Component(*c, iv.lo.clone()));
                }
                if iv.hi_closed {
                    return Some(PrimPoint::Component(*c, iv.hi.clone()));
                }
            }
        }
        if self.contains_j && !self.is_whole() {
            return Some(PrimPoint::J);
        }
        None
    }

    pub fn is_open(&self, space: &PrimSpace) -> bool {
        self.openness_witness(space).is_none() && self.component_parts_open()
            || self.is_whole()
    }
}

impl fmt::Display for PrimSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        if self.is_whole() {
            return write!(f, "whole space");
        }
        let mut first = true;
        if self.background_full {
            write!(f, "all unnamed components")?;
            first = false;
        }
        for (c, intervals) in &self.components {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "component {c}: ")?;
            for (i, iv) in intervals.iter().enumerate() {
                if i > 0 {
                    write!(f, " u ")?;
                }
                write!(f, "{iv}")?;
            }
            first = false;
        }
        if self.contains_j {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "J")?;
        }
        Ok(())
    }
}

fn canonical_union(intervals: &mut Vec<RatInterval>) {
    intervals.retain(|iv| !iv.is_empty());
    intervals.sort_by(|a, b| {
        a.lo.cmp(&b.lo)
            .then_with(|| b.lo_closed.cmp(&a.lo_closed))
            .then_with(|| a.hi.cmp(&b.hi))
    });
    let mut out: Vec<RatInterval> = Vec::with_capacity(intervals.len());
    for iv in intervals.drain(..) {
        match out.last_mut() {
            Some(last) if last.merges_with(&iv) => last.merge(iv),
            _ => out.push(iv),
        }
    }
    *intervals = out;
}

/// Hull-kernel closure: Euclidean closure within each component, and `J`
/// joins every non-empty set. Idempotent, monotone, and additive.
pub fn closure(space: &PrimSpace, s: &PrimSubset) -> PrimSubset {
    if s.is_empty() {
        return PrimSubset::empty();
    }
    let mut components = BTreeMap::new();
    for (c, intervals) in &s.components {
        components.insert(*c, intervals.iter().map(RatInterval::closure).collect());
    }
    let mut out = PrimSubset {
        background_full: s.background_full,
        components,
        contains_j: true,
    };
    out.canonicalize(space);
    out
}

/// What an open subset names on the ideal side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealKind {
    Zero,
    Whole,
    /// The unique maximal ideal (all interval components, no `J`).
    TraceIdeal,
    /// A proper ideal strictly inside the maximal one.
    Proper,
}

/// Descriptor of the ideal attached to an open subset.
#[derive(Clone, Debug)]
pub struct IdealDescriptor {
    pub kind: IdealKind,
    pub open_set: PrimSubset,
    /// Contained in the trace ideal iff `J` is not in the open set.
    pub within_trace_ideal: bool,
    /// The invariant open subset of the wandering set that induces the
    /// ideal: per orbit, the stated open set of the representative gap,
    /// saturated under the action.
    pub invariant_open_set: String,
}

/// The ideal named by an open subset of the primitive spectrum.
pub fn ideal_for_open(space: &PrimSpace, u: &PrimSubset) -> Result<IdealDescriptor, Error> {
    if let Some(witness) = u.openness_witness(space) {
        return Err(Error::NotOpen {
            witness: witness.to_string(),
        });
    }
    if !u.component_parts_open() {
        // Unreachable given the witness scan, kept as a guard.
        return Err(Error::NotOpen {
            witness: "closed interval endpoint".to_string(),
        });
    }
    let kind = if u.is_empty() {
        IdealKind::Zero
    } else if u.is_whole() {
        IdealKind::Whole
    } else if u.contains_j {
        return Err(Error::NotOpen {
            witness: PrimPoint::J.to_string(),
        });
    } else if *u == PrimSubset::all_components() {
        IdealKind::TraceIdeal
    } else {
        IdealKind::Proper
    };
    let invariant_open_set = match kind {
        IdealKind::Zero => "empty set".to_string(),
        IdealKind::Whole => "the whole circle (ideal = whole algebra)".to_string(),
        IdealKind::TraceIdeal => {
            "the whole wandering set (all gaps, saturated)".to_string()
        }
        IdealKind::Proper => {
            alloc::format!("saturation under the action of: {u}")
        }
    };
    Ok(IdealDescriptor {
        within_trace_ideal: !u.contains_j,
        kind,
        open_set: u.clone(),
        invariant_open_set,
    })
}

/// Report on the unique maximal ideal.
#[derive(Clone, Debug)]
pub struct MaximalIdealReport {
    pub descriptor: IdealDescriptor,
    pub summands: OrbitCount,
    pub unique_maximal: bool,
    pub k_data: crate::ktheory::IdealKData,
    /// Name of the membership test for concrete elements.
    pub membership_test: &'static str,
}

/// The unique maximal ideal: the crossed product of the wandering set,
/// equal to the trace ideal; its K-data is attached.
pub fn maximal_ideal(space: &PrimSpace) -> Result<MaximalIdealReport, Error> {
    let open = PrimSubset::all_components();
    let descriptor = ideal_for_open(space, &open)?;
    Ok(MaximalIdealReport {
        descriptor,
        summands: space.k,
        unique_maximal: true,
        k_data: crate::ktheory::ideal_k_data(space.k)?,
        membership_test: "trace of a*a vanishes (coefficients supported in gaps)",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ratio;

    fn space2() -> PrimSpace {
        PrimSpace::new(OrbitCount::Finite(2)).unwrap()
    }

    #[test]
    fn closure_of_a_point_adds_j() {
        let space = space2();
        let s = PrimSubset::point(&space, 0, ratio(1, 3)).unwrap();
        let c = closure(&space, &s);
        assert!(c.contains_j);
        assert!(c.contains_subset(&s));
        // {J} is closed.
        let j = PrimSubset::just_j();
        assert_eq!(closure(&space, &j), j);
        // Empty set closes to itself.
        assert_eq!(closure(&space, &PrimSubset::empty()), PrimSubset::empty());
    }

    #[test]
    fn closure_is_idempotent_and_euclidean() {
        let space = space2();
        let s = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(1, alloc::vec![RatInterval::open(ratio(1, 4), ratio(1, 2))])],
            false,
        )
        .unwrap();
        let c1 = closure(&space, &s);
        let c2 = closure(&space, &c1);
        assert_eq!(c1, c2);
        let expected = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(1, alloc::vec![RatInterval::closed(ratio(1, 4), ratio(1, 2))])],
            true,
        )
        .unwrap();
        assert_eq!(c1, expected);
    }

    #[test]
    fn boundary_clipping_in_closures() {
        let space = space2();
        // (0, 1/2) closes to (0, 1/2]: 0 is not a point of the component.
        let s = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(0, 1), ratio(1, 2))])],
            false,
        )
        .unwrap();
        let c = closure(&space, &s);
        let iv = &c.named_components()[&0][0];
        assert!(!iv.lo_closed && iv.hi_closed);
    }

    #[test]
    fn ideal_of_opens() {
        let space = space2();
        assert_eq!(
            ideal_for_open(&space, &PrimSubset::whole()).unwrap().kind,
            IdealKind::Whole
        );
        assert_eq!(
            ideal_for_open(&space, &PrimSubset::empty()).unwrap().kind,
            IdealKind::Zero
        );
        let max = ideal_for_open(&space, &PrimSubset::all_components()).unwrap();
        assert_eq!(max.kind, IdealKind::TraceIdeal);
        assert!(max.within_trace_ideal);
        let small = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(1, 3), ratio(2, 3))])],
            false,
        )
        .unwrap();
        let d = ideal_for_open(&space, &small).unwrap();
        assert_eq!(d.kind, IdealKind::Proper);
        assert!(d.within_trace_ideal);
    }

    #[test]
    fn non_open_rejected_with_witness() {
        let space = space2();
        let closed_piece = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::closed(ratio(1, 3), ratio(2, 3))])],
            false,
        )
        .unwrap();
        match ideal_for_open(&space, &closed_piece).unwrap_err() {
            Error::NotOpen { witness } => assert!(witness.contains("1/3")),
            e => panic!("unexpected error {e:?}"),
        }
        // J without everything else: the only neighbourhood of J is the
        // whole space.
        let j_and_bits = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(1, 3), ratio(2, 3))])],
            true,
        )
        .unwrap();
        match ideal_for_open(&space, &j_and_bits).unwrap_err() {
            Error::NotOpen { witness } => assert_eq!(witness, "J"),
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn maximal_ideal_report() {
        let space = space2();
        let report = maximal_ideal(&space).unwrap();
        assert!(report.unique_maximal);
        assert_eq!(report.summands, OrbitCount::Finite(2));
        assert!(report.k_data.k0_trivial);
        assert_eq!(report.k_data.k1_rank, OrbitCount::Finite(2));
        // Every proper open sits inside the maximal ideal's open set.
        let small = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(1, alloc::vec![RatInterval::open(ratio(1, 8), ratio(3, 8))])],
            false,
        )
        .unwrap();
        assert!(report.descriptor.open_set.contains_subset(&small));
    }

    #[test]
    fn infinite_orbit_count_is_descriptive() {
        let space = PrimSpace::new(OrbitCount::Infinite).unwrap();
        let s = PrimSubset::point(&space, 41, ratio(1, 2)).unwrap();
        let c = closure(&space, &s);
        assert!(c.contains_j);
        assert!(!PrimSubset::all_components().is_whole());
        let max = maximal_ideal(&space).unwrap();
        assert_eq!(max.summands, OrbitCount::Infinite);
    }

    #[test]
    fn union_and_intersection_are_canonical() {
        let space = space2();
        let a = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(1, 10), ratio(1, 2))])],
            false,
        )
        .unwrap();
        let b = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(1, 4), ratio(3, 4))])],
            false,
        )
        .unwrap();
        let u = a.union(&space, &b);
        assert_eq!(
            u.named_components()[&0],
            alloc::vec![RatInterval::open(ratio(1, 10), ratio(3, 4))]
        );
        let i = a.intersect(&space, &b);
        assert_eq!(
            i.named_components()[&0],
            alloc::vec![RatInterval::open(ratio(1, 4), ratio(1, 2))]
        );
        assert!(u.contains_subset(&a) && u.contains_subset(&b));
        assert!(a.contains_subset(&i) && b.contains_subset(&i));
    }

    #[test]
    fn closure_distributes_over_union() {
        let space = space2();
        let a = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(0, alloc::vec![RatInterval::open(ratio(1, 10), ratio(1, 5))])],
            false,
        )
        .unwrap();
        let b = PrimSubset::from_parts(
            &space,
            false,
            alloc::vec![(1, alloc::vec![RatInterval::open(ratio(1, 2), ratio(9, 10))])],
            false,
        )
        .unwrap();
        let lhs = closure(&space, &a.union(&space, &b));
        let rhs = closure(&space, &a).union(&space, &closure(&space, &b));
        assert_eq!(lhs, rhs);
    }
}
