//! Continuous functions on the symbolic circle.
//!
//! A function is stored in the coordinates the dynamics preserves: on the
//! minimal set, as a circular piecewise polynomial in the collapsed code
//! `y` (one polynomial per segment, in the local coordinate measured from
//! the segment start); inside a gap, as a piecewise polynomial in the
//! affine gap parameter `t` on `[0, 1]`. The group action is then a rigid
//! relabelling — codes rotate, gap labels translate, `t` is untouched — so
//! the class is closed under the action, under pointwise sums and products,
//! and under conjugation, all exactly.
//!
//! Jumps of the code-coordinate data are allowed exactly at gap codes
//! (where the two one-sided limits are the values at the two geometric
//! endpoints of the gap); continuity across the gap is carried by the gap
//! piece, which defaults to the affine bridge between the endpoint values.
//!
//! The unique invariant measure assigns zero mass to every gap and pushes
//! forward to Lebesgue measure in the `y` coordinate, so integration
//! against it is the exact segment-wise integral of the code-coordinate
//! data.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;

use crate::action::{CantorSide, DenjoyAction, DenjoyPoint, GapLabel};
use crate::circle::CirclePoint;
use crate::error::Error;
use crate::real::Real;

/// A complex number with exact-or-refinable real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CValue {
    pub re: Real,
    pub im: Real,
}

impl CValue {
    pub fn zero() -> Self {
        CValue {
            re: Real::zero(),
            im: Real::zero(),
        }
    }

    pub fn one() -> Self {
        CValue {
            re: Real::one(),
            im: Real::zero(),
        }
    }

    pub fn real(re: Real) -> Self {
        CValue {
            re,
            im: Real::zero(),
        }
    }

    pub fn new(re: Real, im: Real) -> Self {
        CValue { re, im }
    }

    pub fn add(&self, other: &CValue) -> CValue {
        CValue {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &CValue) -> CValue {
        CValue {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn mul(&self, other: &CValue) -> CValue {
        CValue {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn neg(&self) -> CValue {
        CValue {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> CValue {
        CValue {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> CValue {
        CValue {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn div_real(&self, d: &Real) -> Result<CValue, Error> {
        Ok(CValue {
            re: self.re.checked_div(d)?,
            im: self.im.checked_div(d)?,
        })
    }

    pub fn is_zero_exact(&self) -> bool {
        self.re.is_zero_exact() && self.im.is_zero_exact()
    }

    /// `Some(true)`: provably nonzero; `Some(false)`: exactly zero;
    /// `None`: enclosure data too wide to decide.
    pub fn nonzero(&self) -> Option<bool> {
        if self.is_zero_exact() {
            return Some(false);
        }
        for part in [&self.re, &self.im] {
            match part.try_sign() {
                Some(Ordering::Equal) => {}
                Some(_) => return Some(true),
                None => return None,
            }
        }
        // Both parts exact and zero would have hit is_zero_exact.
        Some(true)
    }
}

/// Polynomial with complex coefficients in one local coordinate.
/// Canonical form: no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<CValue>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(v: CValue) -> Self {
        let p = Poly(alloc::vec![v]);
        p.trimmed()
    }

    /// `a + b u`.
    pub fn linear(a: CValue, b: CValue) -> Self {
        Poly(alloc::vec![a, b]).trimmed()
    }

    pub fn coefficients(&self) -> &[CValue] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while matches!(self.0.last(), Some(c) if c.is_zero_exact()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, u: &Real) -> CValue {
        let mut acc = CValue::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&CValue::real(u.clone())).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(CValue::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(CValue::zero);
            out.push(a.add(&b));
        }
        Poly(out).trimmed()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(CValue::neg).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = alloc::vec![CValue::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly(out).trimmed()
    }

    pub fn conj(&self) -> Poly {
        Poly(self.0.iter().map(CValue::conj).collect())
    }

    /// `p(delta + u)` as a polynomial in `u`.
    pub fn shift(&self, delta: &Real) -> Poly {
        // Horner in (u + delta).
        let mut acc = Poly::zero();
        let unit = Poly::linear(CValue::real(delta.clone()), CValue::one());
        for c in self.0.iter().rev() {
            acc = acc.mul(&unit).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Exact `integral_0^upper p(u) du`.
    pub fn integral(&self, upper: &Real) -> CValue {
        let mut acc = CValue::zero();
        let mut power = upper.clone();
        for (i, c) in self.0.iter().enumerate() {
            let denom = BigRational::new(1.into(), (i as i64 + 1).into());
            acc = acc.add(&c.mul(&CValue::real(power.clone())).scale(&denom));
            power = power.mul(upper);
        }
        acc
    }
}

/// A continuous piecewise polynomial on the gap parameter interval
/// `[0, 1]`, with polynomials in the absolute coordinate `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapPieces {
    /// Strictly increasing interior breakpoints in `(0, 1)`.
    breaks: Vec<Real>,
    /// `breaks.len() + 1` polynomials; piece `i` is valid between
    /// breakpoints `i-1` and `i` (with 0 and 1 as outer boundaries).
    polys: Vec<Poly>,
}

impl GapPieces {
    pub fn constant(v: CValue) -> Self {
        GapPieces {
            breaks: Vec::new(),
            polys: alloc::vec![Poly::constant(v)],
        }
    }

    /// The affine bridge from `left` (at `t = 0`) to `right` (at `t = 1`).
    pub fn bridge(left: &CValue, right: &CValue) -> Self {
        GapPieces {
            breaks: Vec::new(),
            polys: alloc::vec![Poly::linear(left.clone(), right.sub(left))],
        }
    }

    /// Tent supported in the gap interior: 0 at both endpoints, `peak` at
    /// `t = 1/2`, piecewise linear.
    pub fn tent(peak: CValue) -> Self {
        let two = peak.scale(&BigRational::from_integer(2.into()));
        GapPieces {
            breaks: alloc::vec![Real::ratio(1, 2)],
            polys: alloc::vec![
                Poly::linear(CValue::zero(), two.clone()),
                Poly::linear(two.clone(), two.neg()),
            ],
        }
    }

    /// Builds from explicit pieces, validating order and continuity.
    pub fn new(breaks: Vec<Real>, polys: Vec<Poly>) -> Result<Self, Error> {
        if polys.len() != breaks.len() + 1 {
            return Err(Error::Invalid(
                "gap pieces: need one more polynomial than breakpoints".to_string(),
            ));
        }
        for b in &breaks {
            let inside = b.try_sign() == Some(Ordering::Greater)
                && b.sub(&Real::one()).try_sign() == Some(Ordering::Less);
            if !inside {
                return Err(Error::Invalid(
                    "gap breakpoints must lie strictly inside (0, 1)".to_string(),
                ));
            }
        }
        for w in breaks.windows(2) {
            if w[0].try_cmp(&w[1]) != Some(Ordering::Less) {
                return Err(Error::Invalid(
                    "gap breakpoints must be strictly increasing".to_string(),
                ));
            }
        }
        for (i, b) in breaks.iter().enumerate() {
            if polys[i].eval(b) != polys[i + 1].eval(b) {
                return Err(Error::Invalid(
                    "gap pieces must agree at breakpoints".to_string(),
                ));
            }
        }
        Ok(GapPieces { breaks, polys })
    }

    pub fn left_value(&self) -> CValue {
        self.polys[0].eval(&Real::zero())
    }

    pub fn right_value(&self) -> CValue {
        self.polys[self.polys.len() - 1].eval(&Real::one())
    }

    pub fn value_at(&self, t: &Real) -> CValue {
        let idx = self
            .breaks
            .partition_point(|b| matches!(b.try_cmp(t), Some(Ordering::Less)));
        self.polys[idx].eval(t)
    }

    fn merged_breaks(&self, other: &GapPieces) -> Vec<Real> {
        let mut all: Vec<Real> = self.breaks.clone();
        for b in &other.breaks {
            if !all.iter().any(|a| a == b) {
                all.push(b.clone());
            }
        }
        all.sort_by(|a, b| a.try_cmp(b).expect("exact breakpoints"));
        all
    }

    fn poly_covering(&self, span_start: &Real) -> &Poly {
        let idx = self
            .breaks
            .partition_point(|b| match b.try_cmp(span_start) {
                Some(Ordering::Less) | Some(Ordering::Equal) => true,
                _ => false,
            });
        &self.polys[idx]
    }

    fn zip(&self, other: &GapPieces, op: impl Fn(&Poly, &Poly) -> Poly) -> GapPieces {
        let breaks = self.merged_breaks(other);
        let mut starts = alloc::vec![Real::zero()];
        starts.extend(breaks.iter().cloned());
        let polys = starts
            .iter()
            .map(|s| op(self.poly_covering(s), other.poly_covering(s)))
            .collect();
        GapPieces { breaks, polys }
    }

    pub fn add(&self, other: &GapPieces) -> GapPieces {
        self.zip(other, Poly::add)
    }

    pub fn mul(&self, other: &GapPieces) -> GapPieces {
        self.zip(other, Poly::mul)
    }

    pub fn conj(&self) -> GapPieces {
        GapPieces {
            breaks: self.breaks.clone(),
            polys: self.polys.iter().map(Poly::conj).collect(),
        }
    }

    pub fn neg(&self) -> GapPieces {
        GapPieces {
            breaks: self.breaks.clone(),
            polys: self.polys.iter().map(Poly::neg).collect(),
        }
    }
}

/// One segment of the code-coordinate data: from `start` (inclusive) to
/// the next segment's start, with the polynomial in the local coordinate
/// `u = y - start (mod 1)`.
#[derive(Clone, Debug)]
pub struct Segment {
    pub start: CirclePoint,
    /// Set when `start` is the code of this gap; jumps are allowed only
    /// at labelled starts.
    pub gap: Option<GapLabel>,
    pub poly: Poly,
}

/// A continuous function on the symbolic circle.
#[derive(Clone, Debug)]
pub struct CircleFn {
    /// Circularly ordered, starts strictly increasing in `[0, 1)`.
    segments: Vec<Segment>,
    /// Explicit gap behavior; gaps without an entry use the affine bridge
    /// between their endpoint values.
    gap_parts: BTreeMap<GapLabel, GapPieces>,
}

impl CircleFn {
    pub fn constant(v: CValue) -> Self {
        CircleFn {
            segments: alloc::vec![Segment {
                start: CirclePoint::zero(),
                gap: None,
                poly: Poly::constant(v),
            }],
            gap_parts: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        CircleFn::constant(CValue::zero())
    }

    pub fn one() -> Self {
        CircleFn::constant(CValue::one())
    }

    /// Continuous piecewise-linear interpolation through collapsed-circle
    /// nodes `(code, value)`; the pullback of a PL function on the rotation
    /// factor.
    pub fn collapsed_pl(nodes: Vec<(CirclePoint, CValue)>) -> Result<Self, Error> {
        if nodes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if nodes.len() == 1 {
            return Ok(CircleFn::constant(nodes.into_iter().next().unwrap().1));
        }
        let mut nodes = nodes;
        nodes.sort_by(|a, b| {
            a.0.try_cmp(&b.0)
                .expect("node codes must be exact and comparable")
        });
        for w in nodes.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Invalid("duplicate node code".to_string()));
            }
        }
        let n = nodes.len();
        let mut segments = Vec::with_capacity(n);
        for i in 0..n {
            let (start, v0) = nodes[i].clone();
            let (next, v1) = nodes[(i + 1) % n].clone();
            let len = start.distance_to(&next)?;
            let slope = v1.sub(&v0).div_real(&len)?;
            segments.push(Segment {
                start,
                gap: None,
                poly: Poly::linear(v0, slope),
            });
        }
        Ok(CircleFn {
            segments,
            gap_parts: BTreeMap::new(),
        })
    }

    /// A function supported inside one gap: zero on the minimal set, with
    /// the given pieces (which must vanish at both gap endpoints).
    pub fn gap_supported(
        action: &DenjoyAction,
        label: GapLabel,
        pieces: GapPieces,
    ) -> Result<Self, Error> {
        action.orbit_code(&label)?;
        if !pieces.left_value().is_zero_exact() || !pieces.right_value().is_zero_exact() {
            return Err(Error::Invalid(
                "gap-supported function must vanish at the gap endpoints".to_string(),
            ));
        }
        let mut gap_parts = BTreeMap::new();
        gap_parts.insert(label, pieces);
        Ok(CircleFn {
            segments: CircleFn::zero().segments,
            gap_parts,
        })
    }

    /// Tent bump of the given peak inside one gap.
    pub fn gap_tent(action: &DenjoyAction, label: GapLabel, peak: CValue) -> Result<Self, Error> {
        CircleFn::gap_supported(action, label, GapPieces::tent(peak))
    }

    /// General constructor with full validation of ordering, continuity
    /// and gap-part compatibility.
    pub fn from_parts(
        action: &DenjoyAction,
        segments: Vec<Segment>,
        gap_parts: BTreeMap<GapLabel, GapPieces>,
    ) -> Result<Self, Error> {
        if segments.is_empty() {
            return Err(Error::EmptyInput);
        }
        for w in segments.windows(2) {
            if w[0].start.try_cmp(&w[1].start) != Some(Ordering::Less) {
                return Err(Error::Invalid(
                    "segment starts must be strictly increasing".to_string(),
                ));
            }
        }
        for s in &segments {
            if let Some(label) = &s.gap {
                let code = action.orbit_code(label)?;
                if code != s.start {
                    return Err(Error::Invalid(
                        "segment gap label does not match its start code".to_string(),
                    ));
                }
            }
        }
        let f = CircleFn {
            segments,
            gap_parts,
        };
        // Continuity: jumps only at labelled starts.
        let n = f.segments.len();
        for i in 0..n {
            let (left, right) = f.boundary_values(i);
            if left != right && f.segments[i].gap.is_none() {
                return Err(Error::Invalid(
                    "jump at an unlabelled segment start".to_string(),
                ));
            }
        }
        // Gap parts must match the endpoint values at their codes.
        for (label, pieces) in &f.gap_parts {
            let code = action.orbit_code(label)?;
            let (left, right) = f.side_values(&code);
            if pieces.left_value() != left || pieces.right_value() != right {
                return Err(Error::Invalid(
                    "gap pieces do not match the endpoint values".to_string(),
                ));
            }
        }
        Ok(f)
    }

    /// One-sided values at the start of segment `i`:
    /// (limit from below, value at the segment).
    fn boundary_values(&self, i: usize) -> (CValue, CValue) {
        let n = self.segments.len();
        let prev = &self.segments[(i + n - 1) % n];
        let prev_len = prev
            .start
            .distance_to(&self.segments[i].start)
            .expect("exact starts");
        let prev_len = if n == 1 { Real::one() } else { prev_len };
        let left = prev.poly.eval(&prev_len);
        let right = self.segments[i].poly.eval(&Real::zero());
        (left, right)
    }

    /// Index of the segment whose span contains the code.
    fn locate(&self, code: &CirclePoint) -> usize {
        let idx = self.segments.partition_point(|s| {
            matches!(
                s.start.try_cmp(code),
                Some(Ordering::Less) | Some(Ordering::Equal)
            )
        });
        // Before the first start means inside the wrapping last segment.
        (idx + self.segments.len() - 1) % self.segments.len()
    }

    /// One-sided values at an arbitrary code.
    fn side_values(&self, code: &CirclePoint) -> (CValue, CValue) {
        let i = self.locate(code);
        if self.segments[i].start == *code && self.segments.len() > 1 {
            self.boundary_values(i)
        } else if self.segments.len() == 1 && self.segments[0].start == *code {
            self.boundary_values(0)
        } else {
            let u = self.segments[i]
                .start
                .distance_to(code)
                .expect("exact codes");
            let v = self.segments[i].poly.eval(&u);
            (v.clone(), v)
        }
    }

    /// The gap behavior of this function on the labelled gap.
    fn gap_fn(&self, action: &DenjoyAction, label: &GapLabel) -> Result<GapPieces, Error> {
        if let Some(p) = self.gap_parts.get(label) {
            return Ok(p.clone());
        }
        let code = action.orbit_code(label)?;
        let (left, right) = self.side_values(&code);
        Ok(GapPieces::bridge(&left, &right))
    }

    /// Evaluation at a symbolic point.
    pub fn value_at(&self, action: &DenjoyAction, p: &DenjoyPoint) -> Result<CValue, Error> {
        match p {
            DenjoyPoint::Gap { label, t } => Ok(self.gap_fn(action, label)?.value_at(t)),
            DenjoyPoint::Cantor { code, side } => {
                let (left, right) = self.side_values(code);
                Ok(match side {
                    CantorSide::LeftOf(_) => left,
                    _ => right,
                })
            }
        }
    }

    /// Labels at which the code data jumps (gap parts are forced there).
    fn jump_labels(&self) -> Vec<GapLabel> {
        let mut out = Vec::new();
        for i in 0..self.segments.len() {
            if let Some(label) = &self.segments[i].gap {
                let (l, r) = self.boundary_values(i);
                if l != r {
                    out.push(label.clone());
                }
            }
        }
        out
    }

    fn binop(
        &self,
        action: &DenjoyAction,
        other: &CircleFn,
        poly_op: impl Fn(&Poly, &Poly) -> Poly,
        piece_op: impl Fn(&GapPieces, &GapPieces) -> GapPieces,
    ) -> Result<CircleFn, Error> {
        // Gaps needing explicit parts in the result: any explicit part or
        // jump on either side (products of non-constant bridges are no
        // longer bridges).
        let mut labels: Vec<GapLabel> = Vec::new();
        for l in self
            .gap_parts
            .keys()
            .chain(other.gap_parts.keys())
            .cloned()
            .chain(self.jump_labels())
            .chain(other.jump_labels())
        {
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
        let mut gap_parts = BTreeMap::new();
        for label in labels {
            let merged = piece_op(
                &self.gap_fn(action, &label)?,
                &other.gap_fn(action, &label)?,
            );
            gap_parts.insert(label, merged);
        }
        // Merge segment subdivisions.
        let mut starts: Vec<(CirclePoint, Option<GapLabel>)> = Vec::new();
        for s in self.segments.iter().chain(other.segments.iter()) {
            match starts.iter_mut().find(|(c, _)| *c == s.start) {
                None => starts.push((s.start.clone(), s.gap.clone())),
                Some((_, slot)) => {
                    if slot.is_none() {
                        *slot = s.gap.clone();
                    }
                }
            }
        }
        starts.sort_by(|a, b| a.0.try_cmp(&b.0).expect("exact starts"));
        let mut segments = Vec::with_capacity(starts.len());
        for (start, gap) in starts {
            let pa = self.local_poly(&start);
            let pb = other.local_poly(&start);
            segments.push(Segment {
                start,
                gap,
                poly: poly_op(&pa, &pb),
            });
        }
        Ok(CircleFn {
            segments,
            gap_parts,
        }
        .pruned())
    }

    /// The polynomial of the covering segment, rebased so that its local
    /// coordinate starts at `at`.
    fn local_poly(&self, at: &CirclePoint) -> Poly {
        let i = self.locate(at);
        if self.segments[i].start == *at {
            return self.segments[i].poly.clone();
        }
        let delta = self.segments[i].start.distance_to(at).expect("exact codes");
        self.segments[i].poly.shift(&delta)
    }

    /// Drops removable breakpoints: unlabelled starts where the neighbour
    /// polynomial continues identically.
    fn pruned(mut self) -> CircleFn {
        loop {
            let n = self.segments.len();
            if n <= 1 {
                return self;
            }
            let mut removed = false;
            for i in 0..n {
                if self.segments[i].gap.is_some() {
                    continue;
                }
                let prev = (i + n - 1) % n;
                if prev == i {
                    break;
                }
                let delta = self.segments[prev]
                    .start
                    .distance_to(&self.segments[i].start)
                    .expect("exact starts");
                if self.segments[prev].poly.shift(&delta) == self.segments[i].poly {
                    self.segments.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                return self;
            }
        }
    }

    pub fn add(&self, action: &DenjoyAction, other: &CircleFn) -> Result<CircleFn, Error> {
        self.binop(action, other, Poly::add, GapPieces::add)
    }

    pub fn mul(&self, action: &DenjoyAction, other: &CircleFn) -> Result<CircleFn, Error> {
        self.binop(action, other, Poly::mul, GapPieces::mul)
    }

    pub fn neg(&self) -> CircleFn {
        CircleFn {
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    start: s.start.clone(),
                    gap: s.gap.clone(),
                    poly: s.poly.neg(),
                })
                .collect(),
            gap_parts: self
                .gap_parts
                .iter()
                .map(|(l, p)| (l.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn conj(&self) -> CircleFn {
        CircleFn {
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    start: s.start.clone(),
                    gap: s.gap.clone(),
                    poly: s.poly.conj(),
                })
                .collect(),
            gap_parts: self
                .gap_parts
                .iter()
                .map(|(l, p)| (l.clone(), p.conj()))
                .collect(),
        }
    }

    /// The induced action `(g . f)(p) = f(g^{-1} p)`: codes rotate by
    /// `rho(g)`, labels translate by `g`, polynomials and `t`-pieces ride
    /// along unchanged.
    pub fn act_shift(&self, action: &DenjoyAction, g: &crate::lattice::LatticeVector) -> Result<CircleFn, Error> {
        let delta = action.rotation_vector().rho_real(g)?;
        let mut segments: Vec<Segment> = self
            .segments
            .iter()
            .map(|s| {
                Ok(Segment {
                    start: s.start.rotate(&delta)?,
                    gap: s.gap.as_ref().map(|l| GapLabel {
                        orbit: l.orbit,
                        offset: l.offset.add(g),
                    }),
                    poly: s.poly.clone(),
                })
            })
            .collect::<Result<_, Error>>()?;
        // Rotation preserves circular order; re-anchor at the minimum.
        let min_idx = (0..segments.len())
            .min_by(|&a, &b| {
                segments[a]
                    .start
                    .try_cmp(&segments[b].start)
                    .expect("exact starts")
            })
            .unwrap_or(0);
        segments.rotate_left(min_idx);
        let gap_parts = self
            .gap_parts
            .iter()
            .map(|(l, p)| {
                (
                    GapLabel {
                        orbit: l.orbit,
                        offset: l.offset.add(g),
                    },
                    p.clone(),
                )
            })
            .collect();
        Ok(CircleFn {
            segments,
            gap_parts,
        })
    }

    /// Exact integral against the unique invariant measure: gaps carry no
    /// mass, and the code coordinate pushes forward to Lebesgue measure.
    pub fn integrate(&self) -> CValue {
        let n = self.segments.len();
        let mut acc = CValue::zero();
        for i in 0..n {
            let len = if n == 1 {
                Real::one()
            } else {
                self.segments[i]
                    .start
                    .distance_to(&self.segments[(i + 1) % n].start)
                    .expect("exact starts")
            };
            acc = acc.add(&self.segments[i].poly.integral(&len));
        }
        acc
    }

    /// True when the function vanishes identically on the minimal set.
    pub fn vanishes_on_minimal_set(&self) -> bool {
        self.segments.iter().all(|s| s.poly.is_zero())
    }

    /// `Some(true)`: some code-coordinate value provably nonzero;
    /// `Some(false)`: vanishes identically; `None`: undecidable enclosure.
    pub fn nonzero_on_minimal_set(&self) -> Option<bool> {
        let mut undecided = false;
        for s in &self.segments {
            for c in s.poly.coefficients() {
                match c.nonzero() {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => undecided = true,
                }
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn gap_parts(&self) -> &BTreeMap<GapLabel, GapPieces> {
        &self.gap_parts
    }
}
