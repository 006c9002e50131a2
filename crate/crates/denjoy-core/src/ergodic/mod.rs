//! The unique invariant measure, the trace on finitely supported
//! crossed-product elements, the trace-ideal membership test, and rotation
//! numbers (exact and by iterated lifts).

pub mod func;

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::action::{DenjoyAction, DenjoyPoint};
use crate::circle::CirclePoint;
use crate::error::Error;
use crate::interval::{BigInterval, Resources};
use crate::lattice::LatticeVector;
use crate::real::Real;
use crate::realize::GapTable;

pub use func::{CValue, CircleFn, GapPieces, Poly};

/// The unique invariant Borel probability measure of a free action with
/// infinite orbits. Supported on the minimal set; computed through the
/// collapsing semiconjugacy, under which it is Lebesgue measure.
pub struct InvariantMeasure<'a> {
    action: &'a DenjoyAction,
}

impl<'a> InvariantMeasure<'a> {
    pub fn new(action: &'a DenjoyAction) -> Result<Self, Error> {
        if action.rotation_vector().all_rational() {
            return Err(Error::InfiniteOrbitRequired);
        }
        Ok(InvariantMeasure { action })
    }

    pub fn action(&self) -> &DenjoyAction {
        self.action
    }

    /// Measure of the arc `(from, to]` between symbolic points: the length
    /// of the collapsed image, exactly. Gaps are null, so the closure
    /// flags and side tags do not affect the value.
    pub fn measure_between(&self, from: &DenjoyPoint, to: &DenjoyPoint) -> Result<Real, Error> {
        let a = self.action.point_code(from)?;
        let b = self.action.point_code(to)?;
        a.distance_to(&b)
    }

    /// The whole circle.
    pub fn measure_circle(&self) -> Real {
        Real::one()
    }

    /// Measure of a geometric-coordinate arc, converting the endpoints
    /// through the inverse realization. Enclosure-valued in general.
    pub fn measure_geometric(
        &self,
        table: &GapTable,
        arc: &crate::circle::Arc,
    ) -> Result<Real, Error> {
        if arc.is_full() {
            return Ok(Real::one());
        }
        let p = table.realize_inverse(self.action, &arc.start)?;
        let q = table.realize_inverse(self.action, &arc.end)?;
        let a = self.action.point_code(&p)?;
        let b = self.action.point_code(&q)?;
        a.distance_to(&b)
    }
}

/// A finitely supported element `sum_g f_g lambda_g` of the crossed
/// product, with coefficient functions on the symbolic circle.
#[derive(Clone, Debug)]
pub struct CrossedElement {
    terms: BTreeMap<LatticeVector, CircleFn>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        CrossedElement {
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 * lambda_0`.
    pub fn unit(d: usize) -> Self {
        CrossedElement::monomial(LatticeVector::zero(d), CircleFn::one())
    }

    /// A single term `f * lambda_g`.
    pub fn monomial(g: LatticeVector, f: CircleFn) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, f);
        CrossedElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, CircleFn> {
        &self.terms
    }

    pub fn add(&self, action: &DenjoyAction, other: &CrossedElement) -> Result<CrossedElement, Error> {
        let mut terms = self.terms.clone();
        for (g, f) in &other.terms {
            let merged = match terms.get(g) {
                None => f.clone(),
                Some(existing) => existing.add(action, f)?,
            };
            terms.insert(g.clone(), merged);
        }
        Ok(CrossedElement { terms })
    }

    /// Twisted convolution:
    /// `(f lambda_g)(h lambda_k) = f * (g . h) * lambda_{g+k}`.
    pub fn mul(&self, action: &DenjoyAction, other: &CrossedElement) -> Result<CrossedElement, Error> {
        let mut out = CrossedElement::zero();
        for (g, f) in &self.terms {
            for (k, h) in &other.terms {
                let coeff = f.mul(action, &h.act_shift(action, g)?)?;
                let target = g.add(k);
                let merged = match out.terms.get(&target) {
                    None => coeff,
                    Some(existing) => existing.add(action, &coeff)?,
                };
                out.terms.insert(target, merged);
            }
        }
        Ok(out)
    }

    /// Adjoint: `(f lambda_g)* = (-g . conj f) lambda_{-g}`.
    pub fn adjoint(&self, action: &DenjoyAction) -> Result<CrossedElement, Error> {
        let mut out = CrossedElement::zero();
        for (g, f) in &self.terms {
            let neg = g.neg();
            let coeff = f.conj().act_shift(action, &neg)?;
            let merged = match out.terms.get(&neg) {
                None => coeff,
                Some(existing) => existing.add(action, &coeff)?,
            };
            out.terms.insert(neg, merged);
        }
        Ok(out)
    }
}

/// The unique tracial state evaluated on a finitely supported element:
/// only the coefficient at the group identity contributes, integrated
/// against the invariant measure. Exact.
pub fn trace(action: &DenjoyAction, a: &CrossedElement) -> Result<CValue, Error> {
    InvariantMeasure::new(action)?;
    let d = action.dim();
    Ok(a.terms
        .get(&LatticeVector::zero(d))
        .map(|f| f.integrate())
        .unwrap_or_else(CValue::zero))
}

/// Outcome of a trace-ideal membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Membership in the trace ideal `{a : tau(a* a) = 0}`, decided
/// symbolically: `tau(a* a) = sum_g integral |f_g|^2 dmu` vanishes exactly
/// when every coefficient function vanishes on the minimal set, i.e. when
/// every coefficient is supported in the gaps.
pub fn in_trace_ideal(action: &DenjoyAction, a: &CrossedElement) -> Result<Decision, Error> {
    if !action.is_denjoy() {
        return Err(Error::DenjoyActionRequired);
    }
    let mut undecided = false;
    for f in a.terms.values() {
        match f.nonzero_on_minimal_set() {
            Some(true) => return Ok(Decision::No),
            Some(false) => {}
            None => undecided = true,
        }
    }
    if undecided {
        Ok(Decision::Undecided)
    } else {
        Ok(Decision::Yes)
    }
}

/// Exact rotation number `rho(g)` of a group element.
pub fn rotation_number(action: &DenjoyAction, g: &LatticeVector) -> Result<CirclePoint, Error> {
    action.rotation_vector().rho(g)
}

/// Iterator of the lift of the homeomorphism attached to `g`, tracking the
/// integer winding of the collapsed coordinate so that lift values
/// `F^n(x_0)` can be reconstructed as `psi(p_n) + winding`.
pub struct LiftIterator {
    g: LatticeVector,
    start: DenjoyPoint,
    current: DenjoyPoint,
    winding: BigInt,
    steps: u64,
}

impl LiftIterator {
    pub fn new(action: &DenjoyAction, g: LatticeVector, start: DenjoyPoint) -> Result<Self, Error> {
        action.rotation_vector().rho_real(&g)?;
        action.point_code(&start)?;
        Ok(LiftIterator {
            g,
            current: start.clone(),
            start,
            winding: BigInt::zero(),
            steps: 0,
        })
    }

    /// Anchored at the collapsed origin (base of the first blown-up orbit
    /// for Denjoy actions), where the realization is exactly 0.
    pub fn anchored(action: &DenjoyAction, g: LatticeVector) -> Result<Self, Error> {
        LiftIterator::new(action, g, DenjoyPoint::cantor(CirclePoint::zero()))
    }

    pub fn step(&mut self, action: &DenjoyAction) -> Result<(), Error> {
        let rho = action.rotation_vector().rho_real(&self.g)?;
        let code = action.point_code(&self.current)?;
        let lifted = code.value().add(&rho);
        let wraps = lifted.try_floor().ok_or(Error::PrecisionCeiling { bits: 64 })?;
        self.winding += wraps;
        self.current = action.act(&self.g, &self.current)?;
        self.steps += 1;
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn winding(&self) -> &BigInt {
        &self.winding
    }

    pub fn current(&self) -> &DenjoyPoint {
        &self.current
    }

    pub fn start(&self) -> &DenjoyPoint {
        &self.start
    }
}

/// Result of an `n`-step lift estimate of a rotation number.
#[derive(Clone, Debug)]
pub struct RotationEstimate {
    /// Certified enclosure of the estimate `(F^n(x_0) - x_0) / n` itself.
    pub estimate: BigInterval,
    /// Enclosure of the true rotation number: estimate widened by the
    /// translation-number bound `1/n` on each side.
    pub enclosure: BigInterval,
    /// The exact estimate value, available when the action realizes
    /// exactly (pure rotation actions).
    pub exact: Option<Real>,
    pub iterations: u64,
}

/// Runs `n` steps of the lift and returns the estimate
/// `(F^n(x_0) - x_0)/n` with a certified enclosure, plus the widened
/// interval that provably contains the rotation number (the lift of an
/// orientation-preserving circle map satisfies `|F^n(x) - x - n rho| <= 1`).
pub fn rotation_number_estimate(
    action: &DenjoyAction,
    mut it: LiftIterator,
    n: u64,
    res: &Resources,
) -> Result<RotationEstimate, Error> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    for _ in 0..n {
        it.step(action)?;
    }
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    if !action.is_denjoy() {
        // Pure rotation: the realization is the identity on codes, so the
        // estimate is exact: (x_0 + n rho_lift - x_0)/n with rho_lift the
        // unwrapped displacement.
        let end_code = action.point_code(it.current())?.value().clone();
        let start_code = action.point_code(it.start())?.value().clone();
        let total = end_code
            .add(&Real::from_rational(BigRational::from_integer(
                it.winding().clone(),
            )))
            .sub(&start_code);
        let estimate_exact = total.scale(&inv_n);
        let estimate = estimate_exact.eval(res.precision_bits);
        let pad = BigInterval::new(-inv_n.clone(), inv_n.clone(), res.precision_bits);
        Ok(RotationEstimate {
            enclosure: estimate.add(&pad),
            estimate,
            exact: Some(estimate_exact),
            iterations: n,
        })
    } else {
        let table = GapTable::build(action, res.precision_bits, res.enum_budget)?;
        let psi_end = table.realize(action, it.current())?;
        let psi_start = table.realize(action, it.start())?;
        let winding = BigRational::from_integer(it.winding().clone());
        let total = psi_end.shift(&winding).sub(&psi_start);
        let estimate = total.scale(&inv_n).coarsen(res.precision_bits);
        let pad = BigInterval::new(-inv_n.clone(), inv_n.clone(), res.precision_bits);
        Ok(RotationEstimate {
            enclosure: estimate.add(&pad),
            estimate,
            exact: None,
            iterations: n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{BlowUpData, GapFamily, GapLabel, RotationVector};
    use crate::interval::ratio;
    use core::cmp::Ordering;

    fn gamma1() -> Real {
        Real::sqrt_of(2).sub(&Real::one())
    }

    fn gamma2() -> Real {
        Real::sqrt_of(3).sub(&Real::one())
    }

    fn d2_action() -> DenjoyAction {
        let rho = RotationVector::new(alloc::vec![gamma1(), gamma2()]).unwrap();
        let family = GapFamily::geometric(ratio(1, 4), ratio(1, 2)).unwrap();
        let blow = BlowUpData::new(CirclePoint::zero(), family).unwrap();
        DenjoyAction::new(rho, alloc::vec![blow]).unwrap()
    }

    #[test]
    fn rotation_number_examples() {
        let action = d2_action();
        let zero = rotation_number(&action, &LatticeVector::zero(2)).unwrap();
        assert_eq!(zero, CirclePoint::zero());
        let e1 = rotation_number(&action, &LatticeVector::basis(2, 0)).unwrap();
        assert_eq!(e1.value(), &gamma1());
        let sum = rotation_number(&action, &LatticeVector(alloc::vec![1, 1])).unwrap();
        let direct = crate::circle::normalize(&gamma1().add(&gamma2())).unwrap();
        assert_eq!(sum, direct);
    }

    #[test]
    fn measure_of_whole_circle_gap_and_displacement_arc() {
        let action = d2_action();
        let mu = InvariantMeasure::new(&action).unwrap();
        assert_eq!(mu.measure_circle(), Real::one());
        // A single gap is null: both endpoints share the collapsed code.
        let label = GapLabel::base(0, 2);
        let left = action.gap_point(label.clone(), Real::zero()).unwrap();
        let right = action.gap_point(label, Real::one()).unwrap();
        assert!(mu.measure_between(&left, &right).unwrap().is_zero_exact());
        // mu((x, gx]) = rho(g), independently of x.
        let x = DenjoyPoint::cantor(CirclePoint::from_ratio(2, 7));
        let g = LatticeVector(alloc::vec![3, -5]);
        let gx = action.act(&g, &x).unwrap();
        let m = mu.measure_between(&x, &gx).unwrap();
        let expected = rotation_number(&action, &g).unwrap();
        assert_eq!(m, expected.value().clone());
    }

    #[test]
    fn measure_invariance_and_additivity() {
        let action = d2_action();
        let mu = InvariantMeasure::new(&action).unwrap();
        let p = DenjoyPoint::cantor(CirclePoint::from_ratio(1, 8));
        let q = DenjoyPoint::cantor(CirclePoint::from_ratio(3, 5));
        let r = DenjoyPoint::cantor(CirclePoint::from_ratio(9, 10));
        let g = LatticeVector(alloc::vec![-4, 7]);
        let m_pq = mu.measure_between(&p, &q).unwrap();
        let m_qr = mu.measure_between(&q, &r).unwrap();
        let m_pr = mu.measure_between(&p, &r).unwrap();
        assert_eq!(m_pq.add(&m_qr), m_pr);
        let gm = mu
            .measure_between(&action.act(&g, &p).unwrap(), &action.act(&g, &q).unwrap())
            .unwrap();
        assert_eq!(gm, m_pq);
    }

    #[test]
    fn trace_examples() {
        let action = d2_action();
        // tau(1) = 1.
        let unit = CrossedElement::unit(2);
        assert_eq!(trace(&action, &unit).unwrap(), CValue::one());
        // Off-diagonal terms vanish.
        let f = CircleFn::collapsed_pl(alloc::vec![
            (CirclePoint::from_ratio(0, 1), CValue::real(Real::one())),
            (CirclePoint::from_ratio(1, 2), CValue::real(Real::ratio(3, 2))),
        ])
        .unwrap();
        let off = CrossedElement::monomial(LatticeVector(alloc::vec![1, 0]), f);
        assert_eq!(trace(&action, &off).unwrap(), CValue::zero());
        // A coefficient supported in a gap integrates to zero.
        let bump = CircleFn::gap_tent(&action, GapLabel::base(0, 2), CValue::one()).unwrap();
        let elem = CrossedElement::monomial(LatticeVector::zero(2), bump);
        assert_eq!(trace(&action, &elem).unwrap(), CValue::zero());
    }

    #[test]
    fn trace_of_pl_function_is_exact_integral() {
        let action = d2_action();
        // Tent on the collapsed circle: 0 at 0, 1 at 1/2, back to 0;
        // integral = 1/2.
        let f = CircleFn::collapsed_pl(alloc::vec![
            (CirclePoint::zero(), CValue::zero()),
            (CirclePoint::from_ratio(1, 2), CValue::one()),
        ])
        .unwrap();
        let elem = CrossedElement::monomial(LatticeVector::zero(2), f);
        assert_eq!(
            trace(&action, &elem).unwrap(),
            CValue::real(Real::ratio(1, 2))
        );
    }

    #[test]
    fn traciality_on_two_term_elements() {
        let action = d2_action();
        let f = CircleFn::collapsed_pl(alloc::vec![
            (CirclePoint::zero(), CValue::real(Real::ratio(1, 3))),
            (CirclePoint::from_ratio(1, 3), CValue::real(Real::one())),
            (CirclePoint::from_ratio(2, 3), CValue::new(Real::ratio(-1, 2), Real::ratio(1, 5))),
        ])
        .unwrap();
        let h = CircleFn::collapsed_pl(alloc::vec![
            (CirclePoint::from_ratio(1, 7), CValue::real(Real::ratio(2, 5))),
            (CirclePoint::from_ratio(1, 2), CValue::new(Real::ratio(1, 4), Real::ratio(1, 9))),
        ])
        .unwrap();
        let a = CrossedElement::monomial(LatticeVector(alloc::vec![1, -2]), f)
            .add(&action, &CrossedElement::unit(2))
            .unwrap();
        let b = CrossedElement::monomial(LatticeVector(alloc::vec![-1, 2]), h)
            .add(
                &action,
                &CrossedElement::monomial(
                    LatticeVector(alloc::vec![0, 1]),
                    CircleFn::constant(CValue::real(Real::ratio(1, 6))),
                ),
            )
            .unwrap();
        let ab = trace(&action, &a.mul(&action, &b).unwrap()).unwrap();
        let ba = trace(&action, &b.mul(&action, &a).unwrap()).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn trace_positivity_on_a_star_a() {
        let action = d2_action();
        let f = CircleFn::collapsed_pl(alloc::vec![
            (CirclePoint::zero(), CValue::real(Real::ratio(-1, 2))),
            (CirclePoint::from_ratio(2, 5), CValue::new(Real::one(), Real::ratio(1, 3))),
        ])
        .unwrap();
        let a = CrossedElement::monomial(LatticeVector(alloc::vec![2, 1]), f)
            .add(&action, &CrossedElement::unit(2))
            .unwrap();
        let astar_a = a
            .adjoint(&action)
            .unwrap()
            .mul(&action, &a)
            .unwrap();
        let t = trace(&action, &astar_a).unwrap();
        assert!(t.im.is_zero_exact());
        assert_eq!(t.re.try_sign(), Some(Ordering::Greater));
    }

    #[test]
    fn trace_ideal_membership() {
        let action = d2_action();
        // Supported in gaps: yes.
        let bump0 = CircleFn::gap_tent(&action, GapLabel::base(0, 2), CValue::one()).unwrap();
        let bump1 = CircleFn::gap_tent(
            &action,
            GapLabel::new(0, LatticeVector(alloc::vec![2, -1])),
            CValue::real(Real::ratio(-3, 4)),
        )
        .unwrap();
        let a = CrossedElement::monomial(LatticeVector::zero(2), bump0)
            .add(
                &action,
                &CrossedElement::monomial(LatticeVector(alloc::vec![1, 1]), bump1),
            )
            .unwrap();
        assert_eq!(in_trace_ideal(&action, &a).unwrap(), Decision::Yes);
        // The unit: no, tau(1) = 1.
        assert_eq!(
            in_trace_ideal(&action, &CrossedElement::unit(2)).unwrap(),
            Decision::No
        );
        assert_eq!(
            trace(&action, &CrossedElement::unit(2)).unwrap(),
            CValue::one()
        );
        // The zero element: yes.
        assert_eq!(
            in_trace_ideal(&action, &CrossedElement::zero()).unwrap(),
            Decision::Yes
        );
    }

    #[test]
    fn pure_rotation_estimate_is_exact() {
        let rho = RotationVector::new(alloc::vec![gamma1()]).unwrap();
        let action = DenjoyAction::rotation(rho);
        let it = LiftIterator::new(
            &action,
            LatticeVector::basis(1, 0),
            DenjoyPoint::cantor(CirclePoint::from_ratio(1, 5)),
        )
        .unwrap();
        let est = rotation_number_estimate(&action, it, 37, &Resources::default()).unwrap();
        assert_eq!(est.exact.as_ref().unwrap(), &gamma1());
        assert!(est.enclosure.contains(&gamma1().eval(200).midpoint()));
        // Identity element: estimate 0.
        let it0 = LiftIterator::new(
            &action,
            LatticeVector::zero(1),
            DenjoyPoint::cantor(CirclePoint::zero()),
        )
        .unwrap();
        let est0 = rotation_number_estimate(&action, it0, 11, &Resources::default()).unwrap();
        assert!(est0.exact.as_ref().unwrap().is_zero_exact());
    }

    #[test]
    fn denjoy_estimate_encloses_the_rotation_number() {
        let action = d2_action();
        let res = Resources::with_precision(64);
        let it = LiftIterator::anchored(&action, LatticeVector::basis(2, 0)).unwrap();
        let est = rotation_number_estimate(&action, it, 200, &res).unwrap();
        let gamma_iv = gamma1().eval(128);
        assert!(est.enclosure.contains(gamma_iv.lo()));
        assert!(est.enclosure.contains(gamma_iv.hi()));
        let max_width = ratio(2, 200) + ratio(1, 1 << 60);
        assert!(est.enclosure.width() <= max_width);
    }
}
