//! Free `Z^d` actions on the circle: minimal rotation actions and their
//! blow-ups along finitely many orbits, acting on an exact symbolic circle.
//!
//! Points are held symbolically: a point either lies in a wandering interval
//! (a gap, addressed by the lattice element that labels it plus an affine
//! parameter) or on the invariant Cantor set (addressed by its image under
//! the collapsing semiconjugacy, with an explicit side tag on the countably
//! many gap-endpoint codes). In these coordinates every group law, the
//! semiconjugacy and the measure computations are exact.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::circle::{normalize, CirclePoint};
use crate::error::Error;
use crate::lattice::LatticeVector;
use crate::linalg;
use crate::real::Real;

/// The rotation-number homomorphism `Z^d -> T`, given by its values
/// `gamma_1, ..., gamma_d` on the standard basis.
#[derive(Clone, Debug)]
pub struct RotationVector {
    gammas: Vec<Real>,
    independence: Independence,
}

/// Outcome of the exact rational-independence check of `{1, gamma_1, ...,
/// gamma_d}` performed at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    /// Certified independent by exact linear algebra over the surd
    /// coordinates; equivalently, the homomorphism is injective.
    Independent,
    /// A vanishing integer combination `w_0 + w_1 g_1 + ... + w_d g_d = 0`.
    Dependent { witness: Vec<BigInt> },
}

impl RotationVector {
    /// Builds the homomorphism from exact angles in `(0, 1)` and decides
    /// injectivity exactly.
    pub fn new(gammas: Vec<Real>) -> Result<Self, Error> {
        if gammas.is_empty() {
            return Err(Error::EmptyInput);
        }
        for g in &gammas {
            if !g.is_exact() {
                return Err(Error::Invalid(
                    "rotation angles must be exact expressions".to_string(),
                ));
            }
            let in_range = g.try_sign() == Some(Ordering::Greater)
                && g.sub(&Real::one()).try_sign() == Some(Ordering::Less);
            if !in_range {
                return Err(Error::Invalid(
                    "rotation angles must lie strictly between 0 and 1".to_string(),
                ));
            }
        }
        let independence = Self::check_independence(&gammas);
        Ok(RotationVector {
            gammas,
            independence,
        })
    }

    /// Exact dependence check: collect the coordinates of `1` and of each
    /// angle over the (finitely many) radicands involved and compute the
    /// rational kernel of the coordinate matrix.
    fn check_independence(gammas: &[Real]) -> Independence {
        let mut radicands: Vec<BigUint> = alloc::vec![BigUint::one()];
        let mut coords: Vec<Vec<(BigUint, BigRational)>> = Vec::new();
        for g in gammas {
            let list = g
                .as_surd()
                .expect("validated exact")
                .coordinate_list();
            for (n, _) in &list {
                if !radicands.contains(n) {
                    radicands.push(n.clone());
                }
            }
            coords.push(list);
        }
        // Rows: radicands. Columns: 1, gamma_1, ..., gamma_d.
        let cols = gammas.len() + 1;
        let mut m: linalg::Matrix = alloc::vec![alloc::vec![BigRational::zero(); cols]; radicands.len()];
        m[0][0] = BigRational::one();
        for (j, list) in coords.iter().enumerate() {
            for (n, c) in list {
                let row = radicands.iter().position(|r| r == n).unwrap();
                m[row][j + 1] = c.clone();
            }
        }
        let kernel = linalg::nullspace(&m);
        match kernel.first() {
            None => Independence::Independent,
            Some(v) => Independence::Dependent {
                witness: linalg::to_primitive_integer(v),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.gammas.len()
    }

    pub fn gamma(&self, i: usize) -> &Real {
        &self.gammas[i]
    }

    pub fn gammas(&self) -> &[Real] {
        &self.gammas
    }

    pub fn independence(&self) -> &Independence {
        &self.independence
    }

    pub fn is_injective(&self) -> bool {
        self.independence == Independence::Independent
    }

    pub fn all_rational(&self) -> bool {
        self.gammas.iter().all(|g| g.as_rational().is_some())
    }

    /// The unreduced value `sum_i g_i gamma_i` as a real number.
    pub fn rho_real(&self, g: &LatticeVector) -> Result<Real, Error> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        let mut acc = Real::zero();
        for (k, gamma) in g.0.iter().zip(&self.gammas) {
            if *k != 0 {
                acc = acc.add(&gamma.scale_int(*k));
            }
        }
        Ok(acc)
    }

    /// The rotation number `rho(g) = sum_i g_i gamma_i mod 1`.
    pub fn rho(&self, g: &LatticeVector) -> Result<CirclePoint, Error> {
        normalize(&self.rho_real(g)?)
    }

    /// Certifies, by one sweep of fixed-point interval arithmetic at the
    /// given precision, that no vector `(n_0, ..., n_d)` with
    /// `0 < max|n_i|, |n_i| <= bound` for `i >= 1` and arbitrary `n_0`
    /// satisfies `|n_0 + sum n_i gamma_i| = 0` at this precision. Returns
    /// the smallest separation found, or the first undecided witness.
    ///
    /// A reported witness means the certificate failed at this precision,
    /// not that a dependence exists.
    pub fn certify_box(&self, bound: i64, bits: u32) -> Result<BigRational, Vec<i64>> {
        let d = self.dim();
        let scale_bits = bits + 8;
        let scale = BigInt::one() << scale_bits;
        // Integer enclosures gamma_i in [lo_i, hi_i] / 2^scale_bits.
        let enclosures: Vec<(BigInt, BigInt)> = self
            .gammas
            .iter()
            .map(|g| {
                let iv = g.eval(scale_bits);
                let lo = (iv.lo() * BigRational::from_integer(scale.clone()))
                    .floor()
                    .to_integer();
                let hi = (iv.hi() * BigRational::from_integer(scale.clone()))
                    .ceil()
                    .to_integer();
                (lo, hi)
            })
            .collect();
        let mut min_sep: Option<BigInt> = None;
        let mut coeffs = alloc::vec![0i64; d];
        let mut acc_lo = BigInt::zero();
        let mut acc_hi = BigInt::zero();
        self.sweep_box(
            0,
            bound,
            &enclosures,
            &mut coeffs,
            &mut acc_lo,
            &mut acc_hi,
            &scale,
            &mut min_sep,
        )?;
        let sep = min_sep.unwrap_or_else(|| scale.clone());
        Ok(BigRational::new(sep, scale))
    }

    #[allow(clippy::too_many_arguments)]
    fn sweep_box(
        &self,
        depth: usize,
        bound: i64,
        enclosures: &[(BigInt, BigInt)],
        coeffs: &mut Vec<i64>,
        acc_lo: &mut BigInt,
        acc_hi: &mut BigInt,
        scale: &BigInt,
        min_sep: &mut Option<BigInt>,
    ) -> Result<(), Vec<i64>> {
        if depth == enclosures.len() {
            if coeffs.iter().all(|&c| c == 0) {
                // Pure integer vectors separate by |n_0| >= 1.
                return Ok(());
            }
            // Distance from [acc_lo, acc_hi] / scale to the nearest integer
            // must be positive: the enclosure may not contain or touch a
            // multiple of `scale`.
            use num_integer::Integer;
            let q = acc_lo.div_floor(scale);
            let r_lo = acc_lo.clone() - &q * scale;
            let r_hi = acc_hi.clone() - &q * scale;
            if r_lo.is_zero() || &r_hi >= scale {
                return Err(coeffs
                    .iter()
                    .copied()
                    .fold(alloc::vec![0i64], |mut v, c| {
                        v.push(c);
                        v
                    }));
            }
            let dist = (&r_lo).min(&(scale - &r_hi)).clone();
            if min_sep.as_ref().map(|m| &dist < m).unwrap_or(true) {
                *min_sep = Some(dist);
            }
            return Ok(());
        }
        let (lo, hi) = &enclosures[depth];
        // Start at -bound and step by one enclosure per iteration.
        let start_lo = acc_lo.clone() - BigInt::from(bound) * hi;
        let start_hi = acc_hi.clone() - BigInt::from(bound) * lo;
        let mut cur_lo = start_lo;
        let mut cur_hi = start_hi;
        for n in -bound..=bound {
            coeffs[depth] = n;
            let mut next_lo = cur_lo.clone();
            let mut next_hi = cur_hi.clone();
            core::mem::swap(acc_lo, &mut next_lo);
            core::mem::swap(acc_hi, &mut next_hi);
            self.sweep_box(
                depth + 1,
                bound,
                enclosures,
                coeffs,
                acc_lo,
                acc_hi,
                scale,
                min_sep,
            )?;
            core::mem::swap(acc_lo, &mut next_lo);
            core::mem::swap(acc_hi, &mut next_hi);
            cur_lo += lo;
            cur_hi += hi;
        }
        coeffs[depth] = 0;
        Ok(())
    }
}

/// Named family of gap lengths for a blown-up orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum GapFamily {
    /// `l_g = c * lambda^{|g|_1}` with rational `c > 0`, `0 < lambda < 1`.
    /// The total mass and all shell tails have closed forms.
    Geometric { c: BigRational, lambda: BigRational },
}

impl GapFamily {
    pub fn geometric(c: BigRational, lambda: BigRational) -> Result<Self, Error> {
        if !c.is_positive() {
            return Err(Error::Invalid("gap scale c must be positive".to_string()));
        }
        if !lambda.is_positive() || lambda >= BigRational::one() {
            return Err(Error::Invalid(
                "gap ratio lambda must lie strictly between 0 and 1".to_string(),
            ));
        }
        Ok(GapFamily::Geometric { c, lambda })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GapFamily::Geometric { .. } => "geometric",
        }
    }

    /// Length of the gap labelled by `g`.
    pub fn length(&self, g: &LatticeVector) -> BigRational {
        match self {
            GapFamily::Geometric { c, lambda } => {
                // Reduced base stays reduced under powers; no gcd churn.
                let k = g.norm1() as i32;
                c * lambda.pow(k)
            }
        }
    }

    /// Total length of the shell of L1 norm `k` in dimension `d`.
    pub fn shell_mass(&self, d: usize, k: u64) -> BigRational {
        match self {
            GapFamily::Geometric { c, lambda } => {
                let count = BigRational::from_integer(BigInt::from(crate::lattice::shell_size(d, k)));
                c * count * lambda.pow(k as i32)
            }
        }
    }

    /// Closed-form total `L = sum_g l_g` over all of `Z^d`.
    pub fn total_mass(&self, d: usize) -> BigRational {
        match self {
            GapFamily::Geometric { c, lambda } => {
                let ratio = (BigRational::one() + lambda) / (BigRational::one() - lambda);
                let mut acc = c.clone();
                for _ in 0..d {
                    acc *= &ratio;
                }
                acc
            }
        }
    }
}

/// One blown-up orbit: the base point whose rotation orbit is replaced by
/// gaps, and the family assigning each gap its length.
#[derive(Clone, Debug)]
pub struct BlowUpData {
    pub base: CirclePoint,
    pub family: GapFamily,
}

impl BlowUpData {
    pub fn new(base: CirclePoint, family: GapFamily) -> Result<Self, Error> {
        if !base.is_exact() {
            return Err(Error::Invalid(
                "blow-up base point must be exact".to_string(),
            ));
        }
        Ok(BlowUpData { base, family })
    }
}

/// Address of a single gap: which blown-up orbit it belongs to, and the
/// lattice element translating the base gap onto it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GapLabel {
    pub orbit: usize,
    pub offset: LatticeVector,
}

impl GapLabel {
    pub fn new(orbit: usize, offset: LatticeVector) -> Self {
        GapLabel { orbit, offset }
    }

    pub fn base(orbit: usize, d: usize) -> Self {
        GapLabel {
            orbit,
            offset: LatticeVector::zero(d),
        }
    }
}

impl fmt::Display for GapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I[{}]{}", self.orbit, self.offset)
    }
}

/// Side tag distinguishing the two geometric endpoints sharing a collapsed
/// code on a blown-up orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CantorSide {
    /// The code is not on a blown-up orbit (or denotes the collapsed class).
    Plain,
    /// Left endpoint (parameter `t = 0`) of the labelled gap.
    LeftOf(GapLabel),
    /// Right endpoint (parameter `t = 1`) of the labelled gap.
    RightOf(GapLabel),
}

/// A point of the symbolic circle carrying a Denjoy action.
#[derive(Clone, Debug, PartialEq)]
pub enum DenjoyPoint {
    /// Interior gap point with affine parameter `t` strictly inside `(0,1)`.
    Gap { label: GapLabel, t: Real },
    /// Point of the minimal Cantor set, addressed by its collapsed code.
    Cantor { code: CirclePoint, side: CantorSide },
}

impl DenjoyPoint {
    pub fn cantor(code: CirclePoint) -> Self {
        DenjoyPoint::Cantor {
            code,
            side: CantorSide::Plain,
        }
    }
}

/// Classification of a free orientation-preserving action on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionClass {
    /// The rotation image is finite (all angles rational).
    FiniteOrbit,
    /// Infinite rotation image and no blown-up orbit: minimal rotation.
    Minimal,
    /// Infinite orbits with at least one blown-up orbit.
    Denjoy,
}

impl fmt::Display for ActionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionClass::FiniteOrbit => write!(f, "FiniteOrbit"),
            ActionClass::Minimal => write!(f, "Minimal"),
            ActionClass::Denjoy => write!(f, "Denjoy"),
        }
    }
}

/// Report on the orbits of wandering intervals.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Number of gap orbits (one per blown-up base orbit).
    pub orbit_count: usize,
    /// One representative gap per orbit.
    pub representatives: Vec<GapLabel>,
    /// Whether `g I = I` forces `g = 0`, certified via injectivity of the
    /// rotation homomorphism and distinctness of the base orbits.
    pub disjointness_certified: bool,
}

/// A free action of `Z^d` on the circle: a rotation vector plus zero or
/// more blown-up orbits. Immutable; all operations are pure.
#[derive(Clone, Debug)]
pub struct DenjoyAction {
    rho: RotationVector,
    blowups: Vec<BlowUpData>,
}

impl DenjoyAction {
    /// A minimal (or finite-orbit) rotation action.
    pub fn rotation(rho: RotationVector) -> Self {
        DenjoyAction {
            rho,
            blowups: Vec::new(),
        }
    }

    /// A blown-up action. Requires the rotation homomorphism to be
    /// injective (otherwise some orbit would be finite) and the blow-up
    /// base points to lie on pairwise distinct rotation orbits.
    pub fn new(rho: RotationVector, blowups: Vec<BlowUpData>) -> Result<Self, Error> {
        if !blowups.is_empty() {
            match rho.independence() {
                Independence::Independent => {}
                Independence::Dependent { witness } => {
                    if rho.all_rational() {
                        return Err(Error::RationalBlowUp);
                    }
                    return Err(Error::DependentAngles {
                        witness: witness
                            .iter()
                            .map(|w| w.to_i64().unwrap_or(i64::MAX))
                            .collect(),
                    });
                }
            }
            for a in 0..blowups.len() {
                for b in (a + 1)..blowups.len() {
                    if Self::same_rho_orbit(&rho, &blowups[a].base, &blowups[b].base)? {
                        return Err(Error::SharedBaseOrbit {
                            orbit_a: a,
                            orbit_b: b,
                        });
                    }
                }
            }
        }
        Ok(DenjoyAction { rho, blowups })
    }

    /// Decides exactly whether `q - p` lies in the rotation subgroup
    /// `{rho(g) mod 1}`, by solving an integer-linear system over the surd
    /// coordinates. Requires an injective rotation vector.
    fn same_rho_orbit(
        rho: &RotationVector,
        p: &CirclePoint,
        q: &CirclePoint,
    ) -> Result<bool, Error> {
        let delta = q.value().sub(p.value());
        let delta_surd = delta
            .as_surd()
            .ok_or_else(|| Error::Invalid("base points must be exact".to_string()))?;
        // Unknowns (g_1, ..., g_d, m): sum g_i gamma_i + m = delta.
        let mut radicands: Vec<BigUint> = alloc::vec![BigUint::one()];
        let mut gamma_coords = Vec::new();
        for g in rho.gammas() {
            let list = g.as_surd().expect("validated exact").coordinate_list();
            for (n, _) in &list {
                if !radicands.contains(n) {
                    radicands.push(n.clone());
                }
            }
            gamma_coords.push(list);
        }
        for (n, _) in delta_surd.coordinate_list() {
            if !radicands.contains(&n) {
                radicands.push(n.clone());
            }
        }
        let d = rho.dim();
        let mut m: linalg::Matrix =
            alloc::vec![alloc::vec![BigRational::zero(); d + 1]; radicands.len()];
        for (j, list) in gamma_coords.iter().enumerate() {
            for (n, c) in list {
                let row = radicands.iter().position(|r| r == n).unwrap();
                m[row][j] = c.clone();
            }
        }
        m[0][d] = BigRational::one();
        let mut b = alloc::vec![BigRational::zero(); radicands.len()];
        for (n, c) in delta_surd.coordinate_list() {
            let row = radicands.iter().position(|r| r == &n).unwrap();
            b[row] = c;
        }
        match linalg::solve_full_rank(&m, &b) {
            None => Ok(false),
            Some(x) => Ok(x.iter().all(|c| c.is_integer())),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn rotation_vector(&self) -> &RotationVector {
        &self.rho
    }

    pub fn blowups(&self) -> &[BlowUpData] {
        &self.blowups
    }

    pub fn orbit_count(&self) -> usize {
        self.blowups.len()
    }

    pub fn is_denjoy(&self) -> bool {
        !self.blowups.is_empty()
    }

    /// The trichotomy: finite orbit, minimal, or Denjoy.
    pub fn classify(&self) -> ActionClass {
        if self.rho.all_rational() {
            ActionClass::FiniteOrbit
        } else if self.blowups.is_empty() {
            ActionClass::Minimal
        } else {
            ActionClass::Denjoy
        }
    }

    /// The collapsed code of the labelled gap: `base_orbit + rho(offset)`.
    pub fn orbit_code(&self, label: &GapLabel) -> Result<CirclePoint, Error> {
        let blow = self
            .blowups
            .get(label.orbit)
            .ok_or(Error::UnknownOrbit(label.orbit))?;
        blow.base.rotate(&self.rho.rho_real(&label.offset)?)
    }

    /// Gap length of the labelled gap.
    pub fn gap_length(&self, label: &GapLabel) -> Result<BigRational, Error> {
        let blow = self
            .blowups
            .get(label.orbit)
            .ok_or(Error::UnknownOrbit(label.orbit))?;
        Ok(blow.family.length(&label.offset))
    }

    /// Canonical gap point; `t = 0` and `t = 1` normalize to endpoint codes.
    pub fn gap_point(&self, label: GapLabel, t: Real) -> Result<DenjoyPoint, Error> {
        if label.orbit >= self.blowups.len() {
            return Err(Error::UnknownOrbit(label.orbit));
        }
        if label.offset.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: label.offset.dim(),
            });
        }
        let below = t.try_sign() == Some(Ordering::Less);
        let above = t.sub(&Real::one()).try_sign() == Some(Ordering::Greater);
        if below || above {
            return Err(Error::GapParameterOutOfRange);
        }
        if t.is_zero_exact() {
            return Ok(DenjoyPoint::Cantor {
                code: self.orbit_code(&label)?,
                side: CantorSide::LeftOf(label),
            });
        }
        if t.sub(&Real::one()).is_zero_exact() {
            return Ok(DenjoyPoint::Cantor {
                code: self.orbit_code(&label)?,
                side: CantorSide::RightOf(label),
            });
        }
        Ok(DenjoyPoint::Gap { label, t })
    }

    /// The action: gaps are permuted rigidly (`t` is preserved), Cantor
    /// codes rotate by `rho(g)`. Exact, and satisfies the group laws on the
    /// nose.
    pub fn act(&self, g: &LatticeVector, p: &DenjoyPoint) -> Result<DenjoyPoint, Error> {
        match p {
            DenjoyPoint::Gap { label, t } => Ok(DenjoyPoint::Gap {
                label: GapLabel {
                    orbit: label.orbit,
                    offset: label.offset.add(g),
                },
                t: t.clone(),
            }),
            DenjoyPoint::Cantor { code, side } => {
                let rotated = code.rotate(&self.rho.rho_real(g)?)?;
                let side = match side {
                    CantorSide::Plain => CantorSide::Plain,
                    CantorSide::LeftOf(l) => CantorSide::LeftOf(GapLabel {
                        orbit: l.orbit,
                        offset: l.offset.add(g),
                    }),
                    CantorSide::RightOf(l) => CantorSide::RightOf(GapLabel {
                        orbit: l.orbit,
                        offset: l.offset.add(g),
                    }),
                };
                Ok(DenjoyPoint::Cantor {
                    code: rotated,
                    side,
                })
            }
        }
    }

    /// The collapsed code of any point (defined for every action).
    pub fn point_code(&self, p: &DenjoyPoint) -> Result<CirclePoint, Error> {
        match p {
            DenjoyPoint::Gap { label, .. } => self.orbit_code(label),
            DenjoyPoint::Cantor { code, .. } => Ok(code.clone()),
        }
    }

    /// The semiconjugacy onto the rotation factor: constant on each gap,
    /// the identity on Cantor codes, and exactly equivariant. Rejected for
    /// non-Denjoy actions, where it degenerates to the identity.
    pub fn semiconjugacy(&self, p: &DenjoyPoint) -> Result<CirclePoint, Error> {
        if !self.is_denjoy() {
            return Err(Error::DenjoyActionRequired);
        }
        self.point_code(p)
    }

    /// Orbits of wandering intervals: their count, representatives, and the
    /// translate-disjointness certificate.
    pub fn wandering_orbit_reps(&self) -> Result<OrbitReport, Error> {
        if !self.is_denjoy() {
            return Err(Error::DenjoyActionRequired);
        }
        let d = self.dim();
        Ok(OrbitReport {
            orbit_count: self.blowups.len(),
            representatives: (0..self.blowups.len())
                .map(|o| GapLabel::base(o, d))
                .collect(),
            disjointness_certified: self.rho.is_injective(),
        })
    }

    /// For `K` a finite union of gap closures, the finite set
    /// `G_K = { g : gK meet K nonempty }`, computed exactly from the gap
    /// combinatorics: `g I_a = I_b` holds for exactly one `g` per ordered
    /// pair on the same orbit, namely `g = b - a`.
    pub fn group_k(&self, gaps: &[GapLabel]) -> Result<Vec<LatticeVector>, Error> {
        if !self.is_denjoy() {
            return Err(Error::DenjoyActionRequired);
        }
        if gaps.is_empty() {
            return Err(Error::EmptyInput);
        }
        for l in gaps {
            if l.orbit >= self.blowups.len() {
                return Err(Error::UnknownOrbit(l.orbit));
            }
        }
        let mut out: Vec<LatticeVector> = Vec::new();
        for a in gaps {
            for b in gaps {
                if a.orbit == b.orbit {
                    let g = b.offset.sub(&a.offset);
                    if !out.contains(&g) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ratio;

    pub(crate) fn gamma_sqrt2() -> Real {
        Real::sqrt_of(2).sub(&Real::one())
    }

    pub(crate) fn gamma_sqrt3() -> Real {
        Real::sqrt_of(3).sub(&Real::one())
    }

    fn d2_action() -> DenjoyAction {
        let rho = RotationVector::new(alloc::vec![gamma_sqrt2(), gamma_sqrt3()]).unwrap();
        let family = GapFamily::geometric(ratio(1, 4), ratio(1, 2)).unwrap();
        let blow = BlowUpData::new(CirclePoint::zero(), family).unwrap();
        DenjoyAction::new(rho, alloc::vec![blow]).unwrap()
    }

    #[test]
    fn classify_trichotomy() {
        let rational = RotationVector::new(alloc::vec![Real::ratio(1, 3)]).unwrap();
        assert_eq!(
            DenjoyAction::rotation(rational).classify(),
            ActionClass::FiniteOrbit
        );
        let minimal = RotationVector::new(alloc::vec![gamma_sqrt2()]).unwrap();
        assert_eq!(
            DenjoyAction::rotation(minimal).classify(),
            ActionClass::Minimal
        );
        assert_eq!(d2_action().classify(), ActionClass::Denjoy);
    }

    #[test]
    fn rational_blowup_rejected() {
        let rho = RotationVector::new(alloc::vec![Real::ratio(1, 3)]).unwrap();
        let family = GapFamily::geometric(ratio(1, 4), ratio(1, 2)).unwrap();
        let blow = BlowUpData::new(CirclePoint::zero(), family).unwrap();
        assert_eq!(
            DenjoyAction::new(rho, alloc::vec![blow]).unwrap_err(),
            Error::RationalBlowUp
        );
    }

    #[test]
    fn dependent_angles_rejected() {
        // gamma_2 = 2 gamma_1 + 1 - sqrt(2) has an exact relation with
        // gamma_1 = sqrt(2) - 1: gamma_1 + ... pick gamma_2 = sqrt(8) - 2
        // = 2 sqrt(2) - 2 = 2 gamma_1, so (0, 2, -1) vanishes.
        let g1 = gamma_sqrt2();
        let g2 = Real::sqrt_of(8).sub(&Real::from_integer(2));
        let rho = RotationVector::new(alloc::vec![g1, g2]).unwrap();
        assert!(!rho.is_injective());
        let family = GapFamily::geometric(ratio(1, 4), ratio(1, 2)).unwrap();
        let blow = BlowUpData::new(CirclePoint::zero(), family).unwrap();
        match DenjoyAction::new(rho, alloc::vec![blow]).unwrap_err() {
            Error::DependentAngles { .. } => {}
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn shared_base_orbit_rejected() {
        let rho = RotationVector::new(alloc::vec![gamma_sqrt2(), gamma_sqrt3()]).unwrap();
        let family = GapFamily::geometric(ratio(1, 8), ratio(1, 2)).unwrap();
        // Second base = first base + rho((1, -2)) mod 1.
        let shift = rho.rho(&LatticeVector(alloc::vec![1, -2])).unwrap();
        let b0 = BlowUpData::new(CirclePoint::zero(), family.clone()).unwrap();
        let b1 = BlowUpData::new(shift, family).unwrap();
        match DenjoyAction::new(rho, alloc::vec![b0, b1]).unwrap_err() {
            Error::SharedBaseOrbit { orbit_a: 0, orbit_b: 1 } => {}
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn distinct_base_orbits_accepted() {
        let rho = RotationVector::new(alloc::vec![gamma_sqrt2(), gamma_sqrt3()]).unwrap();
        let family = GapFamily::geometric(ratio(1, 8), ratio(1, 2)).unwrap();
        let b0 = BlowUpData::new(CirclePoint::zero(), family.clone()).unwrap();
        let b1 = BlowUpData::new(CirclePoint::from_ratio(1, 2), family).unwrap();
        let action = DenjoyAction::new(rho, alloc::vec![b0, b1]).unwrap();
        let report = action.wandering_orbit_reps().unwrap();
        assert_eq!(report.orbit_count, 2);
        assert!(report.disjointness_certified);
    }

    #[test]
    fn action_laws_on_gaps_and_codes() {
        let action = d2_action();
        let g = LatticeVector(alloc::vec![3, -2]);
        let h = LatticeVector(alloc::vec![-1, 5]);
        let p = action
            .gap_point(GapLabel::base(0, 2), Real::ratio(1, 3))
            .unwrap();
        let q = DenjoyPoint::cantor(CirclePoint::from_ratio(1, 4));
        for point in [p, q] {
            let gh = action.act(&g.add(&h), &point).unwrap();
            let g_then_h = action.act(&g, &action.act(&h, &point).unwrap()).unwrap();
            assert_eq!(gh, g_then_h);
            assert_eq!(
                action.act(&LatticeVector::zero(2), &point).unwrap(),
                point
            );
        }
    }

    #[test]
    fn gap_endpoints_normalize_to_sides() {
        let action = d2_action();
        let label = GapLabel::new(0, LatticeVector(alloc::vec![1, 1]));
        let left = action.gap_point(label.clone(), Real::zero()).unwrap();
        match left {
            DenjoyPoint::Cantor {
                side: CantorSide::LeftOf(l),
                ..
            } => assert_eq!(l, label),
            p => panic!("expected left endpoint, got {p:?}"),
        }
        assert_eq!(
            action
                .gap_point(label.clone(), Real::ratio(3, 2))
                .unwrap_err(),
            Error::GapParameterOutOfRange
        );
    }

    #[test]
    fn semiconjugacy_is_equivariant() {
        let action = d2_action();
        let g = LatticeVector(alloc::vec![2, -7]);
        let p = action
            .gap_point(GapLabel::base(0, 2), Real::ratio(7, 10))
            .unwrap();
        let phi_gp = action.semiconjugacy(&action.act(&g, &p).unwrap()).unwrap();
        let gp_phi = action
            .semiconjugacy(&p)
            .unwrap()
            .rotate(&action.rotation_vector().rho_real(&g).unwrap())
            .unwrap();
        assert_eq!(phi_gp, gp_phi);
    }

    #[test]
    fn group_k_examples() {
        let action = d2_action();
        let base = GapLabel::base(0, 2);
        // Single gap closure: only the identity.
        assert_eq!(
            action.group_k(&[base.clone()]).unwrap(),
            alloc::vec![LatticeVector::zero(2)]
        );
        // Two gaps on the same orbit: {0, g, -g}.
        let g = LatticeVector(alloc::vec![2, 1]);
        let other = GapLabel::new(0, g.clone());
        let set = action.group_k(&[base, other]).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&LatticeVector::zero(2)));
        assert!(set.contains(&g));
        assert!(set.contains(&g.neg()));
    }

    #[test]
    fn box_certificate_small() {
        let rho = RotationVector::new(alloc::vec![gamma_sqrt2(), gamma_sqrt3()]).unwrap();
        let sep = rho.certify_box(12, 96).unwrap();
        assert!(sep.is_positive());
    }
}
