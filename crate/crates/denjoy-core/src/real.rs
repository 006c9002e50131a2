//! Exact-or-refinable real numbers.
//!
//! The exact representation is a finite sum `sum_i c_i * sqrt(n_i)` with
//! rational coefficients and pairwise distinct squarefree radicands
//! (radicand 1 carries the rational part). This class contains every
//! quantity the rest of the crate produces symbolically — rational angles,
//! `sqrt`-expressions, their finite sums and products, and mod-1 reductions —
//! and it is closed under field operations. Two classical facts make it a
//! good foundation:
//!
//! * square roots of distinct squarefree integers are linearly independent
//!   over the rationals, so the zero test is a syntactic check;
//! * a nonzero sum is bounded away from zero by the inverse of the product
//!   of its sign-flip conjugates, so sign determination always terminates.
//!
//! Quantities that are not algebraic over this field (geometric coordinates
//! of blown-up circles) are carried as `Real` enclosures: directed-rounding
//! intervals that cannot be refined further but still participate in
//! arithmetic and certified comparisons.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::interval::{BigInterval, Comparison, Resources};

/// Trial-division bound used when certifying radicands squarefree.
const FACTOR_BOUND: u64 = 1 << 20;

/// Splits `m > 0` as `s^2 * f` with `f` certified squarefree.
///
/// Trial division runs up to `FACTOR_BOUND`; a cofactor below the square of
/// the bound is then automatically squarefree. Larger cofactors are accepted
/// only if they are perfect squares, otherwise the radicand is rejected.
fn extract_square(m: &BigUint) -> Result<(BigUint, BigUint), Error> {
    let mut square_root = BigUint::one();
    let mut rest = m.clone();
    let mut p = 2u64;
    while p <= FACTOR_BOUND {
        let pp = BigUint::from(p) * BigUint::from(p);
        if &pp > &rest {
            break;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square_root *= BigUint::from(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let bound_sq = BigUint::from(FACTOR_BOUND) * BigUint::from(FACTOR_BOUND);
    if rest < bound_sq {
        return Ok((square_root, rest));
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return Ok((square_root * r, BigUint::one()));
    }
    Err(Error::RadicandTooLarge)
}

/// Canonical finite sum `sum c_n sqrt(n)` over squarefree radicands `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Surd {
    /// radicand -> coefficient; no zero coefficients; key 1 = rational part.
    terms: BTreeMap<BigUint, BigRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut s = Surd::zero();
        s.insert(BigUint::one(), c);
        s
    }

    /// `sqrt(r)` for a non-negative rational `r`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        if r.is_zero() {
            return Ok(Surd::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let p = r.numer().magnitude().clone();
        let q = r.denom().magnitude().clone();
        let (s, f) = extract_square(&(&p * &q))?;
        let coeff = BigRational::new(BigInt::from(s), BigInt::from(q));
        let mut out = Surd::zero();
        out.insert(f, coeff);
        Ok(out)
    }

    fn insert(&mut self, radicand: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(radicand) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(r)` when the value is the rational `r`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (n, c) = self.terms.iter().next().unwrap();
                if n.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.insert(n.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Surd {
        if c.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (n1, c1) in &self.terms {
            for (n2, c2) in &other.terms {
                // sqrt(a) * sqrt(b) = g * sqrt(a b / g^2) with g = gcd(a, b);
                // for squarefree a, b the reduced radicand is squarefree.
                let g = n1.gcd(n2);
                let radicand = (n1 / &g) * (n2 / &g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.insert(radicand, coeff);
            }
        }
        out
    }

    /// Multiplicative inverse via the product of sign-flip conjugates.
    pub fn inv(&self) -> Result<Surd, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Surd::from_rational(BigRational::one() / r));
        }
        let radicands: Vec<BigUint> = self
            .terms
            .keys()
            .filter(|n| !n.is_one())
            .cloned()
            .collect();
        // Product over all nontrivial sign patterns of the flipped sums.
        let mut cofactor = Surd::from_rational(BigRational::one());
        let patterns = 1usize << radicands.len();
        for mask in 1..patterns {
            let flipped = Surd {
                terms: self
                    .terms
                    .iter()
                    .map(|(n, c)| {
                        let idx = radicands.iter().position(|r| r == n);
                        let flip = idx.map(|i| mask >> i & 1 == 1).unwrap_or(false);
                        (n.clone(), if flip { -c.clone() } else { c.clone() })
                    })
                    .collect(),
            };
            cofactor = cofactor.mul(&flipped);
        }
        let norm = self.mul(&cofactor);
        let norm = norm
            .as_rational()
            .expect("conjugate product of a surd is rational");
        if norm.is_zero() {
            // Impossible for canonical radicands; defensive.
            return Err(Error::DivisionByZero);
        }
        Ok(cofactor.scale(&(BigRational::one() / norm)))
    }

    /// Certified enclosure of width at most `2^-bits`.
    ///
    /// Runs entirely in integer fixed point (no rational reduction): each
    /// term contributes a floor/ceil-rounded multiple of `2^-wbits`, so the
    /// enclosure error is at most one ulp per term per side, absorbed by
    /// the guard bits.
    pub fn eval(&self, bits: u32) -> BigInterval {
        use num_integer::Integer;
        if self.terms.is_empty() {
            return BigInterval::zero(bits);
        }
        // Guard bits absorb coefficient magnitudes and per-term rounding.
        let mut mag_bits = 0u64;
        for c in self.terms.values() {
            let b = (c.numer().bits()).saturating_sub(c.denom().bits()) + 2;
            mag_bits = mag_bits.max(b);
        }
        let guard = 16 + mag_bits as u32 + self.terms.len() as u32;
        let wbits = bits + guard;
        let mut acc_lo = BigInt::zero();
        let mut acc_hi = BigInt::zero();
        for (n, c) in &self.terms {
            let (t_lo, t_hi) = if n.is_one() {
                let scaled = c.numer() << wbits;
                (scaled.div_floor(c.denom()), scaled.div_ceil(c.denom()))
            } else {
                // s <= sqrt(n) 2^wbits < s + 1
                let shifted: BigUint = n << (2 * wbits as usize);
                let root = shifted.sqrt();
                let exact = &root * &root == shifted;
                let s_lo = BigInt::from(root);
                let s_hi = if exact {
                    s_lo.clone()
                } else {
                    &s_lo + BigInt::one()
                };
                let (a, b) = if c.is_negative() {
                    (&s_hi * c.numer(), &s_lo * c.numer())
                } else {
                    (&s_lo * c.numer(), &s_hi * c.numer())
                };
                (a.div_floor(c.denom()), b.div_ceil(c.denom()))
            };
            acc_lo += t_lo;
            acc_hi += t_hi;
        }
        // Final outward rounding onto the 2^-(bits+2) grid.
        let drop = wbits - (bits + 2);
        let one = BigInt::one();
        let lo = acc_lo.div_floor(&(&one << drop));
        let hi = acc_hi.div_ceil(&(&one << drop));
        let den = one << (bits + 2);
        BigInterval::new(
            BigRational::new_raw(lo, den.clone()),
            BigRational::new_raw(hi, den),
            bits + 2,
        )
    }

    /// Precision beyond which a nonzero canonical sum must separate from 0.
    fn liouville_bits(&self) -> u32 {
        let k = self.terms.len() as u32;
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut bound = BigUint::one();
        for (n, c) in &self.terms {
            let c_int = (c * BigRational::from_integer(den_lcm.clone()))
                .to_integer()
                .magnitude()
                .clone();
            bound += c_int * (n.sqrt() + BigUint::one());
        }
        let conjugates = (1u32 << k.min(24)) - 1;
        conjugates * (bound.bits() as u32 + 1) + den_lcm.bits() as u32 + 8
    }

    /// Exact sign. Total on canonical sums: refinement is capped by the
    /// conjugate-product bound, past which a nonzero value must have
    /// separated.
    pub fn sign(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (_, c) = self.terms.iter().next().unwrap();
            return c.cmp(&BigRational::zero());
        }
        let cap = self.liouville_bits();
        let mut bits = 32u32;
        loop {
            if let Some(sign) = self.eval(bits).sign() {
                if sign != Ordering::Equal {
                    return sign;
                }
            }
            if bits >= cap {
                unreachable!("canonical nonzero surd failed to separate from zero");
            }
            bits = (bits * 2).min(cap);
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut bits = 32u32;
        loop {
            let iv = self.eval(bits);
            let f_lo = iv.lo().floor().to_integer();
            let f_hi = iv.hi().floor().to_integer();
            if f_lo == f_hi {
                return f_lo;
            }
            // The interval straddles the integer f_hi; an irrational value
            // cannot equal it, so the exact side decides.
            if &f_lo + BigInt::one() == f_hi {
                let diff = self.sub(&Surd::from_rational(BigRational::from_integer(
                    f_hi.clone(),
                )));
                return match diff.sign() {
                    Ordering::Less => f_lo,
                    _ => f_hi,
                };
            }
            bits *= 2;
        }
    }

    fn to_f64(&self) -> f64 {
        self.eval(64).to_f64()
    }

    /// The canonical `(radicand, coefficient)` pairs, radicand 1 first.
    pub(crate) fn coordinate_list(&self) -> Vec<(BigUint, BigRational)> {
        self.terms
            .iter()
            .map(|(n, c)| (n.clone(), c.clone()))
            .collect()
    }
}

/// An exact-or-refinable real number.
///
/// Exact values form a field (quadratic-surd sums); enclosure values carry a
/// fixed certified interval and arise from geometric realizations. Mixed
/// arithmetic degrades to enclosures.
#[derive(Clone, Debug)]
pub struct Real {
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Exact(Surd),
    Enclosure(BigInterval),
}

impl Real {
    pub fn zero() -> Self {
        Surd::zero().into()
    }

    pub fn one() -> Self {
        Real::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Surd::from_rational(BigRational::from_integer(BigInt::from(n))).into()
    }

    pub fn from_rational(r: BigRational) -> Self {
        Surd::from_rational(r).into()
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Real::from_rational(crate::interval::ratio(num, den))
    }

    /// `sqrt(r)` of a non-negative rational, exact.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self, Error> {
        Ok(Surd::sqrt_rational(r)?.into())
    }

    pub fn sqrt_of(n: u64) -> Self {
        Real::sqrt_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("non-negative integer radicand")
    }

    /// Wraps a certified enclosure; the value cannot be refined further.
    pub fn from_enclosure(iv: BigInterval) -> Self {
        if iv.is_exact() {
            return Real::from_rational(iv.lo().clone());
        }
        Real {
            repr: Repr::Enclosure(iv),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Exact(s) => s.as_rational(),
            Repr::Enclosure(_) => None,
        }
    }

    pub fn is_zero_exact(&self) -> bool {
        matches!(&self.repr, Repr::Exact(s) if s.is_zero())
    }

    pub(crate) fn as_surd(&self) -> Option<&Surd> {
        match &self.repr {
            Repr::Exact(s) => Some(s),
            Repr::Enclosure(_) => None,
        }
    }

    /// Certified enclosure. For exact values the width is at most
    /// `2^-bits`; enclosure values are returned as stored (they cannot be
    /// refined, only coarsened).
    pub fn eval(&self, bits: u32) -> BigInterval {
        match &self.repr {
            Repr::Exact(s) => s.eval(bits),
            Repr::Enclosure(iv) => {
                if bits >= iv.precision_bits() {
                    iv.clone()
                } else {
                    iv.coarsen(bits)
                }
            }
        }
    }

    pub fn neg(&self) -> Real {
        match &self.repr {
            Repr::Exact(s) => s.neg().into(),
            Repr::Enclosure(iv) => Real::from_enclosure(iv.neg()),
        }
    }

    fn binop(
        &self,
        other: &Real,
        exact: impl Fn(&Surd, &Surd) -> Surd,
        approx: impl Fn(&BigInterval, &BigInterval) -> BigInterval,
    ) -> Real {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => exact(a, b).into(),
            _ => {
                let bits = self.enclosure_bits().min(other.enclosure_bits());
                Real::from_enclosure(approx(&self.eval(bits), &other.eval(bits)))
            }
        }
    }

    fn enclosure_bits(&self) -> u32 {
        match &self.repr {
            Repr::Exact(_) => u32::MAX,
            Repr::Enclosure(iv) => iv.precision_bits(),
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        self.binop(other, Surd::add, BigInterval::add)
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.binop(other, Surd::sub, BigInterval::sub)
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.binop(other, Surd::mul, BigInterval::mul)
    }

    pub fn scale(&self, c: &BigRational) -> Real {
        match &self.repr {
            Repr::Exact(s) => s.scale(c).into(),
            Repr::Enclosure(iv) => Real::from_enclosure(iv.scale(c)),
        }
    }

    pub fn scale_int(&self, k: i64) -> Real {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn checked_div(&self, other: &Real) -> Result<Real, Error> {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(a.mul(&b.inv()?).into()),
            _ => {
                let bits = self.enclosure_bits().min(other.enclosure_bits());
                Ok(Real::from_enclosure(
                    self.eval(bits).div(&other.eval(bits))?,
                ))
            }
        }
    }

    /// Exact sign when decidable. Total for exact values; for enclosures,
    /// `None` when the stored interval straddles zero.
    pub fn try_sign(&self) -> Option<Ordering> {
        match &self.repr {
            Repr::Exact(s) => Some(s.sign()),
            Repr::Enclosure(iv) => iv.sign(),
        }
    }

    /// Total order on exact values; `None` when enclosures overlap.
    pub fn try_cmp(&self, other: &Real) -> Option<Ordering> {
        self.sub(other).try_sign()
    }

    /// Three-valued certified comparison by refinement, as used by the
    /// public comparison operation: `Less`/`Greater` only when the
    /// enclosures separate at or below the precision ceiling. Equal inputs
    /// (or the same expression twice) never separate and report `Undecided`.
    pub fn compare(&self, other: &Real, res: &Resources) -> Comparison {
        let mut bits = res.precision_bits.max(8);
        loop {
            let a = self.eval(bits);
            let b = other.eval(bits);
            match a.cmp_disjoint(&b) {
                Some(Ordering::Less) => return Comparison::Less,
                Some(Ordering::Greater) => return Comparison::Greater,
                _ => {}
            }
            if bits >= res.max_precision_bits {
                return Comparison::Undecided;
            }
            // Exactly equal values will never separate; bail out early.
            if let (Repr::Exact(x), Repr::Exact(y)) = (&self.repr, &other.repr) {
                if x == y {
                    return Comparison::Undecided;
                }
            }
            bits = (bits * 2).min(res.max_precision_bits);
        }
    }

    /// Exact floor; `None` for enclosures straddling an integer.
    pub fn try_floor(&self) -> Option<BigInt> {
        match &self.repr {
            Repr::Exact(s) => Some(s.floor()),
            Repr::Enclosure(iv) => {
                let f_lo = iv.lo().floor().to_integer();
                let f_hi = iv.hi().floor().to_integer();
                (f_lo == f_hi).then_some(f_lo)
            }
        }
    }

    /// Fractional part in `[0, 1)`; `None` when the floor is undecidable.
    pub fn try_frac(&self) -> Option<Real> {
        let f = self.try_floor()?;
        Some(self.sub(&Real::from_rational(BigRational::from_integer(f))))
    }

    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Exact(s) => s.to_f64(),
            Repr::Enclosure(iv) => iv.to_f64(),
        }
    }

    /// Decimal rendering with `digits` correct truncated fractional digits.
    /// `None` when an enclosure is too wide to pin the digits down.
    pub fn decimal(&self, digits: u32) -> Option<String> {
        match &self.repr {
            Repr::Exact(s) => {
                if let Some(r) = s.as_rational() {
                    return Some(crate::interval::decimal_of_rational(&r, digits));
                }
                // An irrational value never sits on the decimal grid, so the
                // two endpoint renderings eventually agree.
                let mut bits = (digits as u32 + 2) * 4;
                loop {
                    let iv = s.eval(bits);
                    let lo = crate::interval::decimal_of_rational(iv.lo(), digits);
                    let hi = crate::interval::decimal_of_rational(iv.hi(), digits);
                    if lo == hi {
                        return Some(lo);
                    }
                    bits *= 2;
                }
            }
            Repr::Enclosure(iv) => {
                let lo = crate::interval::decimal_of_rational(iv.lo(), digits);
                let hi = crate::interval::decimal_of_rational(iv.hi(), digits);
                (lo == hi).then_some(lo)
            }
        }
    }
}

impl From<Surd> for Real {
    fn from(s: Surd) -> Self {
        Real {
            repr: Repr::Exact(s),
        }
    }
}

/// Structural equality of exact values (canonical forms make this value
/// equality); enclosures never compare equal.
impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => a == b,
            _ => false,
        }
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real::add(self, rhs)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real::sub(self, rhs)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real::mul(self, rhs)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact(s) => {
                if s.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (n, c) in &s.terms {
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if neg {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    if n.is_one() {
                        write!(f, "{mag}")?;
                    } else if mag.is_one() {
                        write!(f, "sqrt({n})")?;
                    } else {
                        write!(f, "{mag}*sqrt({n})")?;
                    }
                }
                Ok(())
            }
            Repr::Enclosure(iv) => write!(f, "{iv}"),
        }
    }
}
