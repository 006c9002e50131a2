//! Ordered K-theory data of the crossed product of a blown-up `Z^d` action:
//! the skew structure matrix built from the rotation angles, Pfaffians of
//! its principal submatrices, the doubling recursion that produces the
//! labelled bases and index maps, the trace pairing with its range
//! subgroup, and the K-data of the maximal ideal.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::action::RotationVector;
use crate::error::Error;
use crate::interval::{BigInterval, Resources};
use crate::prim::OrbitCount;
use crate::real::Real;

/// A skew-symmetric matrix with exact-or-refinable real entries.
#[derive(Clone, Debug)]
pub struct SkewMatrix {
    entries: Vec<Vec<Real>>,
}

impl SkewMatrix {
    /// Validates skew-symmetry (including a zero diagonal) exactly.
    pub fn new(entries: Vec<Vec<Real>>) -> Result<Self, Error> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for j in 0..=i {
                let sum = entries[i][j].add(&entries[j][i]);
                if !sum.is_zero_exact() {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Real {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Real>] {
        &self.entries
    }
}

/// Exact division-free cofactor expansion along the first remaining index.
fn pfaffian_cofactor(m: &SkewMatrix, active: &[usize]) -> Real {
    if active.is_empty() {
        return Real::one();
    }
    let i0 = active[0];
    let mut acc = Real::zero();
    let mut sign_positive = true;
    for (pos, &j) in active.iter().enumerate().skip(1) {
        let coeff = m.entry(i0, j);
        if !coeff.is_zero_exact() {
            let rest: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&k| k != i0 && k != j)
                .collect();
            let sub = pfaffian_cofactor(m, &rest);
            let term = coeff.mul(&sub);
            acc = if sign_positive {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        let _ = pos;
        sign_positive = !sign_positive;
    }
    acc
}

/// Interval Parlett-Reid reduction for larger matrices: a congruence by
/// unit-triangular eliminations and transpositions brings the matrix to
/// tridiagonal form, whose Pfaffian is the product of the odd
/// superdiagonal entries (each transposition flips the sign).
fn pfaffian_parlett_reid(m: &SkewMatrix, bits: u32) -> Result<Real, Error> {
    let n = m.size();
    let mut a: Vec<Vec<BigInterval>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|x| x.eval(bits)).collect())
        .collect();
    let mut sign_flip = false;
    for c in 0..n.saturating_sub(2) {
        // Pivot: largest midpoint magnitude in column c below row c.
        let pivot_row = (c + 1..n)
            .max_by(|&r, &s| {
                let mr = a[r][c].midpoint().abs();
                let ms = a[s][c].midpoint().abs();
                mr.partial_cmp(&ms).unwrap_or(Ordering::Equal)
            })
            .ok_or(Error::OddSize(n))?;
        if pivot_row != c + 1 {
            a.swap(pivot_row, c + 1);
            for row in a.iter_mut() {
                row.swap(pivot_row, c + 1);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[c + 1][c].clone();
        if pivot.contains_zero() {
            // A zero column below c means the Pfaffian vanishes; a pivot
            // that merely straddles zero is a precision failure.
            let column_zero = (c + 1..n).all(|r| {
                a[r][c].lo().is_zero() && a[r][c].hi().is_zero()
            });
            if column_zero {
                return Ok(Real::zero());
            }
            return Err(Error::PrecisionCeiling { bits });
        }
        for r in c + 2..n {
            let factor = a[r][c].div(&pivot)?;
            for j in 0..n {
                let delta = factor.mul(&a[c + 1][j]);
                a[r][j] = a[r][j].sub(&delta);
            }
            for i in 0..n {
                let delta = factor.mul(&a[i][c + 1]);
                a[i][r] = a[i][r].sub(&delta);
            }
        }
    }
    let mut acc = BigInterval::point(num_rational::BigRational::from_integer(1.into()), bits);
    let mut i = 0;
    while i + 1 < n {
        acc = acc.mul(&a[i][i + 1]);
        i += 2;
    }
    if sign_flip {
        acc = acc.neg();
    }
    Ok(Real::from_enclosure(acc.coarsen(bits)))
}

/// Size threshold below which the exact cofactor expansion is used.
const PFAFFIAN_EXACT_LIMIT: usize = 12;

/// The Pfaffian of an even-size skew-symmetric matrix. Exact (division
/// free) up to size 12; certified interval reduction beyond.
pub fn pfaffian(m: &SkewMatrix) -> Result<Real, Error> {
    pfaffian_with(m, &Resources::default())
}

pub fn pfaffian_with(m: &SkewMatrix, res: &Resources) -> Result<Real, Error> {
    let n = m.size();
    if n % 2 != 0 {
        return Err(Error::OddSize(n));
    }
    if n == 0 {
        return Ok(Real::one());
    }
    if n <= PFAFFIAN_EXACT_LIMIT {
        let active: Vec<usize> = (0..n).collect();
        Ok(pfaffian_cofactor(m, &active))
    } else {
        pfaffian_parlett_reid(m, res.precision_bits)
    }
}

/// Exact determinant by fraction-full Gaussian elimination over the surd
/// field (entries must be exact).
pub fn determinant(rows: &[Vec<Real>]) -> Result<Real, Error> {
    let n = rows.len();
    let mut a: Vec<Vec<Real>> = rows.to_vec();
    for row in &a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    let mut det = Real::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero_exact()) else {
            return Ok(Real::zero());
        };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        let pivot = a[c][c].clone();
        det = det.mul(&pivot);
        for r in c + 1..n {
            if a[r][c].is_zero_exact() {
                continue;
            }
            let factor = a[r][c].checked_div(&pivot)?;
            for j in c..n {
                let delta = factor.mul(&a[c][j]);
                a[r][j] = a[r][j].sub(&delta);
            }
        }
    }
    Ok(det)
}

/// The skew structure matrix of the crossed product: a `(d+1) x (d+1)`
/// matrix with first row `(0, gamma_1, ..., gamma_d)`, first column its
/// negation, and zeros elsewhere.
#[derive(Clone, Debug)]
pub struct TorusTheta {
    rotation: RotationVector,
}

impl TorusTheta {
    pub fn new(rotation: RotationVector) -> Self {
        TorusTheta { rotation }
    }

    pub fn dim(&self) -> usize {
        self.rotation.dim()
    }

    pub fn rotation(&self) -> &RotationVector {
        &self.rotation
    }

    pub fn materialize(&self) -> SkewMatrix {
        let d = self.dim();
        let n = d + 1;
        let mut entries = alloc::vec![alloc::vec![Real::zero(); n]; n];
        for i in 1..n {
            entries[0][i] = self.rotation.gamma(i - 1).clone();
            entries[i][0] = self.rotation.gamma(i - 1).neg();
        }
        SkewMatrix { entries }
    }

    /// The principal submatrix on the 1-based index set `I`.
    pub fn submatrix(&self, indices: &[u32]) -> Result<SkewMatrix, Error> {
        let n = self.dim() + 1;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadLabel(
                    "indices must be strictly increasing".to_string(),
                ));
            }
        }
        for &i in indices {
            if i == 0 || i as usize > n {
                return Err(Error::BadLabel(alloc::format!(
                    "index {i} out of range 1..={n}"
                )));
            }
        }
        let full = self.materialize();
        let entries = indices
            .iter()
            .map(|&i| {
                indices
                    .iter()
                    .map(|&j| full.entry(i as usize - 1, j as usize - 1).clone())
                    .collect()
            })
            .collect();
        Ok(SkewMatrix { entries })
    }
}

/// A basis label: an increasingly ordered subset of `{1, ..., d+1}`.
/// Even cardinality labels (including the empty one) index projection
/// classes, odd ones unitary classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel(Vec<u32>);

impl BasisLabel {
    pub fn empty() -> Self {
        BasisLabel(Vec::new())
    }

    pub fn new(mut indices: Vec<u32>) -> Result<Self, Error> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::BadLabel("repeated index".to_string()));
            }
        }
        if indices.iter().any(|&i| i == 0) {
            return Err(Error::BadLabel("indices are 1-based".to_string()));
        }
        Ok(BasisLabel(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    fn adjoin(&self, index: u32) -> BasisLabel {
        let mut v = self.0.clone();
        v.push(index);
        v.sort_unstable();
        BasisLabel(v)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Which K-group a descriptor describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    K0,
    K1,
}

/// A free abelian K-group presented by an ordered labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroupDescriptor {
    pub parity: Parity,
    pub labels: Vec<BasisLabel>,
}

impl KGroupDescriptor {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A small dense integer matrix (rows x cols), acting on coordinate
/// columns indexed compatibly with the label lists it connects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Surjectivity onto the integer lattice, witnessed by signed unit
    /// columns covering every row.
    pub fn has_unit_column_for_every_row(&self) -> bool {
        (0..self.rows).all(|r| {
            (0..self.cols).any(|c| {
                self.get(r, c).abs() == 1 && (0..self.rows).all(|r2| r2 == r || self.get(r2, c) == 0)
            })
        })
    }
}

/// The boundary and inclusion data of one doubling step `A_k -> A_{k+1}`.
#[derive(Clone, Debug)]
pub struct IndexMapData {
    /// The step number `k+1` (so the new adjoined index is `k+2`).
    pub step: usize,
    pub k0_before: KGroupDescriptor,
    pub k1_before: KGroupDescriptor,
    pub k0_after: KGroupDescriptor,
    pub k1_after: KGroupDescriptor,
    /// `K_0(A_k) -> K_0(A_{k+1})`, induced by the inclusion.
    pub inclusion0: IntMatrix,
    /// `K_1(A_k) -> K_1(A_{k+1})`.
    pub inclusion1: IntMatrix,
    /// Exponential boundary `K_0(A_{k+1}) -> K_1(A_k)`.
    pub delta0: IntMatrix,
    /// Index map `K_1(A_{k+1}) -> K_0(A_k)`.
    pub delta1: IntMatrix,
}

/// Runs the doubling recursion: each step adjoins one more generator of
/// the acting group, splitting both K-groups as (old group) + (a copy of
/// the other parity's old group) glued along the boundary maps
/// `delta_0([p_{J u {k+2}}]) = [v_J]` and `delta_1(-[v_{I u {k+2}}]) = [p_I]`.
/// After `d` steps both groups are free of rank `2^d`, with bases labelled
/// by the even / odd subsets of `{1, ..., d+1}`.
pub fn k_groups(
    d: usize,
) -> Result<(KGroupDescriptor, KGroupDescriptor, Vec<IndexMapData>), Error> {
    const MAX_D: usize = 16;
    if d == 0 || d > MAX_D {
        return Err(Error::Invalid(alloc::format!(
            "dimension must lie in 1..={MAX_D}"
        )));
    }
    let mut k0 = KGroupDescriptor {
        parity: Parity::K0,
        labels: alloc::vec![BasisLabel::empty()],
    };
    let mut k1 = KGroupDescriptor {
        parity: Parity::K1,
        labels: alloc::vec![BasisLabel::new(alloc::vec![1]).unwrap()],
    };
    let mut steps = Vec::with_capacity(d);
    for k in 0..d {
        let adjoined = (k + 2) as u32;
        let old_rank = k0.labels.len();
        debug_assert_eq!(old_rank, k1.labels.len());
        let mut k0_labels = k0.labels.clone();
        k0_labels.extend(k1.labels.iter().map(|l| l.adjoin(adjoined)));
        let mut k1_labels = k1.labels.clone();
        k1_labels.extend(k0.labels.iter().map(|l| l.adjoin(adjoined)));
        let k0_after = KGroupDescriptor {
            parity: Parity::K0,
            labels: k0_labels,
        };
        let k1_after = KGroupDescriptor {
            parity: Parity::K1,
            labels: k1_labels,
        };
        let new_rank = 2 * old_rank;
        let mut inclusion0 = IntMatrix::zeros(new_rank, old_rank);
        let mut inclusion1 = IntMatrix::zeros(new_rank, old_rank);
        for i in 0..old_rank {
            inclusion0.set(i, i, 1);
            inclusion1.set(i, i, 1);
        }
        // delta0 kills the old projection classes and sends the class
        // labelled J u {k+2} to [v_J].
        let mut delta0 = IntMatrix::zeros(old_rank, new_rank);
        for (j, _) in k1.labels.iter().enumerate() {
            delta0.set(j, old_rank + j, 1);
        }
        // delta1 kills the old unitary classes and sends the class
        // labelled I u {k+2} to -[p_I].
        let mut delta1 = IntMatrix::zeros(old_rank, new_rank);
        for (i, _) in k0.labels.iter().enumerate() {
            delta1.set(i, old_rank + i, -1);
        }
        steps.push(IndexMapData {
            step: k + 1,
            k0_before: k0.clone(),
            k1_before: k1.clone(),
            k0_after: k0_after.clone(),
            k1_after: k1_after.clone(),
            inclusion0,
            inclusion1,
            delta0,
            delta1,
        });
        k0 = k0_after;
        k1 = k1_after;
    }
    Ok((k0, k1, steps))
}

/// The formal trace pairing of a `K_0` class given by integer coefficients
/// over the labelled basis: the empty label pairs to 1, the label `{1, i}`
/// to `gamma_{i-1}`, and every other even label to 0, so the value lives
/// in `Z + gamma_1 Z + ... + gamma_d Z`, recorded as the coefficient
/// vector `(n_0, ..., n_d)`.
#[derive(Clone, Debug)]
pub struct TracePairing {
    pub coefficients: BTreeMap<BasisLabel, BigInt>,
    pub formal: Vec<BigInt>,
    pub value: Real,
}

impl TracePairing {
    pub fn interval(&self, bits: u32) -> BigInterval {
        self.value.eval(bits)
    }
}

/// Pairs a coefficient vector over the `K_0` basis with the trace.
pub fn trace_pairing(
    theta: &TorusTheta,
    coefficients: &BTreeMap<BasisLabel, BigInt>,
) -> Result<TracePairing, Error> {
    let d = theta.dim();
    let (k0, _, _) = k_groups(d)?;
    for label in coefficients.keys() {
        if k0.position(label).is_none() {
            return Err(Error::BadLabel(alloc::format!(
                "{label} is not a K0 basis label for d = {d}"
            )));
        }
    }
    let mut formal = alloc::vec![BigInt::zero(); d + 1];
    for (label, c) in coefficients {
        if label.cardinality() == 0 {
            formal[0] += c;
        } else if label.cardinality() == 2 && label.indices()[0] == 1 {
            let i = label.indices()[1] as usize - 1; // slot 1..=d
            formal[i] += c;
        }
        // All other even labels pair to zero.
    }
    let value = formal_value(theta.rotation(), &formal)?;
    Ok(TracePairing {
        coefficients: coefficients.clone(),
        formal,
        value,
    })
}

/// The real number `n_0 + sum_i n_i gamma_i` of a formal vector.
pub fn formal_value(rotation: &RotationVector, formal: &[BigInt]) -> Result<Real, Error> {
    if formal.len() != rotation.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: rotation.dim() + 1,
            got: formal.len(),
        });
    }
    let mut acc = Real::from_rational(num_rational::BigRational::from_integer(formal[0].clone()));
    for (i, n) in formal.iter().enumerate().skip(1) {
        if !n.is_zero() {
            acc = acc.add(
                &rotation
                    .gamma(i - 1)
                    .scale(&num_rational::BigRational::from_integer(n.clone())),
            );
        }
    }
    Ok(acc)
}

/// Outcome of the zero test on a formal trace value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// The formal coefficient vector is identically zero.
    Zero,
    /// The evaluated value is certified away from zero.
    NonZero,
    /// A nonzero formal vector failed to separate: the angle family is not
    /// (certifiably) independent at this precision.
    Undecided,
}

pub fn is_zero_pairing(
    rotation: &RotationVector,
    formal: &[BigInt],
    res: &Resources,
) -> Result<ZeroTest, Error> {
    if formal.iter().all(|n| n.is_zero()) {
        return Ok(ZeroTest::Zero);
    }
    let value = formal_value(rotation, formal)?;
    if value.is_exact() {
        // Exact arithmetic decides; a vanishing nonzero combination means
        // the angles are dependent, which the formal test must report as
        // a failed separation rather than zero.
        return Ok(match value.try_sign() {
            Some(Ordering::Equal) => ZeroTest::Undecided,
            Some(_) => ZeroTest::NonZero,
            None => ZeroTest::Undecided,
        });
    }
    let mut bits = res.precision_bits;
    loop {
        if value.eval(bits).sign().map(|s| s != Ordering::Equal) == Some(true) {
            return Ok(ZeroTest::NonZero);
        }
        if bits >= res.max_precision_bits {
            return Ok(ZeroTest::Undecided);
        }
        bits = (bits * 2).min(res.max_precision_bits);
    }
}

/// Signed refinement of the same test, for order queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignTest {
    Positive,
    Negative,
    Zero,
    Undecided,
}

pub fn positivity(
    rotation: &RotationVector,
    formal: &[BigInt],
    res: &Resources,
) -> Result<SignTest, Error> {
    match is_zero_pairing(rotation, formal, res)? {
        ZeroTest::Zero => Ok(SignTest::Zero),
        ZeroTest::Undecided => Ok(SignTest::Undecided),
        ZeroTest::NonZero => {
            let value = formal_value(rotation, formal)?;
            match value.try_sign() {
                Some(Ordering::Greater) => Ok(SignTest::Positive),
                Some(Ordering::Less) => Ok(SignTest::Negative),
                _ => Ok(SignTest::Undecided),
            }
        }
    }
}

/// K-theory of the maximal ideal: a direct sum of `k` copies of the
/// suspension of the compacts, one per orbit of gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealKData {
    pub orbit_count: OrbitCount,
    /// `K_0(J) = 0`.
    pub k0_trivial: bool,
    /// `K_1(J) = Z^k` (rank matches the orbit count).
    pub k1_rank: OrbitCount,
    /// The boundary `K_1(B) -> K_0(J)` of the defining extension vanishes.
    pub index_map_vanishes: bool,
    /// Structural form of the ideal.
    pub structure: String,
}

pub fn ideal_k_data(k: OrbitCount) -> Result<IdealKData, Error> {
    if k == OrbitCount::Finite(0) {
        return Err(Error::EmptyInput);
    }
    let structure = match k {
        OrbitCount::Finite(n) => alloc::format!("(+)_{{i=1}}^{{{n}}} C0(R) (x) K"),
        OrbitCount::Infinite => "(+)_{i=1}^{oo} C0(R) (x) K".to_string(),
    };
    Ok(IdealKData {
        orbit_count: k,
        k0_trivial: true,
        k1_rank: k,
        index_map_vanishes: true,
        structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ratio;

    fn rot_d2() -> RotationVector {
        RotationVector::new(alloc::vec![
            Real::sqrt_of(2).sub(&Real::one()),
            Real::sqrt_of(3).sub(&Real::one()),
        ])
        .unwrap()
    }

    fn label(v: &[u32]) -> BasisLabel {
        BasisLabel::new(v.to_vec()).unwrap()
    }

    fn rational_skew(vals: &[&[i64]]) -> SkewMatrix {
        let n = vals.len();
        let mut entries = alloc::vec![alloc::vec![Real::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                entries[i][j] = Real::from_integer(vals[i][j]);
            }
        }
        SkewMatrix::new(entries).unwrap()
    }

    #[test]
    fn pfaffian_two_by_two_and_zero() {
        let gamma = Real::sqrt_of(2).sub(&Real::one());
        let m = SkewMatrix::new(alloc::vec![
            alloc::vec![Real::zero(), gamma.clone()],
            alloc::vec![gamma.neg(), Real::zero()],
        ])
        .unwrap();
        assert_eq!(pfaffian(&m).unwrap(), gamma);
        let z4 = rational_skew(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert!(pfaffian(&z4).unwrap().is_zero_exact());
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let odd = rational_skew(&[&[0]]);
        assert_eq!(pfaffian(&odd).unwrap_err(), Error::OddSize(1));
        let not_skew = SkewMatrix::new(alloc::vec![
            alloc::vec![Real::zero(), Real::one()],
            alloc::vec![Real::one(), Real::zero()],
        ]);
        assert!(matches!(not_skew, Err(Error::NotSkew { .. })));
    }

    #[test]
    fn pfaffian_size_four_closed_form() {
        // pf = a01 a23 - a02 a13 + a03 a12
        let m = rational_skew(&[
            &[0, 2, 3, 5],
            &[-2, 0, 7, 11],
            &[-3, -7, 0, 13],
            &[-5, -11, -13, 0],
        ]);
        let expect = Real::from_integer(2 * 13 - 3 * 11 + 5 * 7);
        assert_eq!(pfaffian(&m).unwrap(), expect);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let m = rational_skew(&[
            &[0, 2, -3, 5, 1, -4],
            &[-2, 0, 7, -1, 2, 6],
            &[3, -7, 0, 4, -5, 2],
            &[-5, 1, -4, 0, 3, -2],
            &[-1, -2, 5, -3, 0, 8],
            &[4, -6, -2, 2, -8, 0],
        ]);
        let pf = pfaffian(&m).unwrap();
        let det = determinant(m.rows()).unwrap();
        assert_eq!(pf.mul(&pf), det);
    }

    #[test]
    fn congruence_scaling_rule() {
        // pf(B M B^T) = det(B) pf(M) for a random integer B, size 4.
        let m = rational_skew(&[
            &[0, 3, -1, 2],
            &[-3, 0, 4, -2],
            &[1, -4, 0, 5],
            &[-2, 2, -5, 0],
        ]);
        let b: [[i64; 4]; 4] = [[1, 2, 0, -1], [0, 1, 3, 1], [2, -1, 1, 0], [1, 0, -2, 1]];
        let mut bm = alloc::vec![alloc::vec![Real::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Real::zero();
                for k in 0..4 {
                    for l in 0..4 {
                        let prod = Real::from_integer(b[i][k])
                            .mul(m.entry(k, l))
                            .mul(&Real::from_integer(b[j][l]));
                        acc = acc.add(&prod);
                    }
                }
                bm[i][j] = acc;
            }
        }
        let bmb = SkewMatrix::new(bm).unwrap();
        let det_b = determinant(
            &b.iter()
                .map(|row| row.iter().map(|&x| Real::from_integer(x)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(pfaffian(&bmb).unwrap(), det_b.mul(&pfaffian(&m).unwrap()));
    }

    #[test]
    fn parlett_reid_matches_cofactor_on_large_matrices() {
        // 14x14 skew with small integer entries, deterministic fill.
        let n = 14;
        let mut vals = alloc::vec![alloc::vec![0i64; n]; n];
        let mut seed = 37i64;
        for i in 0..n {
            for j in (i + 1)..n {
                seed = (seed * 1103515245 + 12345) % 1009;
                let v = (seed % 9) - 4;
                vals[i][j] = v;
                vals[j][i] = -v;
            }
        }
        let entries: Vec<Vec<Real>> = vals
            .iter()
            .map(|row| row.iter().map(|&x| Real::from_integer(x)).collect())
            .collect();
        let m = SkewMatrix::new(entries).unwrap();
        let interval_pf = pfaffian(&m).unwrap();
        let exact_pf = pfaffian_cofactor(&m, &(0..n).collect::<Vec<_>>());
        let exact_iv = exact_pf.eval(80);
        assert!(interval_pf.eval(40).intersect(&exact_iv).is_some());
        // And pf^2 = det within the certified interval.
        let det = determinant(m.rows()).unwrap();
        let sq = interval_pf.mul(&interval_pf);
        assert!(sq.eval(30).intersect(&det.eval(80)).is_some());
    }

    #[test]
    fn theta_submatrices() {
        let theta = TorusTheta::new(rot_d2());
        let g1 = Real::sqrt_of(2).sub(&Real::one());
        // I = {1, 2}: the 2x2 block pairing the circle generator with the
        // first group generator has Pfaffian gamma_1.
        let sub = theta.submatrix(&[1, 2]).unwrap();
        assert_eq!(pfaffian(&sub).unwrap(), g1);
        // I = {2, 3}: zero block.
        let sub23 = theta.submatrix(&[2, 3]).unwrap();
        assert!(pfaffian(&sub23).unwrap().is_zero_exact());
        // Empty set: pf = 1 by convention.
        let empty = theta.submatrix(&[]).unwrap();
        assert_eq!(pfaffian(&empty).unwrap(), Real::one());
        assert!(theta.submatrix(&[0]).is_err());
        assert!(theta.submatrix(&[1, 4]).is_err());
        assert!(theta.submatrix(&[2, 2]).is_err());
    }

    #[test]
    fn k_groups_small_dimensions() {
        let (k0, k1, steps) = k_groups(1).unwrap();
        assert_eq!(k0.labels, alloc::vec![label(&[]), label(&[1, 2])]);
        assert_eq!(k1.labels, alloc::vec![label(&[1]), label(&[2])]);
        assert_eq!(steps.len(), 1);

        let (k0, k1, _) = k_groups(2).unwrap();
        assert_eq!(
            k0.labels,
            alloc::vec![label(&[]), label(&[1, 2]), label(&[1, 3]), label(&[2, 3])]
        );
        assert_eq!(
            k1.labels,
            alloc::vec![label(&[1]), label(&[2]), label(&[3]), label(&[1, 2, 3])]
        );

        let (k0, k1, _) = k_groups(3).unwrap();
        assert_eq!(k0.rank(), 8);
        assert_eq!(k1.rank(), 8);
        // Labels are exactly the even / odd subsets of {1, 2, 3, 4}.
        for lbl in &k0.labels {
            assert_eq!(lbl.cardinality() % 2, 0);
        }
        for lbl in &k1.labels {
            assert_eq!(lbl.cardinality() % 2, 1);
        }
    }

    #[test]
    fn pv_steps_are_split_exact() {
        let (_, _, steps) = k_groups(4).unwrap();
        for s in &steps {
            assert!(s.delta0.mul(&s.inclusion0).is_zero());
            assert!(s.delta1.mul(&s.inclusion1).is_zero());
            assert!(s.delta0.has_unit_column_for_every_row());
            assert!(s.delta1.has_unit_column_for_every_row());
        }
    }

    #[test]
    fn trace_pairing_examples() {
        let theta = TorusTheta::new(rot_d2());
        let one = |lbl: BasisLabel| {
            let mut m = BTreeMap::new();
            m.insert(lbl, BigInt::from(1));
            m
        };
        let unit = trace_pairing(&theta, &one(label(&[]))).unwrap();
        assert_eq!(unit.formal, alloc::vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        assert_eq!(unit.value, Real::one());
        let p1 = trace_pairing(&theta, &one(label(&[1, 2]))).unwrap();
        assert_eq!(p1.value, Real::sqrt_of(2).sub(&Real::one()));
        let bott = trace_pairing(&theta, &one(label(&[2, 3]))).unwrap();
        assert!(bott.value.is_zero_exact());
        assert!(bott.formal.iter().all(|n| n.is_zero()));
        // Unknown label rejected.
        assert!(trace_pairing(&theta, &one(label(&[1, 2, 3, 4]))).is_err());
    }

    #[test]
    fn pairing_matches_pfaffian_route() {
        // The structural pairing values agree with Pfaffians of the theta
        // submatrices on every K0 label.
        let theta = TorusTheta::new(rot_d2());
        let (k0, _, _) = k_groups(2).unwrap();
        for lbl in &k0.labels {
            let mut m = BTreeMap::new();
            m.insert(lbl.clone(), BigInt::from(1));
            let pairing = trace_pairing(&theta, &m).unwrap();
            let pf = pfaffian(&theta.submatrix(lbl.indices()).unwrap()).unwrap();
            assert_eq!(pairing.value, pf, "label {lbl}");
        }
    }

    #[test]
    fn zero_and_sign_tests() {
        let rot = rot_d2();
        let res = Resources::with_precision(128);
        let zero = alloc::vec![BigInt::zero(); 3];
        assert_eq!(is_zero_pairing(&rot, &zero, &res).unwrap(), ZeroTest::Zero);
        let unit = alloc::vec![BigInt::from(1), BigInt::zero(), BigInt::zero()];
        assert_eq!(is_zero_pairing(&rot, &unit, &res).unwrap(), ZeroTest::NonZero);
        assert_eq!(positivity(&rot, &unit, &res).unwrap(), SignTest::Positive);
        // (-1, 1, 1): sqrt(2) + sqrt(3) - 3 = 0.14626... > 0.
        let v = alloc::vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)];
        assert_eq!(is_zero_pairing(&rot, &v, &res).unwrap(), ZeroTest::NonZero);
        assert_eq!(positivity(&rot, &v, &res).unwrap(), SignTest::Positive);
        let value = formal_value(&rot, &v).unwrap();
        let iv = value.eval(64);
        assert!(iv.contains(&ratio(146_264, 1_000_000)) || iv.lo() > &ratio(146_264, 1_000_000));
        // (0, -1, 0): -gamma_1 < 0.
        let neg = alloc::vec![BigInt::zero(), BigInt::from(-1), BigInt::zero()];
        assert_eq!(positivity(&rot, &neg, &res).unwrap(), SignTest::Negative);
    }

    #[test]
    fn dependent_angles_stay_undecided() {
        // gamma_2 = 2 gamma_1 exactly; the formal vector (0, 2, -1) has
        // value zero but is not the zero vector.
        let rot = RotationVector::new(alloc::vec![
            Real::sqrt_of(2).sub(&Real::one()),
            Real::sqrt_of(8).sub(&Real::from_integer(2)),
        ])
        .unwrap();
        let res = Resources::with_precision(64);
        let v = alloc::vec![BigInt::zero(), BigInt::from(2), BigInt::from(-1)];
        assert_eq!(is_zero_pairing(&rot, &v, &res).unwrap(), ZeroTest::Undecided);
    }

    #[test]
    fn formal_vectors_span_the_full_lattice() {
        // Basis labels {} and {1, i} realize every coordinate vector.
        let theta = TorusTheta::new(rot_d2());
        for slot in 0..3u32 {
            let lbl = if slot == 0 {
                label(&[])
            } else {
                label(&[1, slot + 1])
            };
            let mut m = BTreeMap::new();
            m.insert(lbl, BigInt::from(1));
            let pairing = trace_pairing(&theta, &m).unwrap();
            for (i, n) in pairing.formal.iter().enumerate() {
                assert_eq!(*n != BigInt::zero(), i == slot as usize);
            }
        }
    }

    #[test]
    fn ideal_k_data_examples() {
        let one = ideal_k_data(OrbitCount::Finite(1)).unwrap();
        assert!(one.k0_trivial);
        assert_eq!(one.k1_rank, OrbitCount::Finite(1));
        assert!(one.index_map_vanishes);
        let three = ideal_k_data(OrbitCount::Finite(3)).unwrap();
        assert_eq!(three.k1_rank, OrbitCount::Finite(3));
        let inf = ideal_k_data(OrbitCount::Infinite).unwrap();
        assert_eq!(inf.k1_rank, OrbitCount::Infinite);
        assert!(ideal_k_data(OrbitCount::Finite(0)).is_err());
    }
}
