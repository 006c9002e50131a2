//! Elements of `Z^d` and deterministic enumeration by L1 shells.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A lattice vector in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(d: usize) -> Self {
        LatticeVector(vec![0; d])
    }

    /// The standard basis vector `e_i` (zero-indexed).
    pub fn basis(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn norm1(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All vectors of `Z^d` with L1 norm exactly `k`, in lexicographic order.
pub fn shell(d: usize, k: u64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let mut current = vec![0i64; d];
    fill_shell(d, k as i64, 0, &mut current, &mut out);
    out
}

fn fill_shell(d: usize, remaining: i64, idx: usize, current: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
    if idx == d {
        if remaining == 0 {
            out.push(LatticeVector(current.clone()));
        }
        return;
    }
    if idx == d - 1 {
        // Last coordinate must absorb the remaining norm, either sign.
        for v in [-remaining, remaining] {
            current[idx] = v;
            fill_shell(d, 0, idx + 1, current, out);
            if remaining == 0 {
                break;
            }
        }
        current[idx] = 0;
        return;
    }
    for v in -remaining..=remaining {
        current[idx] = v;
        fill_shell(d, remaining - v.abs(), idx + 1, current, out);
    }
    current[idx] = 0;
}

/// Number of lattice points with L1 norm exactly `k` in `Z^d`.
pub fn shell_size(d: usize, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    // sum_i 2^i C(d, i) C(k-1, i-1) over the number i of nonzero coordinates
    let mut total = 0u64;
    for i in 1..=d.min(k as usize) {
        total += (1u64 << i) * binomial(d as u64, i as u64) * binomial(k - 1, i as u64 - 1);
    }
    total
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
