//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors reported by the symbolic and certified-numeric operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input was not a finite real number.
    NonFinite,
    /// A square root of a negative rational was requested.
    NegativeRadicand,
    /// The radicand cannot be certified squarefree within the factoring bound.
    RadicandTooLarge,
    /// Division by an exact zero.
    DivisionByZero,
    /// An interval straddling zero was used as a divisor.
    DivisorStraddlesZero,
    /// The rotation angles admit an integer dependence; the witness lists the
    /// coefficients `(n_0, n_1, ..., n_d)` of a vanishing combination
    /// `n_0 + n_1 g_1 + ... + n_d g_d`.
    DependentAngles { witness: alloc::vec::Vec<i64> },
    /// A blow-up was requested for an action whose rotation image is finite.
    RationalBlowUp,
    /// Two blow-up base points lie on the same rotation orbit.
    SharedBaseOrbit { orbit_a: usize, orbit_b: usize },
    /// The operation requires a Denjoy action (a blown-up orbit).
    DenjoyActionRequired,
    /// The operation requires a minimal or Denjoy action, not a finite orbit.
    InfiniteOrbitRequired,
    /// A point or label refers to a blow-up orbit that does not exist.
    UnknownOrbit(usize),
    /// A gap parameter `t` lies outside `[0, 1]`.
    GapParameterOutOfRange,
    /// A query could not be decided at the configured precision ceiling.
    PrecisionCeiling { bits: u32 },
    /// The lattice enumeration budget was exhausted before the requested
    /// certificate width was reached.
    BudgetExceeded { achieved_width_log2: i64 },
    /// The empty set was passed where a non-empty one is required.
    EmptyInput,
    /// A skew-symmetric matrix of odd size was passed to the Pfaffian.
    OddSize(usize),
    /// The matrix is not exactly skew-symmetric.
    NotSkew { row: usize, col: usize },
    /// A matrix index or basis label is out of range for the given dimension.
    BadLabel(String),
    /// A subset passed where an open set is required; the message names a
    /// witness point lying in the set and in the closure of its complement.
    NotOpen { witness: String },
    /// Mismatched dimensions between a lattice vector and the action.
    DimensionMismatch { expected: usize, got: usize },
    /// Generic malformed-input diagnostic with a human-readable message.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "input is not a finite real number"),
            Error::NegativeRadicand => write!(f, "square root of a negative rational"),
            Error::RadicandTooLarge => {
                write!(f, "radicand too large to certify squarefree")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::DivisorStraddlesZero => write!(f, "divisor interval straddles zero"),
            Error::DependentAngles { witness } => {
                write!(f, "rotation angles admit an integer dependence {witness:?}")
            }
            Error::RationalBlowUp => {
                write!(f, "blow-up requires an infinite rotation orbit")
            }
            Error::SharedBaseOrbit { orbit_a, orbit_b } => write!(
                f,
                "blow-up base points {orbit_a} and {orbit_b} lie on the same orbit"
            ),
            Error::DenjoyActionRequired => write!(f, "operation requires a Denjoy action"),
            Error::InfiniteOrbitRequired => {
                write!(f, "operation requires an action with infinite orbits")
            }
            Error::UnknownOrbit(o) => write!(f, "no blow-up orbit with index {o}"),
            Error::GapParameterOutOfRange => write!(f, "gap parameter outside [0, 1]"),
            Error::PrecisionCeiling { bits } => {
                write!(f, "undecided at the precision ceiling of {bits} bits")
            }
            Error::BudgetExceeded { achieved_width_log2 } => write!(
                f,
                "enumeration budget exhausted (achieved width ~2^{achieved_width_log2})"
            ),
            Error::EmptyInput => write!(f, "empty input where non-empty is required"),
            Error::OddSize(n) => write!(f, "Pfaffian of an odd-size matrix ({n})"),
            Error::NotSkew { row, col } => {
                write!(f, "matrix is not skew-symmetric at ({row}, {col})")
            }
            Error::BadLabel(s) => write!(f, "bad basis label: {s}"),
            Error::NotOpen { witness } => {
                write!(f, "subset is not open (witness: {witness})")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
