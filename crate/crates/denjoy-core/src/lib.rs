//! Exact models of free `Z^d` actions on the circle obtained by blowing up
//! orbits of minimal rotation actions, together with the invariants that make
//! these systems computable: rotation numbers, the semiconjugacy onto the
//! rotation factor, the unique invariant measure and trace, gap (wandering
//! interval) combinatorics, ordered K-theory with its Pfaffian trace pairing,
//! and the primitive ideal space of the associated crossed product.
//!
//! Everything is certified: real quantities are either exact elements of a
//! quadratic-surd field (`Real`) or directed-rounding intervals
//! (`BigInterval`) whose widths are controlled by an explicit precision
//! budget. No floating point enters any decision.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `denjoy-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod action;
pub mod circle;
pub mod ergodic;
pub mod error;
pub mod expr;
pub mod interval;
pub mod ktheory;
pub mod lattice;
pub(crate) mod linalg;
pub mod prim;
pub mod real;
pub mod realize;

pub use action::{
    ActionClass, BlowUpData, CantorSide, DenjoyAction, DenjoyPoint, GapFamily, GapLabel,
    OrbitReport, RotationVector,
};
pub use circle::{arc_length, normalize, Arc, CirclePoint};
pub use error::Error;
pub use lattice::LatticeVector;
pub use interval::{BigInterval, Comparison, Resources};
pub use real::Real;
