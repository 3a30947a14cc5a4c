//! Exact motivic Donaldson–Thomas data of cubic superpotentials.
//!
//! The crate has three layers:
//!
//! 1. **Ring arithmetic** — [`motive`] implements integer linear
//!    combinations of half-powers of the Lefschetz class times the order-3
//!    equivariant tags, with Adams operations; [`ratio`] adds formal
//!    quotients with cross-multiplication equality; [`series`] and
//!    [`pleth`] provide truncated power series and the plethystic
//!    exponential/logarithm over that ring.
//! 2. **Geometry of a cubic potential** — [`potential`] parses and
//!    normalizes cyclic-word potentials; [`trace`] expands their traces
//!    into commutative polynomials in matrix entries and splits them into
//!    block form; [`strata`] derives the counting specifications of trace
//!    fibers, cells, and rank-one reductions; [`dt`] holds the motive
//!    tables and the inductive formulas relating fibers to framed fibers,
//!    including the wall-crossing functional equation.
//! 3. **Verification** — [`count`] is an independent finite-field
//!    point-counting oracle (linear elimination plus brute force, exact
//!    modular arithmetic, Lagrange interpolation back to the ring);
//!    [`verify`] runs the cross-checks and reports pass/warn/fail;
//!    [`catalog`] stores the closed-form classes both sides are compared
//!    against.
//!
//! The crate is `no_std` (with `alloc`): all IO lives in the companion
//! command-line crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod count;
pub mod dt;
pub mod error;
pub mod motive;
pub mod pleth;
pub mod potential;
pub mod ratio;
pub mod series;
pub mod strata;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
pub use motive::{gl_motive, mu3_count, EquivTag, MotiveClass};
pub use potential::{CubicParams, Superpotential};
pub use ratio::MotiveRatio;
pub use series::Series;
