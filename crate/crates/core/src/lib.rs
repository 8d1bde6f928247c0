//! Tridiagonal partition-method solver and an autotuner for its parameters.
//!
//! The solver splits an `N`-unknown tridiagonal system into blocks of `m`
//! unknowns, reduces each block to two interface equations, solves the
//! (again tridiagonal) interface system and back-substitutes the block
//! interiors. The interface solve can itself be partitioned, giving the
//! recursive variant with depth `R`.
//!
//! The [`autotune`] module learns the best `m` and `R` for a given `N` from
//! benchmark observations with a k-nearest-neighbour classifier, and
//! [`bench`] produces those observations.

pub mod autotune;
pub mod bench;
pub mod cli;
pub mod io;
pub mod solver;

mod scalar;

pub use scalar::{Precision, Scalar};
