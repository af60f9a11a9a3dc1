//! Splitting authentication codes, splitting BIBDs and AMD codes.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`algebra`]: finite abelian groups given as products of cyclic groups.
//! * [`designs`]: splitting set systems, AMD codes, GDDs and source
//!   distributions.
//! * [`verify`]: exact checkers (splitting BIBD, GDD, automorphisms,
//!   group-generated structure, equitable orderings).
//! * [`analysis`]: exact substitution/impersonation probabilities, bounds,
//!   perfect secrecy and AMD security levels.
//! * [`ordering`]: equitable orderings by development, bipartite edge
//!   colouring, and exact backtracking.
//! * [`constructions`]: developments, transversal designs, Steiner triple
//!   systems, GDD inflation, the splitting-GDD fill recursion, base-block
//!   search and the fixture catalog.
//!
//! All probabilities are exact [`Rational`]s.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod designs;
mod error;
pub mod ordering;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational number used for every probability and bound.
pub type Rational = num_rational::Ratio<i128>;

/// Builds `num / den` as a [`Rational`].
pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}
