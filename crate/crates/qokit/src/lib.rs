//! Combinatorics engine for affine type A quiver data: charged partitions and
//! their abaci, Fock-space crystals, rank-level duality, torus weightings and
//! their walls, Kirwan–Ness loadings, and polarized hyperplane arrangements.
//!
//! Everything is exact: integer bead positions, `BigRational` weights. All
//! operations are pure functions of their inputs, so results are deterministic
//! and the types are safe to share across threads.

pub mod abacus;
pub mod crystal;
pub mod cylinder;
pub mod duality;
pub mod error;
pub mod finite;
pub mod hypertoric;
pub mod kn;
pub mod multipartition;
pub mod partition;
pub mod ribbon;
pub mod schema;
pub mod strata;
pub mod weightings;
pub mod weyl;

pub use error::Error;

/// Exact rational scalar used for weights, eigenvalues, and arrangement data.
pub type Rat = num::BigRational;

use num::BigInt;

/// Shorthand for an integer-valued `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Shorthand for the rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Euclidean residue of `x` modulo `e`, in `0..e`.
pub fn res(x: i64, e: usize) -> usize {
    x.rem_euclid(e as i64) as usize
}
