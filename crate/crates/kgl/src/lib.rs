//! Exact computation with `G = GL(E) x GL(F)`-linearized line bundles on the
//! wonderful compactification `KGL_n` of the general linear group.
//!
//! A line bundle on `KGL_n` is named by an exponent vector on the boundary
//! divisors `Z_0..Z_{n-1}`, `Y_0..Y_{n-1}` plus determinant twists, and an
//! orbit closure by a pair of subsets `(I, J)` of `[0, n-1]`.  The crate
//! computes, with exact integer arithmetic throughout:
//!
//! * the finite weight set `A_IJ(L)` indexing the simple summands of the
//!   section space of `L` restricted to the orbit closure ([`weights`]),
//! * dimensions of those summands via the Weyl dimension formula, with a
//!   Gelfand-Tsetlin counting oracle ([`repdim`]),
//! * the full decomposition and the restriction/inclusion bookkeeping
//!   between section spaces ([`decomp`]),
//! * Picard-group arithmetic and the divisor of the leading-minor monomials
//!   ([`divisors`]),
//! * the fan of the toric closure with nef/ampleness tests ([`toric`]),
//! * an independent brute-force dimension oracle at rank 1 and 2 built on
//!   the explicit blow-up model ([`oracle`]).
//!
//! Index conventions: boundary-divisor data (`m`, `l`, divisor coefficient
//! vectors) is 0-based, `i` in `[0, n-1]`; weight coordinates (`a`, `b`) are
//! 1-based, `i` in `[1, n]`.

pub mod decomp;
pub mod divisors;
pub mod domain;
mod linalg;
pub mod oracle;
pub mod repdim;
pub mod selftest;
pub mod toric;
pub mod weights;

mod error;

pub use error::{Error, Result};

pub use domain::{
    validate_orbit, Decomposition, DivisorExpr, LineBundleClass, OrbitSpec, WeightPair,
};
