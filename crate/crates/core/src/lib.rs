//! Exact tests for when a subgroup of a ring is an ideal.
//!
//! Two ambient families are covered:
//!
//! - `Z^d`, with subgroups given by integer generator matrices
//!   ([`zd`], on top of [`lattice`] and [`matrix`]);
//! - finite products `Z_{n_1} x ... x Z_{n_k}` ([`ring`], [`finite`]).
//!
//! For `Z_n x Z_m` the crate also enumerates subgroups through the Goursat
//! correspondence ([`goursat`]) and by brute force ([`census`]), and turns
//! the counts into exact probabilities ([`probability`]).
//!
//! All arithmetic is exact: matrices and counts use arbitrary-precision
//! integers, probabilities are reduced rationals.

pub mod arith;
pub mod census;
pub mod error;
pub mod finite;
pub mod goursat;
pub mod lattice;
pub mod matrix;
pub mod probability;
pub mod ring;
pub mod zd;

pub use error::{Error, Result};
pub use lattice::{canonical_basis, member, LatticeBasis};
pub use matrix::IntMatrix;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use ring::{FiniteSubgroup, ProductRing, RingElement};
