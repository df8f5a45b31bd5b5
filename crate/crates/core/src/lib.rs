//! Verification and counting workbench for octic fields `L/K/ℚ` where `K`
//! is an `S₄`-quartic field and `L/K` is quadratic.
//!
//! * [`group`]: exact permutation groups, subgroup lattices, coset actions.
//! * [`catalog`]: the six transitive groups of degree 8 arising as Galois
//!   groups of such towers.
//! * [`verify`]: exhaustive checks of the group-theoretic classification.
//! * [`splitting`]: tame ramification models and discriminant valuations.
//! * [`nfdata`]: field-record ingest, validation and storage.
//! * [`analytic`]: Euler products, residues and the leading constant.
//! * [`counting`]: counting functions, discriminant splits, audits, fits.

pub mod arith;
pub mod catalog;
pub mod group;
pub mod perm;
pub mod splitting;
pub mod verify;
pub mod poly;
pub mod analytic;
pub mod nfdata;
pub mod counting;

pub use group::{GroupError, PermGroup};
pub use perm::Perm;
