//! Incidence properties of cosets in finite loops.
//!
//! A loop is a quasigroup with a two-sided identity, represented here by its
//! Cayley table over the symbols `0..n-1` with `0` the identity. On top of
//! the table the crate builds:
//!
//! * subloops, left/right coset families and their intersection-closed
//!   meet-semilattices ([`cosets`]),
//! * the block design carried by the cosets of a subloop, and the converse
//!   realization of a symmetric design as a coset family via latin-square
//!   completion ([`designs`]),
//! * orbits of the relative right multiplication group and a backtracking
//!   enumerator for every action table such a group can have on a single
//!   orbit when the subloop is right Bol ([`orbits`], [`bol`]),
//! * coset-intersection tests tied to Bol/Moufang/automorphic structure
//!   ([`intersections`]).
//!
//! Loop orders up to 64 are supported; element subsets are bitmask-backed.

pub mod bol;
pub mod cosets;
mod cover;
pub mod designs;
pub mod intersections;
pub mod io;
pub mod loops;
mod matching;
pub mod orbits;
pub mod perm;
pub mod symset;

pub use loops::{LoopError, LoopTable, Side, Subloop};
pub use symset::SymSet;
