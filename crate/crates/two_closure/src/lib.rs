//! Two-closures of finite permutation groups at desk scale.
//!
//! A permutation group `G ≤ Sym(Ω)` acts on ordered pairs; the *2-closure*
//! `G^(2)` is the largest subgroup of `Sym(Ω)` with the same orbits on
//! `Ω × Ω`. Equivalently, color every pair by its `G`-orbit: `G^(2)` is the
//! automorphism group of that complete colored digraph. This crate computes
//! 2-closures by two independent engines, enumerates the faithful permutation
//! representations of a small group up to a degree bound, and searches them
//! for a representation in which the group fails to be 2-closed.
//!
//! Start with the runnable examples, one per capability:
//!
//! * `closure_of_an_action` — both closure engines, Wielandt membership.
//! * `orbital_digraphs` — pair-orbit colorings, rank, DOT export.
//! * `group_constructions` — products, wreath products, coset actions,
//!   Sylow towers of symmetric groups.
//! * `universal_embedding` — the embedding of `G` into `N ≀ (G/N)` and its
//!   faithful action on `Δ × (G/N)`.
//! * `rep_enumeration` — all faithful actions of a small group up to a
//!   degree bound, as multisets of point stabilizers.
//! * `totally_2closed_search` — hunting for witnesses that a group is not
//!   2-closed in some faithful representation, cross-checked against the
//!   structural classifier.
//! * `dissection` — the three equivalent splitting conditions for an
//!   intransitive action with two invariant blocks.
//! * `build_catalogs` — regenerates the checked-in JSONL group catalogs.
//!
//! The same capabilities are scriptable through the `two-closure` binary
//! (`closure`, `orbitals`, `structure`, `reps`, `t2c`, `verify`).
//!
//! Conventions, fixed throughout: points are `0..degree`, actions are on the
//! right, and composition is left-to-right (`α^(pq) = (α^p)^q`).

pub mod cache;
pub mod catalog;
pub mod closure;
pub mod constructions;
pub mod error;
pub mod group;
pub mod harness;
pub mod orbitals;
pub mod perm;
pub mod spec_lang;
pub mod structure;
pub mod subgroups;
pub mod t2c;
pub mod verify;

pub use error::{Error, Result};
pub use group::{PermGroup, StabilizerChain};
pub use perm::Perm;
