//! Representation shifts of knot commutator subgroups into finite groups.
//!
//! A knot group fibers over the circle algebraically: the commutator subgroup
//! `K` is an ascending/descending union of conjugates of a finitely generated
//! base `B`, glued along a pair of subgroups `U` and `V` by the meridional
//! conjugation. The space of homomorphisms from `K` into a finite group,
//! together with the conjugation action of the meridian, is a shift of finite
//! type: it is presented by a finite directed graph whose edges are the
//! homomorphisms `B -> Sigma` and whose endpoints are the restrictions to `U`
//! and `V`. Everything dynamical about the shift (entropy, periodic points,
//! countability) is therefore a finite graph computation.
//!
//! The crate is organized bottom-up:
//!
//! - [`group`]: finite groups (symmetric groups, explicit Cayley tables) and
//!   the handful of subgroup operations the rest of the crate needs.
//! - [`words`]: freely reduced words over a finite alphabet and their
//!   evaluation under generator assignments.
//! - [`poly`]: integer polynomials in one variable `t`.
//! - [`hnn`]: knot presentations as base/`U`/`V` word data, a built-in
//!   catalog, and the Alexander polynomial determinant.
//! - [`shift_graph`]: construction and pruning of the shift-presenting graph.
//! - [`dynamics`]: entropy, periodic-point counts, countability verdict.
//! - [`probe`]: nonfiberedness detection by scanning symmetric groups, plus
//!   the coset construction that turns a separated representation of the
//!   whole knot group into a periodic point over a symmetric group.
//!
//! Positive entropy of any such shift certifies that the knot is not fibered;
//! the converse direction is deliberately left open (absence of a witness is
//! never reported as a fiberedness certificate).

pub mod dynamics;
pub mod group;
pub mod hnn;
pub mod poly;
pub mod probe;
pub mod shift_graph;
pub mod words;

/// Default ceiling on the number of edges (generator assignments) a single
/// graph build may enumerate.
pub const DEFAULT_EDGE_CAP: u64 = 10_000_000;
