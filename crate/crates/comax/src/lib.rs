//! Exact construction and verification of comaximal graphs of
//! finite-dimensional Lie algebras over finite fields.
//!
//! Pipeline: build a Lie algebra from structure constants (a catalog family
//! or a text file), exhaustively enumerate its proper nontrivial subalgebras,
//! build the comaximal graph (vertices = subalgebras, edges = pairs that
//! generate the whole algebra), compute certified exact graph invariants, and
//! compare them against closed-form predictions where the theory supplies
//! them.

pub mod catalog;
pub mod dot;
pub mod enumerate;
pub mod field;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod planar;
pub mod predict;
pub mod report;
pub mod sl2;
pub mod solve;

pub use field::{Field, FieldElement};
