//! Finite-window workbench for ladders, accessible sets and walkable sets.
//!
//! Sets of positive integers are named by a small expression language
//! ([`setlang`]) and truncated to windows `S ∩ [1, N]`. On top of that sit
//! colorings and certificates, the explicit constructions (adversarial
//! interval colorings, difference-set growth, sparse ladders), witness
//! searches, a threshold engine that backtracks over colorings, and the
//! directed-graph tools.

mod bitset;
pub mod certificate;
pub mod coloring;
pub mod config;
pub mod constructions;
pub mod density;
pub mod digraph;
pub mod error;
pub mod ramsey;
pub mod search;
pub mod setlang;
pub mod verify;
pub mod witness;

pub use coloring::{modular_coloring, product_coloring, Coloring};
pub use error::{Error, ParseError, Result};
pub use setlang::{materialize, member, parse, SetExpr, SortedWindow};
pub use witness::Witness;
