//! The set-expression language: parsing, rendering, membership and
//! finite-window materialization.

mod diagonal;
mod expr;
mod parse;
pub mod poly;
mod window;

pub use diagonal::{enumerate_polys, weight, Diagonal, DiagonalRecord, MAX_DIAGONAL_HEIGHT};
pub use expr::SetExpr;
pub use parse::{parse, MAX_CUBE_GENERATORS};
pub use window::{
    diagonal_set, materialize, materialize_capped, member, DiagonalWindow, SortedWindow,
    WindowRecord, DEFAULT_WINDOW_CAP,
};
