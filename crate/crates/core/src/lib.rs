//! Maximum-length self-avoiding walks on `n x n` grids.
//!
//! * [`grid`]: cells, colours, rook and king adjacency, walk validation.
//! * [`constructor`]: deterministic maximum-walk construction for rook grids.
//! * [`enumerator`]: exhaustive bitmask search, the oracle for everything else.
//! * [`existence`]: pair-claim classifiers and their audit against the oracle.
//! * [`rectifiable`]: polyline length, variation and walk chaining.
//! * [`ledger`]: published values the oracle disagrees with.
//! * [`cli`] and [`svg`]: the command-line front end.

pub mod cli;
pub mod constructor;
pub mod enumerator;
pub mod existence;
pub mod grid;
pub mod ledger;
pub mod rectifiable;
pub mod svg;

pub use grid::{Cell, Direction, GridSpec, MoveSet, Parity, Walk};
