//! Bottom-tangle diagrams: grid model, textual DSL, and built-in examples.
//!
//! An `n`-component bottom tangle is a tangle in a cube consisting of `n`
//! arcs whose `2n` endpoints all lie on the bottom boundary, with the two
//! endpoints of component `i` adjacent (columns `2i-2` and `2i-1`) and the
//! component oriented from its right endpoint to its left endpoint.  The
//! closure of a bottom tangle (joining adjacent endpoint pairs by caps
//! below) is a link, and every link arises this way.
//!
//! Diagrams here are grids of fundamental cells ([`Cell`]) stacked in rows
//! ([`Row`]) from bottom to top, traversed by [`Diagram::traverse`] to
//! extract crossing data for the state-sum invariant.

mod builtins;
mod diagram;
mod parse;

pub use builtins::{
    borromean_p, borromean_plus_arc, borromean_tb, builtin, builtin_names, clasp_b, trivial,
};
pub use diagram::{Cell, Crossing, Diagram, Pass, Row, TangleError, Traversal, WalkStep};
pub use parse::{parse, ParseError};
