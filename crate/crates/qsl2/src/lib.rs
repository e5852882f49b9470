//! Exact computation of universal quantum sl2 invariants of bottom tangles.
//!
//! The library is organized in layers:
//!
//! * [`scalars`] — exact Laurent-polynomial arithmetic in `u = q^(1/4)` over
//!   arbitrary-precision integers, the fraction field, q-integer
//!   combinatorics, cyclotomic polynomials and gcds.
//! * [`uqalg`] — the quantized enveloping algebra engine: words in the
//!   generators `E, F, K^(±1)` and their rescaled variants, PBW normal
//!   ordering, antipode, integral-form membership tests, and the Cartan
//!   `D`-factor ledger used by the state sum.
//! * [`reptheory`] — finite-dimensional irreducible representations `V_m`,
//!   quantum traces, the representation ring, and the special colors
//!   `P_l`, `P~'_l`, `P''_l` together with closed trace formulas.
//! * [`tangle`] — a textual DSL, data model and validator for bottom-tangle
//!   diagrams built from fundamental cells, with linking matrices and
//!   builtin diagrams (clasp, Borromean).
//! * [`statesum`] — the 4-step R-matrix state sum producing the universal
//!   invariant, colored Jones evaluation by two independent routes, and
//!   membership verification for Brunnian-form diagrams.
//! * [`ideals`] — cyclotomic ideal arithmetic and divisibility certificates
//!   for colored Jones values.
//! * [`cli`] — the command-line surface.

pub mod cli;
pub mod ideals;
pub mod reptheory;
pub mod scalars;
pub mod statesum;
pub mod tangle;
pub mod uqalg;
