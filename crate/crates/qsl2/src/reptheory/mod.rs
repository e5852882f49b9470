//! Representation theory: irreducibles, colors, and quantum traces.
//!
//! Submodules:
//!
//! * [`rep`] — the irreducibles `V_m` as exact matrices, plus the
//!   self-duality intertwiner used by the matrix evaluation route;
//! * [`color`] — the representation ring and the colors `P_l`, `P~'_l`,
//!   `P''_l`;
//! * [`traces`] — quantum traces, the closed Habiro trace formula, the
//!   Casimir element and its interpolation products.

pub mod color;
pub mod rep;
pub mod traces;

pub use color::{color_p, color_pdoubleprime, color_ptilde, Color};
pub use rep::{balanced_int, rep, Matrix, Rep};
pub use traces::{casimir, habiro_basis_element, habiro_trace, qtrace, sigma};
