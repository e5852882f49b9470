//! The quantized enveloping algebra engine.
//!
//! Submodules:
//!
//! * [`atoms`] — generator letters and their atom-level antipode;
//! * [`elem`] — PBW normal ordering, products, antipode, filtration;
//! * [`forms`] — integral-form membership and divided-power certificates;
//! * [`dledger`] — Cartan `D`-pair extraction for state-sum labels;
//! * [`rmatrix`] — R-matrix summands as labeled half-words.

pub mod atoms;
pub mod dledger;
pub mod elem;
pub mod forms;
pub mod rmatrix;

pub use atoms::{word_antipode, Atom};
pub use dledger::{push_d_left, DLedger, DPair, LabeledStrands, PushedStrands, StrandItem};
pub use elem::{normal_order, AlgebraElement};
pub use forms::{
    hs_expansion, membership, membership_report, uzq_auto_certificate, uzq_certificate,
    CertificateError, IntegralForm, MembershipFailure, UzqWitness, WitnessTerm,
};
pub use rmatrix::{rmatrix_term, HalfLabel, RTerm};
