//! Diagonal circuits as phase polynomials: codespace preservation, logical
//! action, Clifford-hierarchy level, and support bounds for commutator
//! cascades.

mod codespace;
pub mod circuit;
mod nogo;
mod poly;
pub mod support;
pub mod zmod;

pub use codespace::{logical_action, preserves_codespace, CodespaceVerdict};
pub use nogo::{transversal_constraints, transversal_nogo_harness, NogoReport};
pub use poly::{
    difference, hierarchy_level, poly_from_circuit, DiagonalGate, Parity, PhasePolynomial, TermJson, MAX_MODULUS_LOG2,
};
pub use support::{
    bk_cascade, commutator_support_bound, CascadeReport, CascadeStep, CircuitKind, CircuitSupportModel, LightCones,
    NoSpread, SupportSpread,
};
