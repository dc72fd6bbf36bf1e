//! Construction and verification of homological product CSS codes.
//!
//! Codes are built from classical seed maps, their parameters and canonical
//! logical bases are computed exactly, qubit regions can be tested for
//! correctability, and diagonal circuits can be analysed for codespace
//! preservation, logical action and Clifford-hierarchy level.

pub mod classical;
pub mod cli;
pub mod correctability;
pub mod css;
pub mod diaggate;
pub mod error;
pub mod f2la;
pub mod io;
pub mod product;
pub mod search;
pub mod yesgo;

pub use error::{Error, Result};
