//! Invariants of two-bridge links L(p/q): group presentations, the rewritten
//! presentation of the Alexander subgroup and its finite-index chain data,
//! Alexander polynomials, cycle graphs with their reduction/expansion
//! calculus, machine-checked nested-subgraph witnesses, and exact
//! bi-orderability certificates.

pub mod alexpoly;
pub mod cyclegraph;
pub mod error;
pub mod intlinalg;
pub mod pairs;
pub mod orderability;
pub mod presentation;
pub mod rtfn;
pub mod words;

pub use error::{Error, Result};
pub use pairs::CoprimePair;
