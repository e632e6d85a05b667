//! Exact decision procedures for alternating products of sign-pattern
//! classes: graph classification, certificate construction, and
//! verification utilities.

pub mod bipartite;
pub mod blockcirc;
pub mod classify;
pub mod dot;
pub mod error;
pub mod exact;
pub mod io;
pub mod limits;
pub mod par;
pub mod sampling;
pub mod scaling;
pub mod signpat;
pub mod verify;
pub mod witness;
pub mod walks;

pub use error::{Error, Result};
