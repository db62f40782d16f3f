//! Exact arithmetic for the congruence covers of the triangle groups
//! with signature (q, inf, inf), q odd.

pub mod covers;
pub mod error;
pub mod gf;
pub mod numtheory;
pub mod polyarith;
pub mod residue;
pub mod sl2;

pub use error::{Error, Precondition, Result};
