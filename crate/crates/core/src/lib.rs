//! Exact lattice models of Du Val del Pezzo surfaces of Picard rank one and a
//! decision procedure for cylinder existence.
//!
//! The layers build on each other: [`lattice`] gives the Picard lattice and
//! pairing, [`curves`] enumerates roots and lines, [`config`] validates ADE
//! configurations, [`galois`] adds the Galois action and decorations,
//! [`divisor`] holds the explicit divisor and inequality checks, and
//! [`oracle`] decides.

pub mod catalog;
pub mod config;
pub mod curves;
pub mod divisor;
pub mod error;
pub mod galois;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
