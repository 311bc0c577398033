//! Numerics for transition maps and transition times of unfolded planar
//! hyperbolic saddles: closed-form leading coefficients, resonance
//! combinatorics and residues, compensator-resolved principal parts, and an
//! independent direct-integration oracle.

pub mod algebra;
pub mod error;
pub mod mellin;
pub mod quad;

pub use error::{Error, Result};
