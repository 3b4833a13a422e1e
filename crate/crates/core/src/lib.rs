//! Reconstruction of binary words from their single-deletion
//! single-substitution balls: error balls, pair classification, code
//! families, channel simulation and decoding, and exhaustive verifiers.

pub mod cli;
pub mod codes;
pub mod error;
pub mod error_balls;
pub mod reconstruct;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use sequences::Word;
