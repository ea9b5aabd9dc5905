//! Worker pool, result cache, file formats and benchmark for `ecaemu-core`.
//!
//! The `ecaemu` binary is a thin command-line layer over these modules.

pub mod bench;
pub mod cache;
pub mod config;
mod error;
pub mod export;
pub mod parallel;
pub mod pbm;
pub mod witness;

pub use error::{Error, Result};

use ecaemu_core::{Encoding, Word};

/// Builds an encoding from two supercells written as bit strings.
pub fn encoding_from_strings(enc0: &str, enc1: &str) -> Result<Encoding> {
    let enc0: Word = enc0.parse()?;
    let enc1: Word = enc1.parse()?;
    Ok(Encoding::from_words(&enc0, &enc1)?)
}
