//! File formats, result cache, seeded random specs and the verification
//! runner behind the `arrcomb` command.

pub mod cache;
mod error;
pub mod format;
pub mod random;
pub mod verify;

pub use error::{CliError, Result};
