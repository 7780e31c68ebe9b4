//! File formats, fixtures, fan ingestion and the acceptance checks built on
//! top of [`dressian_core`].

pub mod error;
pub mod fan;
pub mod fixtures;
pub mod format;
pub mod newick;
pub mod verify;

pub use error::{Error, Result};
