//! Interchange documents, construction plans and the `splitcode` command
//! line over [`splitcode_core`].

pub mod cli;
pub mod format;
pub mod plan;

pub use format::{parse, write, Document, FormatError};
