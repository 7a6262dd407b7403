//! File formats and subcommands of the `jacobi` command line tool.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 on
//! unreadable or malformed input and 3 when a precondition is violated.

pub mod commands;
pub mod config;
mod error;
pub mod map_file;
pub mod render;
pub mod structure_file;

pub use crate::config::RunConfig;
pub use crate::error::{CliError, ParseError};
pub use crate::render::{Format, Output, Record};
pub use crate::structure_file::StructureFile;
