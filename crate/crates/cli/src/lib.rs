//! Front end for `fcrystal-core`: input parsing and guard rails, report
//! rendering (text, JSON, CSV), parallel scans and atomic file output.
//!
//! The binary in `main.rs` is a thin clap layer over [`commands`].

pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod report;
pub mod scan;

pub use error::CliError;
pub use input::{CrystalInput, JobSpec, Levels, Limits};
pub use report::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
