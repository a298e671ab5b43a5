//! File formats, configuration merging and the `spectra` command line on
//! top of `spectra-core`.

pub mod cli;
pub mod config;
pub mod input;
pub mod output;
pub mod parallel;

pub use cli::dispatch;
pub use input::{parse_input, InputDocument, InputError, Payload};
