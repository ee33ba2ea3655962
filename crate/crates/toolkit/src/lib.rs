//! Command-line front end, factor cache, record output and parallel scan
//! drivers built on `opn-core`.

pub mod cache;
pub mod cli;
pub mod config;
pub mod parallel;
pub mod parse;
pub mod records;

pub use cli::run;
