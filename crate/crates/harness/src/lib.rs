//! Example catalog, verification suites and reports for `affine-dirac`.

pub mod catalog;
pub mod config;
pub mod report;
pub mod suite;

pub use catalog::{catalog, Entry, LoadedEntry, Variant};
pub use config::Config;
pub use report::{CheckRow, VerificationReport};
pub use suite::{run_loaded, run_suite, RunOptions, SUITES};
