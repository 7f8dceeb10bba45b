//! Check-suite runner for the `u21-core` library.

pub mod checks;
pub mod cli;
pub mod config;
pub mod report;
pub mod suites;
