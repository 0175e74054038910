//! Configuration files and reports for the `geproci` command.

pub mod gpc;
pub mod report;
