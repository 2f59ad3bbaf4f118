//! IO, file formats and command plumbing for the `ctd` binary.

pub mod commands;
pub mod fixtures;
pub mod model_file;
pub mod report;
