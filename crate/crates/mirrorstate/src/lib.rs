//! Files, charts and the command line around `mirrorstate-core`.

pub mod cli;
pub mod config;
pub mod manifest;
pub mod output;
