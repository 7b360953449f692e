//! File formats, report rendering and the `axis` command line for
//! [`axis_core`].

pub mod cli;
pub mod commands;
pub mod formats;
pub mod report;
pub mod text;
