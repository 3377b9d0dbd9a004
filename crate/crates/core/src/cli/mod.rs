//! Command-line front end: expression syntax, run configuration, commands
//! and output formats.

mod commands;
mod emit;
mod parse;

pub use commands::{execute, parse_n_range, AlgebraChoice, Cli, CliError, Command, RunConfig};
pub use emit::{Format, Report};
pub use parse::{parse_poly, print_poly, ParseError};
