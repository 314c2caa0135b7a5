//! Expression parser and command dispatch for the `hv-twist` binary.

pub mod app;
pub mod output;
pub mod parser;

pub use app::{run, Cli, CliError, Format, Options, Output, Verb};
pub use parser::{parse, ParseError};
