//! Command-line front end: group expressions, stem tables, homotopy classes,
//! couple files and the verification battery.

pub mod battery;
pub mod commands;
pub mod expr;

pub use commands::{run, Output, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
pub use expr::{format_group, parse_group, ParseError};
