//! File formats and the command line for toupie algebras.

pub mod cli;
pub mod evidence;
pub mod grammar;
pub mod literal;

pub use grammar::{parse, serialize, SyntaxError};
pub use literal::{format_module, parse_module};
