//! Command-line front end for mwkit.

pub mod commands;
pub mod eval;
pub mod expr;

pub use commands::run;
pub use expr::{parse, SymbolExpr};
