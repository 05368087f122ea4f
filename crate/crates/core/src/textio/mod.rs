//! The `.ppc` language: parsing, canonical printing, elaboration into
//! library objects and JSON reports.

pub mod ast;
mod lexer;
mod parser;

pub use parser::parse;
mod printer;

pub use printer::{print, print_decl};
mod elaborate;

pub use elaborate::{alg_ref_of, formula_decl, rational_of, scalar_of, Workspace, DEFAULT_JORDAN_DIM};
pub mod corpus;
pub mod fuzz;
pub mod report;
