//! Concrete s-expression syntax.

pub mod parse;
pub mod print;
pub mod sexp;

pub use parse::{formula_from_str, parse_formula, parse_term, parse_type, term_from_str, Reader};
pub use print::{formula_sexp, term_sexp, type_sexp, Printer};
pub use sexp::{read_all, read_one, ParseError, Pos, Sexp};
