//! Text formats: the problem grammar, its canonical printer, and graph and
//! result exports.

mod export;
mod json;
mod parse;
mod print;

pub use export::{write_dot, write_dreadnaut, DotNames};
pub use json::{describe_mismatch, write_group_json};
pub use parse::{parse_problem, ProblemSource};
pub use print::{format_expr, write_problem};
