//! Command-line front end: JSON problem specs in, JSON or table reports out.

pub mod expr;
pub mod report;
pub mod run;
pub mod spec;

pub use expr::{parse_expression, parse_field, parse_function, Context, ParseError, Parsed};
pub use report::{render_table, Report, Results};
pub use run::{apply_overrides, run, self_check, CliError, Overrides, RunOptions};
pub use spec::ProblemSpec;
