//! Library half of the `denjoy` command-line tool: action specification
//! files, report construction and rendering, and the subcommand
//! implementations. The binary in `main.rs` is a thin argument-parsing
//! shell over this crate so that everything is testable in-process.

pub mod commands;
pub mod report;
pub mod spec_file;
pub mod syntax;

use denjoy_core::Error as CoreError;

/// Process exit codes, as stable interface: 0 success, 1 usage/parse
/// error, 2 undecided at the precision ceiling, 3 enumeration budget
/// exceeded.
pub fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::PrecisionCeiling { .. } => 2,
        CoreError::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}
