//! Session files, command dispatch and reports for the `glider` binary.

mod commands;
mod session;

pub use commands::{run, Check, Command, Report};
pub use session::{BaseSpec, LevelsText, ModuleSpec, Options, Session, SessionSpec};

use crate::error::Error;

/// Process exit status for a finished report or an error.
pub fn exit_code(outcome: &Result<Report, Error>) -> i32 {
    match outcome {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(e) if e.is_input_error() => 2,
        Err(_) => 1,
    }
}
