//! Command-line front end for finite soft topological spaces: instance
//! files, validation, subbase generation, named checks and randomized
//! embedding-lemma verification.

pub mod commands;
pub mod instance;
pub mod report;

pub use commands::{
    cmd_check, cmd_fuzz, cmd_generate, cmd_validate, parse_budget, CmdOutput, EXIT_BUDGET_EXCEEDED,
    EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK,
};
pub use instance::InstanceFile;
