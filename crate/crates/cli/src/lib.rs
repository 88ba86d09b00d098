//! Entry points around the coda kernel: batch commands, an interactive
//! loop and a session-holding HTTP service.

pub mod commands;
pub mod repl;
pub mod service;

pub use commands::{error_messages, Output};
