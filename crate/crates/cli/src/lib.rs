//! Session files, commands and canonical JSON certificates on top of
//! `koszulator-core`.

pub mod certificate;
pub mod commands;
pub mod json;
pub mod session;

pub use certificate::{emit_certificate, Certificate};
pub use commands::{run_command, CommandError, COMMANDS};
pub use session::{parse_session, parse_session_with, Overrides, Session, SessionError};
