//! Support code for the `specquad` binary: output formatting and the
//! self-check suite. Split out of main.rs so integration tests can call it.

pub mod checks;
pub mod output;
