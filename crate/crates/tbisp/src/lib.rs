//! Numeric oracle, condition-space documents and the command-line front end
//! for `tbisp-core`.

pub mod cli;
pub mod document;
pub mod fuzz;
pub mod oracle;
