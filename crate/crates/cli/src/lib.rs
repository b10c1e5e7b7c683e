//! Front end for the `rees` binary: instance files and command dispatch.

pub mod instance;
pub mod report;

pub use instance::{Instance, InstanceDecl, Options, RingDecl};
pub use report::{run, Command, Outcome, SCHEMA_VERSION};
