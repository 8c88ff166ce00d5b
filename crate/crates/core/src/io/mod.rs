//! Tuple documents, reports, and the command implementations behind `jnr`.

pub mod commands;
mod document;
pub mod expr;
pub mod report;

pub use commands::{
    cmd_census, cmd_certify, cmd_classify, cmd_example, cmd_mesh, cmd_sample, exit_code, ClassifyOptions,
    ExampleAction, SampleOptions,
};
pub use document::{Scalar, TupleDocument};
pub use report::Report;
