//! Example registry, config files, the end-to-end pipeline and report output.

pub mod config;
pub mod pipeline;
pub mod registry;
pub mod report;

pub use config::{Config, ConfigError, Setup};
pub use pipeline::{run, Outcome, Settings};
pub use registry::{lookup, ExampleSpec, EXAMPLES};
pub use report::{write_outputs, Format, Report};
