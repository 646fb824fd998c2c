//! Command-line front end for `groupk-core`.

pub mod app;
pub mod output;

pub use app::{run, Cli, Command, Format, EXIT_INPUT, EXIT_OK, EXIT_PARTIAL};
pub use output::{build_document, render_json, render_text, OutputDocument};
